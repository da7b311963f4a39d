use std::fs;

use mirror_core::hklinear::{base_holomorphic_lagrangian, random_holomorphic_lagrangian};
use mirror_core::torus::{dual_type, random_polarized_lattice, smith_diagonal};
use mirror_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, Format, RunConfig};
use crate::CliError;

pub struct Report {
    pub output: String,
    pub pass: bool,
}

/// Ordered key/value rows of a report; the last row is the verdict.
struct Fields(Vec<(&'static str, Value)>);

impl Fields {
    fn new() -> Self {
        Self(Vec::new())
    }

    fn push(&mut self, key: &'static str, value: impl Into<Value>) {
        self.0.push((key, value.into()));
    }

    fn render(&self, format: Format) -> String {
        let plain = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        match format {
            Format::Text => self
                .0
                .iter()
                .map(|(k, v)| format!("{k}: {}\n", plain(v)))
                .collect(),
            Format::Json => {
                let body: Vec<String> = self
                    .0
                    .iter()
                    .map(|(k, v)| format!("{}:{}", Value::from(*k), v))
                    .collect();
                format!("{{{}}}\n", body.join(","))
            }
            Format::Csv => {
                let header: Vec<&str> = self.0.iter().map(|(k, _)| *k).collect();
                let row: Vec<String> = self.0.iter().map(|(_, v)| plain(v)).collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            }
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let (fields, pass, sidecar) = match config.command {
        Command::MirrorTest => mirror_test(config)?,
        Command::Stringy => stringy(config)?,
        Command::Twisted => twisted(config)?,
        Command::Dims => dims(config)?,
        Command::LemmaSweep => lemma_sweep(config)?,
        Command::DualitySweep => duality_sweep(config)?,
    };
    if let Some(path) = &config.output_path {
        fs::write(path, sidecar)?;
    }
    Ok(Report {
        output: fields.render(config.format),
        pass,
    })
}

type Outcome = (Fields, bool, String);

fn mirror_test(config: &RunConfig) -> Result<Outcome, CliError> {
    let g = config.require_u32("g")?;
    let m = config.require_u32("m")?;
    let p = generate_rank2_presentation(g, m).map_err(usage)?;
    let closed = closed_form_rank2(g, m).map_err(usage)?;
    let total = stringy_e(&p);
    let pass = total == closed;
    let mut f = Fields::new();
    f.push("g", g);
    f.push("m", m);
    f.push("stringy_e", total.to_string());
    f.push("closed_form", closed.to_string());
    f.push("verdict", verdict(pass));
    Ok((f, pass, p.to_json_pretty()))
}

fn load_presentation(config: &RunConfig) -> Result<OrbifoldPresentation, CliError> {
    if let Some(path) = &config.input_path {
        let text = fs::read_to_string(path)?;
        let p = OrbifoldPresentation::from_json_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        for key in ["n", "g"] {
            if let Some(v) = config.get(key) {
                let actual = if key == "n" {
                    p.group().n()
                } else {
                    p.group().g()
                };
                if v != actual as i64 {
                    return Err(CliError::Usage(format!(
                        "--{key} {v} does not match the presentation group ({key} = {actual})"
                    )));
                }
            }
        }
        return Ok(p);
    }
    let n = config.require_u32("n")?;
    let g = config.require_u32("g")?;
    let m = config.require_u32("m")?;
    match n {
        2 => generate_rank2_presentation(g, m).map_err(usage),
        3 => generate_rank3_presentation(g, m).map_err(usage),
        _ => Err(CliError::Usage(format!(
            "generated presentations exist for n = 2 or 3, got {n}; use --in"
        ))),
    }
}

fn stringy(config: &RunConfig) -> Result<Outcome, CliError> {
    let p = load_presentation(config)?;
    let mut f = Fields::new();
    f.push("n", p.group().n());
    f.push("g", p.group().g());
    f.push("sectors", p.sectors().len());
    f.push("stringy_e", stringy_e(&p).to_string());
    f.push("verdict", verdict(true));
    Ok((f, true, p.to_json_pretty()))
}

fn twisted(config: &RunConfig) -> Result<Outcome, CliError> {
    let p = load_presentation(config)?;
    let c = config.get("c").expect("validated");
    let n = p.group().n();
    let rho = standard_rho(p.group());
    let twisted = twisted_stringy_e(&p, &rho, c).map_err(usage)?;
    let untwisted = stringy_e(&p);
    let checked = c.rem_euclid(n as i64) == 0;
    let pass = !checked || twisted == untwisted;
    let mut f = Fields::new();
    f.push("n", n);
    f.push("g", p.group().g());
    f.push("c", c);
    f.push("twisted_stringy_e", twisted.to_string());
    f.push("stringy_e", untwisted.to_string());
    f.push("verdict", if checked { verdict(pass) } else { "N/A" });
    let sidecar = json!({
        "n": n,
        "g": p.group().g(),
        "c": c,
        "twisted_stringy_e": twisted,
        "stringy_e": untwisted,
    });
    Ok((f, pass, format!("{sidecar:#}\n")))
}

fn dims(config: &RunConfig) -> Result<Outcome, CliError> {
    let n = config.require_u32("n")?;
    let g = config.require_u32("g")?;
    let m = config.get_u32("m")?.unwrap_or(0);
    let setup = CurveSetup::numeric(n, g, m).map_err(usage)?;
    let spectral = setup.spectral_data();
    let total = moduli_dim(&setup);
    let base = hitchin_base_dim(&setup);
    let prym = prym_dim(&spectral);
    let pass = total.is_multiple_of(2) && base == total / 2 && prym == total / 2;
    let mut f = Fields::new();
    f.push("n", n);
    f.push("g", g);
    f.push("m", m);
    f.push("moduli_dim", total);
    f.push("hitchin_base_dim", base);
    f.push("spectral_genus", spectral_genus(&spectral));
    f.push("prym_dim", prym);
    f.push("half_dimension", verdict(pass));
    let sidecar = f.render(Format::Json);
    Ok((f, pass, sidecar))
}

fn sweep_params(config: &RunConfig, default_k: u32) -> Result<(u32, u32, u64), CliError> {
    let k = config.get_u32("k")?.unwrap_or(default_k);
    let count = config.get_u32("count")?.unwrap_or(100);
    let seed = config.seed.unwrap_or(0);
    Ok((k, count, seed))
}

fn lemma_sweep(config: &RunConfig) -> Result<Outcome, CliError> {
    let (k, count, seed) = sweep_params(config, 1)?;
    if !(1..=8).contains(&k) {
        return Err(CliError::Usage(format!("--k must be in 1..=8, got {k}")));
    }
    let model = standard_model(k as usize).map_err(usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut holomorphic = 0u32;
    let mut special = 0u32;
    let mut subspaces = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let l = random_holomorphic_lagrangian(&model, &mut rng, 3);
        let is_holomorphic = verify_holomorphic_lagrangian(&model, &l).map_err(usage)?;
        if is_holomorphic {
            holomorphic += 1;
            if verify_special_lagrangian(&model, &l).map_err(usage)? {
                special += 1;
            }
        }
        subspaces.push(l.to_json());
    }
    let span_1j = base_holomorphic_lagrangian(k as usize);
    let span_1i = LinearSubspace::new(
        (0..k as usize)
            .flat_map(|b| [4 * b, 4 * b + 1])
            .map(|i| {
                let mut v = vec![mirror_core::linalg::rat(0); 4 * k as usize];
                v[i] = mirror_core::linalg::rat(1);
                v
            })
            .collect(),
    )
    .map_err(usage)?;
    let oracle_j = verify_special_lagrangian(&model, &span_1j).map_err(usage)?;
    let oracle_i = verify_special_lagrangian(&model, &span_1i).map_err(usage)?;
    let pass = holomorphic == count && special == count && oracle_j && !oracle_i;
    let mut f = Fields::new();
    f.push("k", k);
    f.push("count", count);
    f.push("seed", seed);
    f.push("holomorphic_lagrangian", holomorphic);
    f.push("special_lagrangian", special);
    f.push("span_1j_special", oracle_j);
    f.push("span_1i_special", oracle_i);
    f.push("verdict", verdict(pass));
    let sidecar = json!({ "k": k, "seed": seed, "subspaces": subspaces });
    Ok((f, pass, format!("{sidecar:#}\n")))
}

fn duality_sweep(config: &RunConfig) -> Result<Outcome, CliError> {
    let (k, count, seed) = sweep_params(config, 4)?;
    if !(1..=16).contains(&k) {
        return Err(CliError::Usage(format!("--k must be in 1..=16, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut double_dual = 0u32;
    let mut dual_type_ok = 0u32;
    let mut type_preserved = 0u32;
    let mut torsor_ok = 0u32;
    let mut lattices = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let t = random_polarized_lattice(&mut rng, k as usize);
        let d = dualize(&t);
        if dualize(&d).pairing() == t.pairing() {
            double_dual += 1;
        }
        let divisors = t.elementary_divisors();
        let expected: Vec<_> = dual_type(&divisors)
            .into_iter()
            .flat_map(|x| [x.clone(), x])
            .collect();
        if smith_diagonal(d.pairing()) == expected {
            dual_type_ok += 1;
        }
        if d.elementary_divisors() == divisors {
            type_preserved += 1;
        }
        let label = TorsorLabel::new(Side::Sl, 1, t.clone());
        let once = pic_torsor(&label, 5);
        let shifted = pic_torsor(&TorsorLabel::new(Side::Sl, -4, t.clone()), 5);
        let twice = pic_torsor(&once, 1);
        if once == shifted
            && once.side == Side::Pgl
            && twice.side == Side::Sl
            && twice.base.is_isomorphic(&t)
        {
            torsor_ok += 1;
        }
        lattices.push(json!({ "pairing": t, "dual": d }));
    }
    let pass = double_dual == count && dual_type_ok == count && torsor_ok == count;
    let mut f = Fields::new();
    f.push("max_half_rank", k);
    f.push("count", count);
    f.push("seed", seed);
    f.push("double_dual", double_dual);
    f.push("dual_type_formula", dual_type_ok);
    f.push("type_preserved", type_preserved);
    f.push("torsor_algebra", torsor_ok);
    f.push("verdict", verdict(pass));
    let sidecar = json!({ "seed": seed, "lattices": lattices });
    Ok((f, pass, format!("{sidecar:#}\n")))
}

//! Hitchin-system numerology and the rank-2 / rank-3 mirror sector generators.
//!
//! Dimensions are for traceless parabolic Higgs bundles with full flags at
//! `m` punctures. The base of the Hitchin map is computed by Riemann-Roch as
//! `sum_{i=2}^n h^0(K^i((i-1)D))`, the nilpotent-residue convention.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::epoly::{e_abelian_variety, EPolynomial};
use crate::error::{HitchinError, OrbifoldError};
use crate::gamma::{GammaElement, GammaGroup};
use crate::orbifold::{OrbifoldPresentation, Sector};

/// Curve, rank and degree data parameterizing the moduli spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveSetup {
    pub g: u32,
    pub n: u32,
    pub m: u32,
    pub c: i64,
    pub d: i64,
    pub generic_weights: bool,
    pub coprime_case: bool,
}

impl CurveSetup {
    pub fn new(
        g: u32,
        n: u32,
        m: u32,
        c: i64,
        d: i64,
        generic_weights: bool,
        coprime_case: bool,
    ) -> Result<Self, HitchinError> {
        let s = Self {
            g,
            n,
            m,
            c,
            d,
            generic_weights,
            coprime_case,
        };
        s.validate()?;
        Ok(s)
    }

    /// Setup with only numerical data; degrees 1 and no case flags.
    pub fn numeric(n: u32, g: u32, m: u32) -> Result<Self, HitchinError> {
        Self::new(g, n, m, 1, 1, false, false)
    }

    /// Parabolic case (a): generic weights at `m >= 1` punctures.
    pub fn parabolic(n: u32, g: u32, m: u32, c: i64, d: i64) -> Result<Self, HitchinError> {
        Self::new(g, n, m, c, d, true, false)
    }

    /// Non-parabolic case (b): `n` coprime to both degrees.
    pub fn coprime(n: u32, g: u32, c: i64, d: i64) -> Result<Self, HitchinError> {
        Self::new(g, n, 0, c, d, false, true)
    }

    pub fn validate(&self) -> Result<(), HitchinError> {
        if self.n < 2 {
            return Err(HitchinError::InvalidRank(self.n));
        }
        if self.g < 1 || (self.g < 2 && self.m < 1) {
            return Err(HitchinError::InvalidGenus {
                g: self.g,
                m: self.m,
            });
        }
        let euler = 2 * self.g as i64 - 2 + self.m as i64;
        if euler <= 0 {
            return Err(HitchinError::NotHyperbolic(euler));
        }
        if self.coprime_case {
            let n = self.n as i64;
            if self.m != 0 || gcd_i64(n, self.c) != 1 || gcd_i64(n, self.d) != 1 {
                return Err(HitchinError::CoprimeCase {
                    n: self.n,
                    m: self.m,
                    c: self.c,
                    d: self.d,
                });
            }
        }
        if self.generic_weights && self.m < 1 {
            return Err(HitchinError::GenericWithoutPuncture);
        }
        Ok(())
    }

    /// Spectral cover data with `L = K(D)`, degree `2g - 2 + m`.
    pub fn spectral_data(&self) -> SpectralData {
        SpectralData {
            n: self.n,
            g: self.g,
            line_degree: 2 * self.g as i64 - 2 + self.m as i64,
        }
    }
}

/// Inputs of a spectral cover inside the total space of a line bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralData {
    n: u32,
    g: u32,
    line_degree: i64,
}

impl SpectralData {
    pub fn new(n: u32, g: u32, line_degree: i64) -> Result<Self, HitchinError> {
        let min = 2 * g as i64 - 2;
        if line_degree < min {
            return Err(HitchinError::LineDegree { line_degree, min });
        }
        Ok(Self { n, g, line_degree })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn line_degree(&self) -> i64 {
        self.line_degree
    }
}

/// `h^0` of a line bundle of the given degree on a genus-`g` curve, valid in
/// the nonspecial range `degree > 2g - 2` (and `0` for negative degree).
pub fn h0_nonspecial(degree: i64, g: u32) -> Option<u64> {
    let g = g as i64;
    if degree < 0 {
        Some(0)
    } else if degree > 2 * g - 2 {
        Some((degree - g + 1) as u64)
    } else {
        None
    }
}

/// Complex dimension of the moduli space: `2(n^2-1)(g-1) + n(n-1)m`.
pub fn moduli_dim(s: &CurveSetup) -> u64 {
    let (n, g, m) = (s.n as i64, s.g as i64, s.m as i64);
    (2 * (n * n - 1) * (g - 1) + n * (n - 1) * m) as u64
}

/// Dimension of the Hitchin base, `sum_{i=2}^n h^0(K^i((i-1)D))`.
pub fn hitchin_base_dim(s: &CurveSetup) -> u64 {
    let (g, m) = (s.g as i64, s.m as i64);
    (2..=s.n as i64)
        .map(|i| {
            let degree = i * (2 * g - 2) + (i - 1) * m;
            h0_nonspecial(degree, s.g).expect("K^i((i-1)D) is nonspecial for hyperbolic curves")
        })
        .sum()
}

/// Genus of a smooth spectral curve: `1 + n(g-1) + n(n-1) deg(L) / 2`.
pub fn spectral_genus(sd: &SpectralData) -> u64 {
    let (n, g) = (sd.n as i64, sd.g as i64);
    (1 + n * (g - 1) + n * (n - 1) * sd.line_degree / 2) as u64
}

/// Dimension of the Prym variety of the spectral cover.
pub fn prym_dim(sd: &SpectralData) -> u64 {
    spectral_genus(sd) - sd.g as u64
}

/// Dimension of the Prym of an unramified cyclic `n`-fold cover of a genus-`g`
/// curve. Riemann-Hurwitz gives cover genus `n(g-1) + 1`.
pub fn unramified_prym_dim(n: u32, g: u32) -> u64 {
    (n as u64 - 1) * (g as u64 - 1)
}

fn check_mirror_range(g: u32, m: u32) -> Result<(), HitchinError> {
    if m < 1 {
        return Err(HitchinError::NoPuncture);
    }
    if g < 1 {
        return Err(HitchinError::InvalidGenus { g, m });
    }
    let euler = 2 * g as i64 - 2 + m as i64;
    if euler <= 0 {
        return Err(HitchinError::NotHyperbolic(euler));
    }
    Ok(())
}

/// `2^{m-1} (2^{2g} - 1) (xy)^{3g-3+m} (1+x)^{g-1} (1+y)^{g-1}`.
pub fn closed_form_rank2(g: u32, m: u32) -> Result<EPolynomial, HitchinError> {
    check_mirror_range(g, m)?;
    let two = BigInt::from(2);
    let count = Pow::pow(&two, 2 * g) - 1;
    let mult = Pow::pow(&two, m - 1);
    Ok(e_abelian_variety(g - 1)
        .scale_monomial(3 * g - 3 + m)
        .scale(&(mult * count)))
}

/// Per-element data for nonidentity sectors of a generated presentation.
pub trait SectorModel {
    /// `(E(X^gamma / Gamma), F(gamma))` for a nonidentity `gamma`.
    fn sector_data(&self, setup: &CurveSetup, gamma: &GammaElement) -> (EPolynomial, u32);
}

/// Uniform model: every nonidentity sector carries `n^{m-1}` copies of the
/// Prym of the unramified cyclic cover attached to `gamma`, shifted by the
/// Hitchin base dimension. At `n = 2` this is the rank-2 fixed-locus data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UniformPrymModel;

impl SectorModel for UniformPrymModel {
    fn sector_data(&self, setup: &CurveSetup, _gamma: &GammaElement) -> (EPolynomial, u32) {
        let mult = Pow::pow(&BigInt::from(setup.n), setup.m.saturating_sub(1));
        let prym = unramified_prym_dim(setup.n, setup.g) as u32;
        let component = e_abelian_variety(prym).scale(&mult);
        (component, hitchin_base_dim(setup) as u32)
    }
}

/// Nonidentity sectors of `Z_n^{2g}` acting on the moduli space, built from
/// `model`. The identity sector is omitted.
pub fn generate_presentation<M: SectorModel>(
    setup: &CurveSetup,
    model: &M,
) -> Result<OrbifoldPresentation, OrbifoldError> {
    let group = GammaGroup::new(setup.n, setup.g)?;
    let mut sectors = Vec::new();
    for gamma in group.enumerate_elements()?.skip(1) {
        let (component, shift) = model.sector_data(setup, &gamma);
        sectors.push(Sector::invariant(&group, gamma, shift, component)?);
    }
    OrbifoldPresentation::new(group, sectors)
}

#[derive(Debug, thiserror::Error)]
pub enum GenerateError {
    #[error(transparent)]
    Setup(#[from] HitchinError),
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
}

/// Rank-2 sectors: each of the `2^{2g} - 1` nonidentity elements contributes
/// `2^{m-1} (1+x)^{g-1} (1+y)^{g-1}` with shift `3g - 3 + m`.
pub fn generate_rank2_presentation(g: u32, m: u32) -> Result<OrbifoldPresentation, GenerateError> {
    check_mirror_range(g, m)?;
    let setup = CurveSetup::parabolic(2, g, m, 1, 1)?;
    Ok(generate_presentation(&setup, &UniformPrymModel)?)
}

/// Rank-3 sectors from the default [`UniformPrymModel`].
pub fn generate_rank3_presentation(g: u32, m: u32) -> Result<OrbifoldPresentation, GenerateError> {
    generate_rank3_presentation_with(g, m, &UniformPrymModel)
}

pub fn generate_rank3_presentation_with<M: SectorModel>(
    g: u32,
    m: u32,
    model: &M,
) -> Result<OrbifoldPresentation, GenerateError> {
    check_mirror_range(g, m)?;
    let setup = CurveSetup::parabolic(3, g, m, 1, 1)?;
    Ok(generate_presentation(&setup, model)?)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold::stringy_e;

    fn setup(n: u32, g: u32, m: u32) -> CurveSetup {
        CurveSetup::numeric(n, g, m).unwrap()
    }

    #[test]
    fn moduli_dims() {
        assert_eq!(moduli_dim(&setup(2, 2, 0)), 6);
        assert_eq!(moduli_dim(&setup(2, 2, 1)), 8);
        assert_eq!(moduli_dim(&setup(3, 2, 0)), 16);
    }

    #[test]
    fn base_dims() {
        assert_eq!(hitchin_base_dim(&setup(2, 2, 1)), 4);
        assert_eq!(hitchin_base_dim(&setup(2, 3, 2)), 8);
        assert_eq!(hitchin_base_dim(&setup(3, 2, 0)), 8);
        // Genus 1 with punctures: K trivial.
        assert_eq!(hitchin_base_dim(&setup(2, 1, 3)), 3);
    }

    #[test]
    fn spectral_genera() {
        let sd = |n, g, l| SpectralData::new(n, g, l).unwrap();
        assert_eq!(spectral_genus(&sd(1, 3, 4)), 3);
        assert_eq!(spectral_genus(&sd(2, 2, 2)), 5);
        assert_eq!(spectral_genus(&sd(3, 2, 2)), 10);
        assert_eq!(spectral_genus(&sd(3, 2, 2)), 3 * 3 + 1);
        assert_eq!(prym_dim(&sd(2, 2, 2)), 3);
        assert_eq!(prym_dim(&sd(2, 2, 3)), 4);
        assert_eq!(prym_dim(&sd(1, 5, 8)), 0);
        assert!(SpectralData::new(2, 3, 3).is_err());
    }

    #[test]
    fn riemann_roch_range() {
        assert_eq!(h0_nonspecial(-1, 3), Some(0));
        assert_eq!(h0_nonspecial(4, 3), None);
        assert_eq!(h0_nonspecial(5, 3), Some(3));
    }

    #[test]
    fn setup_invariants() {
        assert_eq!(
            CurveSetup::numeric(1, 2, 0),
            Err(HitchinError::InvalidRank(1))
        );
        assert!(matches!(
            CurveSetup::numeric(2, 1, 0),
            Err(HitchinError::InvalidGenus { .. })
        ));
        assert!(CurveSetup::numeric(2, 1, 1).is_ok());
        assert!(matches!(
            CurveSetup::numeric(2, 0, 3),
            Err(HitchinError::InvalidGenus { .. })
        ));
        assert!(CurveSetup::coprime(2, 2, 1, 3).is_ok());
        assert!(matches!(
            CurveSetup::coprime(2, 2, 2, 1),
            Err(HitchinError::CoprimeCase { .. })
        ));
        assert!(CurveSetup::new(2, 2, 1, 1, 1, false, true).is_err());
        assert_eq!(
            CurveSetup::new(2, 2, 0, 1, 1, true, false),
            Err(HitchinError::GenericWithoutPuncture)
        );
    }

    #[test]
    fn setup_json_keys() {
        let s = CurveSetup::parabolic(2, 2, 1, 0, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"g":2,"n":2,"m":1,"c":0,"d":1,"generic_weights":true,"coprime_case":false}"#
        );
    }

    #[test]
    fn closed_form_examples() {
        let torus1 = e_abelian_variety(1);
        assert_eq!(
            closed_form_rank2(2, 1).unwrap(),
            torus1.scale_monomial(4).scale(&15.into())
        );
        assert_eq!(
            closed_form_rank2(2, 2).unwrap(),
            torus1.scale_monomial(5).scale(&30.into())
        );
        assert_eq!(
            closed_form_rank2(1, 1).unwrap(),
            EPolynomial::monomial(1, 1, 3)
        );
        assert_eq!(closed_form_rank2(2, 0), Err(HitchinError::NoPuncture));
        assert!(closed_form_rank2(0, 1).is_err());
    }

    #[test]
    fn rank2_generator_examples() {
        let p = generate_rank2_presentation(2, 1).unwrap();
        assert_eq!(p.sectors().len(), 15);
        assert!(p.identity_sector().is_none());
        let each = e_abelian_variety(1).scale_monomial(4);
        for s in p.sectors() {
            assert_eq!(s.invariant_component().scale_monomial(s.shift()), each);
        }
        let p = generate_rank2_presentation(1, 1).unwrap();
        assert_eq!(p.sectors().len(), 3);
        for s in p.sectors() {
            assert_eq!(
                s.invariant_component().scale_monomial(s.shift()),
                EPolynomial::xy_power(1)
            );
        }
        assert!(generate_rank2_presentation(3, 0).is_err());
    }

    #[test]
    fn rank2_mirror_identity_small() {
        for g in 1..=3 {
            for m in 1..=3 {
                let p = generate_rank2_presentation(g, m).unwrap();
                assert_eq!(
                    stringy_e(&p),
                    closed_form_rank2(g, m).unwrap(),
                    "g={g} m={m}"
                );
            }
        }
    }

    #[test]
    fn rank3_structure() {
        let p = generate_rank3_presentation(2, 1).unwrap();
        assert_eq!(p.sectors().len(), 80);
        assert!(p
            .sectors()
            .iter()
            .all(|s| s.invariant_component().is_xy_symmetric()));
        let total = stringy_e(&p);
        let min_shift = p.sectors().iter().map(|s| s.shift()).min().unwrap();
        assert!(total.div_xy_power(min_shift).is_some());
        // Default model: 80 * (1+x)^2 (1+y)^2 (xy)^{8+3}.
        assert_eq!(
            total,
            e_abelian_variety(2).scale_monomial(11).scale(&80.into())
        );
    }

    struct ShiftByOrder;
    impl SectorModel for ShiftByOrder {
        fn sector_data(&self, _s: &CurveSetup, gamma: &GammaElement) -> (EPolynomial, u32) {
            let weight: u32 = gamma.coords().iter().sum();
            (e_abelian_variety(1), 2 + weight)
        }
    }

    #[test]
    fn rank3_pluggable_model() {
        let p = generate_rank3_presentation_with(1, 1, &ShiftByOrder).unwrap();
        assert_eq!(p.sectors().len(), 8);
        let total = stringy_e(&p);
        assert!(total.is_xy_symmetric());
        assert_eq!(total.xy_valuation(), Some(3));
    }
}

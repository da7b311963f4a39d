use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitchin-mirror"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("hitchin-mirror-{}-{name}", std::process::id()))
}

#[test]
fn mirror_test_golden() {
    let o = run(&["mirror-test", "--g", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "g: 2\nm: 1\n\
         stringy_e: 15*x^4*y^4 + 15*x^4*y^5 + 15*x^5*y^4 + 15*x^5*y^5\n\
         closed_form: 15*x^4*y^4 + 15*x^4*y^5 + 15*x^5*y^4 + 15*x^5*y^5\n\
         verdict: PASS\n"
    );
}

#[test]
fn mirror_test_genus_one() {
    let o = run(&["mirror-test", "--g", "1", "--m", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"g\":1,\"m\":1,\"stringy_e\":\"3*x*y\",\"closed_form\":\"3*x*y\",\"verdict\":\"PASS\"}\n"
    );
}

#[test]
fn mirror_test_rejects_genus_zero() {
    let o = run(&["mirror-test", "--g", "0", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("usage"));
    assert!(run(&["mirror-test", "--g", "2", "--m", "0"]).status.code() == Some(2));
    assert!(run(&["mirror-test", "--g", "2"]).status.code() == Some(2));
}

#[test]
fn dims_golden() {
    let header = "n,g,m,moduli_dim,hitchin_base_dim,spectral_genus,prym_dim,half_dimension\n";
    let o = run(&["dims", "--n", "2", "--g", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{header}2,2,1,8,4,6,4,PASS\n"));
    let o = run(&["dims", "--n", "3", "--g", "2", "--m", "0"]);
    assert_eq!(stdout(&o), format!("{header}3,2,0,16,8,10,8,PASS\n"));
}

#[test]
fn dims_rejects_rank_one() {
    let o = run(&["dims", "--n", "1", "--g", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rank"));
}

#[test]
fn twisted_coprime_vanishes_on_rank2() {
    let o = run(&[
        "twisted", "--n", "2", "--g", "2", "--m", "1", "--c", "1", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("2,2,1,0,15*x^4*y^4"), "{row}");
    assert!(row.ends_with(",N/A"));
}

#[test]
fn twisted_zero_multiple_matches_untwisted_from_file() {
    let path = scratch("presentation.json");
    let o = run(&[
        "mirror-test",
        "--g",
        "2",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    for c in ["0", "2", "-4"] {
        let o = run(&["twisted", "--in", path.to_str().unwrap(), "--c", c]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        let twisted = out
            .lines()
            .find(|l| l.starts_with("twisted_stringy_e:"))
            .unwrap();
        let plain = out.lines().find(|l| l.starts_with("stringy_e:")).unwrap();
        assert_eq!(twisted.trim_start_matches("twisted_"), plain);
        assert!(out.ends_with("verdict: PASS\n"));
    }
    let o = run(&[
        "twisted",
        "--in",
        path.to_str().unwrap(),
        "--c",
        "1",
        "--n",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn stringy_round_trips_presentation_file() {
    let path = scratch("rank3.json");
    let generated = run(&[
        "stringy",
        "--n",
        "3",
        "--g",
        "1",
        "--m",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(generated.status.code(), Some(0));
    let loaded = run(&["stringy", "--in", path.to_str().unwrap()]);
    assert_eq!(stdout(&generated), stdout(&loaded));
    assert!(stdout(&loaded).contains("sectors: 8\n"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn missing_sectors_key_is_a_parse_error() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"n": 2, "g": 1}"#).unwrap();
    let o = run(&["stringy", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sectors"), "{}", stderr(&o));
    std::fs::write(&path, "{\"n\": 2,").unwrap();
    let o = run(&["stringy", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn sweeps_are_byte_stable() {
    for args in [
        ["lemma-sweep", "--k", "2", "--count", "10", "--seed", "11"],
        ["duality-sweep", "--k", "3", "--count", "30", "--seed", "11"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).ends_with("verdict: PASS\n"));
    }
}

#[test]
fn sweep_output_requires_seed() {
    let path = scratch("sweep.json");
    let o = run(&[
        "lemma-sweep",
        "--count",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "duality-sweep",
        "--count",
        "2",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(sidecar["lattices"].as_array().unwrap().len(), 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn unknown_command_is_usage_error() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

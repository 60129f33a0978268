use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn birdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_birdeg")).args(args).output().expect("run birdeg")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn classify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "odd6.json", r#"{"n":3,"coeffs":["2","1","1","1"]}"#);
    let out = birdeg(&["classify", &f]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["case"], "Odd6");
    assert_eq!(v["delta"], serde_json::json!(["1", "1"]));
    assert_eq!(v["automorphism"], true);

    let v = json(&birdeg(&["classify", "--coeffs", "5,0,1"]));
    assert_eq!(v["case"], "Even1");
    assert_eq!(v["poly"], serde_json::json!([-1, -3, 1]));

    let v = json(&birdeg(&["classify", "--coeffs", "2,1,1"]));
    assert_eq!((v["case"].as_str(), v["m"].as_u64()), (Some("Even2"), Some(0)));
    assert_eq!(v["delta"], serde_json::json!(["2", "2"]));
}

#[test]
fn invalid_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("lead.json", r#"{"n":2,"coeffs":["1","1","0"]}"#),
        ("count.json", r#"{"n":4,"coeffs":["1","1","1"]}"#),
        ("num.json", r#"{"n":2,"coeffs":["1","one","1"]}"#),
        ("syntax.json", r#"{"n":2,"coeffs":["1","1","1"]"#),
    ] {
        let f = write(dir.path(), name, text);
        let out = birdeg(&["classify", &f]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
    }
    assert_eq!(birdeg(&["classify", "missing.json"]).status.code(), Some(2));
    assert_eq!(birdeg(&["identities", "--kmax", "20"]).status.code(), Some(2));
    assert_eq!(birdeg(&["classify", "--coeffs", "1,1", "--width", "-1"]).status.code(), Some(2));
}

#[test]
fn degree_sequences() {
    let v = json(&birdeg(&["degseq", "--coeffs", "5,0,1", "--iters", "6"]));
    let d: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(&d[..2], &[1, 5]);
    assert_eq!(d.len(), 7);
    let checks = v["recurrence_check"].as_array().unwrap();
    assert!(!checks.is_empty() && checks.iter().all(|c| c == true));

    let v = json(&birdeg(&["degseq", "--coeffs", "5,0,1", "--iters", "0"]));
    assert_eq!(v["degrees"], serde_json::json!([1]));
}

#[test]
fn exact_and_prime_agree_and_prime_switch_warns() {
    let exact = json(&birdeg(&["degseq", "--coeffs", "1,1,1", "--iters", "3", "--mode", "exact"]));
    let prime = json(&birdeg(&["degseq", "--coeffs", "1,1,1", "--iters", "3", "--mode", "prime"]));
    assert_eq!(exact["degrees"], prime["degrees"]);
    assert_eq!(exact["mode"], "exact");
    let out = birdeg(&["degseq", "--coeffs", "1,1,1", "--iters", "6"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime-field"));
    assert_eq!(json(&out)["mode"], "prime");
}

#[test]
fn case_six_ratios_decrease_toward_one() {
    let v = json(&birdeg(&["degseq", "--coeffs", "2,1,1,1", "--iters", "10"]));
    let d: Vec<f64> = v["degrees"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let r: Vec<f64> = d.windows(2).map(|w| w[1] / w[0]).collect();
    assert!(r.windows(2).all(|w| w[1] <= w[0]), "{r:?}");
    assert!(*r.last().unwrap() < 1.3);
}

#[test]
fn c4_lands_on_e01_at_step_three() {
    let out = birdeg(&["orbit", "--coeffs", "1,1,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["c4"]["first_landing"], 3);
    assert_eq!(v["c4"]["bases"][2], "[1:1:0]");
    assert_eq!(v["consistent"], true);
}

#[test]
fn identities_pass() {
    let out = birdeg(&["identities", "--kmax", "21"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["theta"][0], "1/2");
    assert_eq!(v["theta"].as_array().unwrap().len(), 11);
}

#[test]
fn picard_matrix_is_square_in_its_basis() {
    let v = json(&birdeg(&["picard", "--coeffs", "5,1,1,1"]));
    let dim = v["basis"].as_array().unwrap().len();
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), dim);
    assert!(m.iter().all(|c| c.as_array().unwrap().len() == dim));
    assert_eq!(v["divides"], true);
    assert_ne!(birdeg(&["picard", "--coeffs", "2,1,1,1"]).status.code(), Some(0));
}

#[test]
fn verify_all_on_bundled_fixtures() {
    let out = birdeg(&["verify-all", "--iters", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 8);
}

#[test]
fn batch_input_and_reproducible_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "batch.json",
        r#"[{"coeffs":["5","0","1"]},{"name":"odd3","n":3,"coeffs":["5","1","1","1"]}]"#,
    );
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = birdeg(&["degseq", &f, "--iters", "5", "--mode", "prime", "--seed", "9", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["name"], "odd3");
}

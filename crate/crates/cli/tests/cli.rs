use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfree")).args(args).output().expect("binary runs")
}

fn cfree_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cfree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn single(out: &Output) -> Value {
    let mut all = lines(out);
    assert_eq!(all.len(), 1, "{}", String::from_utf8_lossy(&out.stdout));
    all.pop().unwrap()
}

fn with_path<'a>(args: &[&'a str], path: &'a str) -> Vec<&'a str> {
    args.iter().copied().chain(["--input", path]).collect()
}

#[test]
fn enumerate_nc_four_has_fourteen_records() {
    let out = cfree(&["enumerate", "nc", "4"]);
    assert_eq!(code(&out), 0);
    let records = lines(&out);
    assert_eq!(records.len(), 15);
    assert_eq!(records[14], serde_json::json!({ "count": 14 }));
    assert_eq!(records[0]["blocks"], serde_json::json!([[1], [2], [3], [4]]));
    assert_eq!(records[13]["blocks"], serde_json::json!([[1, 4], [2, 3]]));
    assert!(records.iter().any(|r| r["blocks"] == serde_json::json!([[1, 2, 3, 4]])));
}

#[test]
fn enumerate_trees_one_is_a_single_vertex() {
    let records = lines(&cfree(&["enumerate", "trees", "1"]));
    assert_eq!(records, vec![serde_json::json!({ "children": [] }), serde_json::json!({ "count": 1 })]);
}

#[test]
fn enumerate_counts() {
    for (kind, n, count) in [("ncl", 4, 22), ("trees", 4, 5), ("bicolor", 3, 7), ("bicolor", 4, 30)] {
        let records = lines(&cfree(&["enumerate", kind, &n.to_string()]));
        assert_eq!(records.last().unwrap()["count"], count, "{kind} {n}");
        assert_eq!(records.len(), count + 1);
    }
}

#[test]
fn enumerate_ncl_twelve_contains_the_example_partition() {
    let out = cfree(&["enumerate", "ncl", "12"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let target = r#"{"n":12,"blocks":[[1,4,6,9],[2,3],[4,5],[6,7,8],[10,11],[11,12]]}"#;
    assert!(text.lines().any(|l| l == target));
    assert_eq!(text.lines().last().unwrap(), r#"{"count":5293446}"#);
}

#[test]
fn size_limit_exits_with_two() {
    let out = cfree(&["enumerate", "nc", "13"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&cfree(&["enumerate", "trees", "6", "--max-n", "5"])), 2);
    assert_eq!(code(&cfree(&["verify", "prop24", "--order", "13"])), 2);
}

#[test]
fn conversions_roundtrip_byte_for_byte() {
    let path = fixture("moments.json");
    let canonical = cfree(&with_path(&["convert", "--to", "moments"], path.to_str().unwrap()));
    assert_eq!(code(&canonical), 0);
    for via in ["cumulants", "t"] {
        let there = cfree(&with_path(&["convert", "--to", via], path.to_str().unwrap()));
        assert_eq!(code(&there), 0);
        let back = cfree_stdin(&["convert", "--to", "moments"], &there.stdout);
        assert_eq!(code(&back), 0);
        assert_eq!(back.stdout, canonical.stdout, "via {via}");
    }
}

#[test]
fn zero_mean_cannot_go_to_t_coefficients() {
    let out = cfree(&with_path(&["convert", "--to", "t"], fixture("zero_mean.json").to_str().unwrap()));
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("variable not invertible (phi(X)=0)"));
    let ok = cfree(&with_path(&["convert", "--to", "cumulants"], fixture("zero_mean.json").to_str().unwrap()));
    assert_eq!(code(&ok), 0);
}

#[test]
fn second_moment_from_t_coefficients() {
    // t_0 = 2/3, t_1 = -5/2: φ(X²) = t_0² + t_1 t_0 = -11/9
    let out = single(&cfree(&with_path(&["convert", "--to", "moments"], fixture("t_order2.json").to_str().unwrap())));
    assert_eq!(out["phi"][0]["re"], "2/3");
    assert_eq!(out["phi"][1]["re"], "-11/9");
    assert_eq!(out["phi"][1]["im"], "0/1");
}

#[test]
fn malformed_input_exits_with_three() {
    assert_eq!(code(&cfree_stdin(&["convert", "--to", "t"], b"{not json")), 3);
    assert_eq!(code(&cfree_stdin(&["convert", "--to", "t"], br#"{"order":1,"dim":1}"#)), 3);
    assert_eq!(code(&cfree(&["convert", "--to", "t", "--input", "/nonexistent.json"])), 3);
    assert_eq!(code(&cfree(&["enumerate", "partitions", "3"])), 3);
}

#[test]
fn multiply_reports_multiplicativity() {
    let out = cfree(&with_path(&["multiply"], fixture("pair.json").to_str().unwrap()));
    assert_eq!(code(&out), 0);
    let report = single(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["order"], 2);
    assert_eq!(report["product"]["order"], 3);
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "lemma22", "--order", "8", "--trials", "2"][..],
        &["verify", "prop23", "--order", "5", "--trials", "1"],
        &["verify", "prop24", "--order", "8", "--trials", "3"],
        &["verify", "prop25", "--order", "5", "--trials", "1"],
        &["verify", "theorem31", "--order", "8", "--dim", "3", "--trials", "3", "--seed", "7"],
        &["verify", "trees", "--n", "4", "--trials", "1"],
    ] {
        let out = cfree(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let report = single(&out);
        assert_eq!(report["failures"], serde_json::json!([]));
        assert_eq!(report["suite"], args[1]);
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "theorem31", "--order", "6", "--trials", "4", "--seed", "3"];
    let a = cfree(&args);
    let b = cfree(&args);
    assert_eq!(a.stdout, b.stdout);
    let report = single(&a);
    assert_eq!((report["order"].as_u64(), report["trials"].as_u64()), (Some(6), Some(4)));
}

#[test]
fn toeplitz_fixtures() {
    let psd = |name: &str| cfree(&with_path(&["divisibility", "psd"], fixture(name).to_str().unwrap()));
    let haar = psd("haar.json");
    assert_eq!(code(&haar), 0);
    assert_eq!(single(&haar)["psd"], true);
    assert_eq!(single(&haar)["depth"], 3);
    assert_eq!(code(&psd("point_mass.json")), 0);
    let bad = psd("a1_two.json");
    assert_eq!(code(&bad), 1);
    let report = single(&bad);
    assert_eq!(report["psd"], false);
    assert!((report["min_eigenvalue"].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn haar_property_on_generated_and_given_pairs() {
    let out = cfree(&["divisibility", "haar", "--dim", "2", "--order", "8", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(single(&out)["nonzero"], serde_json::json!([]));
    // the pair fixture has nonzero first cumulants
    let out = cfree(&with_path(&["divisibility", "haar", "--n-max", "3"], fixture("pair.json").to_str().unwrap()));
    assert_eq!(code(&out), 1);
}

#[test]
fn counterexample_report() {
    let out = cfree(&["divisibility", "counterexample", "--lambda", "-0.1,0.05"]);
    assert_eq!(code(&out), 0);
    let report = single(&out);
    assert_eq!(report["applicable"], true);
    assert_eq!(report["no_contractive_root"], true);
    let from_file = single(&cfree(&with_path(&["divisibility", "counterexample"], fixture("counterexample.json").to_str().unwrap())));
    assert_eq!(from_file["lambda"], serde_json::json!([0.05, 0.05]));
    assert_eq!(code(&cfree(&["divisibility", "counterexample", "--lambda", "a,b"])), 3);
}

#[test]
fn levy_values() {
    let out = cfree(&with_path(&["divisibility", "levy"], fixture("levy.json").to_str().unwrap()));
    assert_eq!(code(&out), 0);
    let values = single(&out);
    let values = values.as_array().unwrap();
    assert_eq!(values.len(), 6);
    // σ = 0 gives γ itself
    assert_eq!(values[0]["value"]["modulus"], 1.0);
    for v in values {
        let modulus = v["value"]["modulus"].as_f64().unwrap();
        assert!(modulus <= 1.0 + 1e-15);
        assert!((modulus - v["value"]["poisson_modulus"].as_f64().unwrap()).abs() < 1e-12);
    }
    assert!((values[3]["value"]["modulus"].as_f64().unwrap() - (-0.95f64).exp()).abs() < 1e-12);
}

#[test]
fn schema_lists_the_formats() {
    let out = cfree(&["--schema"]);
    assert_eq!(code(&out), 0);
    let schema = single(&out);
    for key in ["distribution", "pair", "unitary", "levy", "enumerate", "verify", "exit_codes"] {
        assert!(schema.get(key).is_some(), "{key}");
    }
}

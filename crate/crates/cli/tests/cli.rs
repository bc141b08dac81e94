use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use subordkit::domains::TargetDomain;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subordkit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_pass_and_advisory_exit_zero() {
    let out = run(&["--no-timing", "verify-theorem", "--id", "T4.8", "--alpha1", "4.7", "--alpha2", "0.01"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["schema"], "subordkit/1");
    assert_eq!(r["result"]["status"], "PASS");
    assert!(r["result"]["min_margin"].as_f64().unwrap() >= 0.0);
    assert!(r["wall_time_ms"].is_null());

    let out = run(&["verify-theorem", "--id", "T4.1", "--alpha1", "3", "--alpha2", "0.2", "--C", "1", "--D", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["status"], "PASS");

    let out = run(&["verify-theorem", "--id", "T4.8", "--alpha1", "1", "--alpha2", "0.5"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["status"], "ADVISORY");
    assert!(r["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn certified_failure_exits_one() {
    // the sqrt1pz quadratic also holds when alpha2 is much larger than alpha1
    let out = run(&["verify-theorem", "--id", "T4.2", "--alpha1", "0.1", "--alpha2", "10", "--theta-samples", "256"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["result"]["status"], "FAIL");
    assert_eq!(r["result"]["threshold_holds"], true);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify-theorem", "--id", "T6.1", "--alpha1", "1", "--alpha2", "1"][..],
        &["verify-theorem", "--id", "T4.8", "--alpha1", "1"],
        &["verify-theorem", "--id", "T4.1", "--alpha1", "3", "--alpha2", "0.2"],
        &["verify-theorem", "--id", "T4.1", "--alpha1", "3", "--alpha2", "0.2", "--C", "0.1", "--D", "0.5"],
        &["verify-theorem", "--id", "T5.8", "--alpha1", "10", "--alpha2", "1"],
        &["verify-theorem", "--id", "T5.8", "--alpha1", "10", "--alpha2", "1", "--alpha3", "0.1", "--m", "1"],
        &["verify-theorem", "--id", "T4.8", "--alpha1", "-1", "--alpha2", "1"],
        &["emit-boundary", "--domain", "ellipse", "--out", "x.csv"],
        &["emit-boundary", "--domain", "exp", "--samples", "10", "--out", "x.csv"],
        &["emit-boundary", "--domain", "exp"],
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_subordkit"))
        .env("SUBORDKIT_THREADS", "zero")
        .args(["verify-theorem", "--id", "T4.8", "--alpha1", "4.7", "--alpha2", "0.01"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "--no-timing",
        "falsify",
        "--id",
        "T5.6",
        "--alpha1",
        "9",
        "--alpha2",
        "0.5",
        "--alpha3",
        "0.1",
        "--trials",
        "300",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_subordkit")).env("SUBORDKIT_THREADS", "1").args(args).output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let args = ["--no-timing", "verify-theorem", "--id", "T5.4", "--alpha1", "6", "--alpha2", "0.5", "--alpha3", "0.1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn config_is_echoed() {
    let out = run(&[
        "--no-timing",
        "verify-theorem",
        "--id",
        "T4.6",
        "--alpha1",
        "8",
        "--alpha2",
        "0.25",
        "--theta-samples",
        "128",
    ]);
    let r = report(&out);
    assert_eq!(r["command"], "verify-theorem");
    assert_eq!(r["config"]["id"], "T4.6");
    assert_eq!(r["config"]["alpha2"].as_f64(), Some(0.25));
    assert_eq!(r["config"]["theta_samples"], 128);
    assert_eq!(r["result"]["samples"], 128 * 5 * 15);
}

#[test]
fn find_threshold_examples() {
    let e = std::f64::consts::E;
    for (id, sufficient) in [("T4.8", e * (e - 1.0)), ("T4.4", std::f64::consts::SQRT_2 * e), ("T4.3", e * 0.546302)] {
        let out = run(&["find-threshold", "--id", id, "--theta-samples", "256"]);
        assert_eq!(code(&out), 0);
        let r = report(&out)["result"].clone();
        let empirical = r["empirical"].as_f64().unwrap();
        assert!(empirical > 0.0 && empirical <= sufficient + 1e-3, "{id}: {empirical}");
        assert!((r["stated_threshold"].as_f64().unwrap() - sufficient).abs() < 1e-5);
    }
}

fn write_coeffs(dir: &Path, name: &str, coeffs: &[[f64; 2]]) -> String {
    let path = dir.join(name);
    let body = serde_json::json!({ "class": "A", "coeffs": coeffs });
    std::fs::write(&path, body.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_function_examples() {
    let dir = tempfile::tempdir().unwrap();
    let z = write_coeffs(dir.path(), "z.json", &[[0.0, 0.0], [1.0, 0.0]]);
    let out = run(&["check-function", "--file", &z]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["in_s_star_e"], true);

    let mut koebe = vec![[0.0, 0.0]];
    koebe.extend(std::iter::repeat_n([1.0, 0.0], 16));
    let k = write_coeffs(dir.path(), "k.json", &koebe);
    assert_eq!(report(&run(&["check-function", "--file", &k]))["result"]["in_s_star_e"], false);

    let q = write_coeffs(dir.path(), "q.json", &[[0.0, 0.0], [1.0, 0.0], [0.1, 0.0]]);
    let out = run(&["check-function", "--file", &q, "--alpha1", "4.7", "--alpha2", "0.01", "--domain", "exp"]);
    let r = report(&out);
    let conditions = r["result"]["corollaries"]["conditions"].as_array().unwrap();
    let vi = conditions.iter().find(|c| c["label"] == "vi").unwrap();
    assert_eq!(vi["theorem"], "T4.8");
    assert_eq!(vi["threshold_holds"], true);
    assert_eq!(r["result"]["corollaries"]["named_domain"]["domain"]["id"], "exp");

    let out = run(&["check-function", "--file", &q, "--alpha1", "9", "--alpha2", "0.5", "--alpha3", "0.1"]);
    let r = report(&out);
    assert_eq!(r["result"]["corollaries"]["operator"], "chi_f");
    assert!(r["result"]["corollaries"]["chi_f_discrepancy"]["max_coeff_diff"].as_f64().unwrap() > 0.0);
}

#[test]
fn malformed_coefficient_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("syntax.json", "{\"class\": \"A\", \"coeffs\": [[0, 0], [1"),
        ("class.json", "{\"class\": \"B\", \"coeffs\": [[0, 0], [1, 0]]}"),
        ("short.json", "{\"class\": \"A\", \"coeffs\": [[0, 0]]}"),
        ("norm.json", "{\"class\": \"A\", \"coeffs\": [[0, 0], [2, 0]]}"),
        ("extra.json", "{\"class\": \"A\", \"coeffs\": [[0, 0], [1, 0]], \"x\": 1}"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = run(&["check-function", "--file", path.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{name}");
    }
    assert_eq!(code(&run(&["check-function", "--file", "/no/such/file.json"])), 2);
}

fn read_rows(path: &Path) -> Vec<[f64; 3]> {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.starts_with("theta,re,im\n"));
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            [0, 1, 2].map(|i| r[i].parse::<f64>().unwrap())
        })
        .collect()
}

#[test]
fn crescent_emission_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("crescent.csv");
    let out = run(&["emit-boundary", "--domain", "crescent", "--samples", "1024", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let sqrt2 = std::f64::consts::SQRT_2;
    let c1 = read_rows(&dir.path().join("crescent_c1.csv"));
    let c2 = read_rows(&dir.path().join("crescent_c2.csv"));
    assert_eq!(c1.len(), 1024);
    assert!(c1.iter().all(|[_, re, im]| ((re - 1.0).hypot(*im) - sqrt2).abs() < 1e-12));
    assert!(c2.iter().all(|[_, re, im]| ((re + 1.0).hypot(*im) - sqrt2).abs() < 1e-12));

    let d = TargetDomain::crescent();
    for [theta, re, im] in read_rows(&out_path) {
        let w = d.boundary_point(theta).unwrap();
        assert_eq!((w.re.to_bits(), w.im.to_bits()), (re.to_bits(), im.to_bits()));
    }
}

#[test]
fn enclosing_radius_from_emitted_rows() {
    let dir = tempfile::tempdir().unwrap();
    for (domain, radius) in [("exp", std::f64::consts::E - 1.0), ("sine", 1.0_f64.sinh())] {
        let path = dir.path().join(format!("{domain}.csv"));
        assert_eq!(code(&run(&["emit-boundary", "--domain", domain, "--out", path.to_str().unwrap()])), 0);
        let max = read_rows(&path).iter().map(|[_, re, im]| (re - 1.0).hypot(*im)).fold(0.0, f64::max);
        assert!((max - radius).abs() < 1e-6, "{domain}: {max}");
    }
}

#[test]
fn json_emission_and_unwritable_path() {
    let out = run(&[
        "emit-boundary",
        "--domain",
        "janowski",
        "--C",
        "0.5",
        "--D",
        "-0.2",
        "--samples",
        "64",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["boundary"].as_array().unwrap().len(), 64);
    assert!(r["result"]["c1"].is_null());

    let out = run(&["emit-boundary", "--domain", "exp", "--out", "/no/such/dir/exp.csv"]);
    assert_eq!(code(&out), 2);
}

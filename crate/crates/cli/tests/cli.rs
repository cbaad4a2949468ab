use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kannappan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn kannappan")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// The ℤ₃ negation setting and the pair `f = χ₁ − χ₁∘σ`, `g = (χ₁ + χ₁∘σ)/2`.
fn z3_files(dir: &Path) -> [PathBuf; 4] {
    let r3 = 3f64.sqrt();
    [
        write(
            dir,
            "z3.txt",
            "# cyclic group of order 3\nn 3\n0 1 2\n1 2 0\n2 0 1\nidentity 0\n",
        ),
        write(dir, "neg.txt", "0 2 1\n"),
        write(dir, "f.txt", &format!("0 0\n0 {r3:.17}\n0 {:.17}\n", -r3)),
        write(dir, "g.txt", "1 0\n-0.5 0\n-0.5 0\n"),
    ]
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_accepts_known_solution() {
    let dir = TempDir::new().unwrap();
    let [sg, sigma, f, g] = z3_files(dir.path());
    let out = run(&[
        "check",
        "--eq",
        "kss",
        "--semigroup",
        s(&sg),
        "--sigma",
        s(&sigma),
        "--f",
        s(&f),
        "--g",
        s(&g),
    ]);
    let v = json(&out);
    assert_eq!(v["verdict"], true);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(
        v["inputs"]["setting"]["semigroup"].as_str().unwrap().len(),
        64
    );
}

#[test]
fn check_rejects_generic_pair() {
    let dir = TempDir::new().unwrap();
    let [sg, sigma, _, _] = z3_files(dir.path());
    let f = write(dir.path(), "rf.txt", "0.31 0.2\n0.77 -0.4\n0.05 0.9\n");
    let g = write(dir.path(), "rg.txt", "0.12 0\n-0.63 0.5\n0.48 0.1\n");
    let out = run(&[
        "check",
        "--eq",
        "kss",
        "--semigroup",
        s(&sg),
        "--sigma",
        s(&sigma),
        "--f",
        s(&f),
        "--g",
        s(&g),
    ]);
    assert_eq!(json(&out)["verdict"], false);
}

#[test]
fn classify_recovers_family_four() {
    let dir = TempDir::new().unwrap();
    let [sg, sigma, f, g] = z3_files(dir.path());
    let out = run(&[
        "classify",
        "--eq",
        "kss",
        "--semigroup",
        s(&sg),
        "--sigma",
        s(&sigma),
        "--f",
        s(&f),
        "--g",
        s(&g),
    ]);
    let v = json(&out);
    assert_eq!(v["descriptor"]["family"], "T36_4");
    assert!(v["round_trip_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn exponentials_of_catalog_entries() {
    assert_eq!(
        json(&run(&["exponentials", "--semigroup", "catalog:Z3"]))["count"],
        3
    );
    assert_eq!(
        json(&run(&["exponentials", "--semigroup", "catalog:Trunc4"]))["count"],
        2
    );
}

#[test]
fn fit_measure_inverts_the_fourier_transform() {
    let dir = TempDir::new().unwrap();
    let w = |j: usize| -> String {
        (0..3)
            .map(|x| {
                let a = 2.0 * PI * (j * x) as f64 / 3.0;
                format!("{:.17} {:.17}\n", a.cos(), a.sin())
            })
            .collect()
    };
    let (c0, c1, c2) = (
        write(dir.path(), "c0", &w(0)),
        write(dir.path(), "c1", &w(1)),
        write(dir.path(), "c2", &w(2)),
    );
    let out = run(&[
        "fit-measure",
        "--semigroup",
        "catalog:Z3",
        "--support",
        "0,1,2",
        "--constraint",
        &format!("{}:0:0", s(&c0)),
        "--constraint",
        &format!("{}:-2:0", s(&c1)),
        "--constraint",
        &format!("{}:2:0", s(&c2)),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // w_k = (1/3) Σ_j T_j ω^{−jk} with T = (0, −2, 2).
    let targets = [0.0, -2.0, 2.0];
    for (k, l) in text.lines().enumerate() {
        let parts: Vec<f64> = l
            .split_whitespace()
            .skip(1)
            .map(|t| t.parse().unwrap())
            .collect();
        let (mut re, mut im) = (0.0, 0.0);
        for (j, t) in targets.iter().enumerate() {
            let a = -2.0 * PI * (j * k) as f64 / 3.0;
            re += t * a.cos() / 3.0;
            im += t * a.sin() / 3.0;
        }
        assert!(
            (parts[0] - re).abs() < 1e-12 && (parts[1] - im).abs() < 1e-12,
            "line {k}: {l}"
        );
    }
}

#[test]
fn grid_search_finds_two_character_pair_on_z2() {
    let v = json(&run(&[
        "grid-search",
        "--eq",
        "ksa",
        "--semigroup",
        "catalog:Z2",
    ]));
    let hits = v["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["descriptor"]["family"] == "T44_4"));
    let v = json(&run(&[
        "grid-search",
        "--eq",
        "kss",
        "--semigroup",
        "catalog:Z2",
    ]));
    for h in v["hits"].as_array().unwrap() {
        let fam = h["descriptor"]["family"].as_str().unwrap();
        assert!(fam == "T36_1" || fam == "T36_2", "{fam}");
    }
}

#[test]
fn verify_single_suite_only_reports_that_suite() {
    let v = json(&run(&["verify", "--suite", "prop31"]));
    let suites = v["suites"].as_object().unwrap();
    assert_eq!(suites.keys().collect::<Vec<_>>(), vec!["prop31"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_flags_tampered_table() {
    let dir = TempDir::new().unwrap();
    // Z3 with one entry changed.
    let bad = write(dir.path(), "bad.txt", "n 3\n0 1 2\n1 2 0\n2 0 0\n");
    let out = run(&["verify", "--suite", "catalog", "--semigroup", s(&bad)]);
    assert!(!out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rec = v["suites"]["catalog"]["records"]
        .as_array()
        .unwrap()
        .last()
        .unwrap()
        .clone();
    assert_eq!(rec["associative"], false);
    assert!(!rec["violations"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_list_and_dump() {
    let out = run(&["catalog", "--list"]);
    let names = String::from_utf8(out.stdout).unwrap();
    assert!(names.lines().any(|l| l == "TruncSq4"));
    let out = run(&["catalog", "--dump", "Trunc4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n 4\n0 1 2 3\n1 2 3 3\n"));
    assert!(!run(&["catalog", "--dump", "Z9"]).status.success());
}

#[test]
fn unknown_flags_and_bad_files_fail() {
    assert!(!run(&["verify", "--bogus"]).status.success());
    let dir = TempDir::new().unwrap();
    let short = write(dir.path(), "short.txt", "n 2\n0 1\n");
    let out = run(&["exponentials", "--semigroup", s(&short)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("too few table rows"));
}

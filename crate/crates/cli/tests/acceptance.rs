//! CLI acceptance: byte-identical output under repeated seeded runs
//! (criterion 11), canonical round trips of generated files, and the wiring
//! of the solve/lp subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ytiling"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("ytiling-acc-{}-{name}", std::process::id()));
    p
}

/// Criterion 11: every audit subcommand, run twice with the same seed,
/// produces byte-identical JSON on stdout and in --out files.
#[test]
fn criterion_11_audit_determinism() {
    for suite in ["f0", "f11f1", "frfu", "constructions", "linearization", "all"] {
        let out_a = tmp(&format!("{suite}-a.json"));
        let out_b = tmp(&format!("{suite}-b.json"));
        let a = run(&["audit", "--suite", suite, "--seed", "12345", "--out", out_a.to_str().unwrap()]);
        let b = run(&["audit", "--suite", suite, "--seed", "12345", "--out", out_b.to_str().unwrap()]);
        assert!(a.status.success(), "suite {suite} failed: {}", String::from_utf8_lossy(&a.stderr));
        assert!(b.status.success());
        assert_eq!(a.stdout, b.stdout, "suite {suite} stdout differs between runs");
        let fa = std::fs::read(&out_a).unwrap();
        let fb = std::fs::read(&out_b).unwrap();
        assert_eq!(fa, fb, "suite {suite} files differ");
        assert_eq!(fa, a.stdout, "suite {suite}: file and stdout differ");
        let _ = std::fs::remove_file(out_a);
        let _ = std::fs::remove_file(out_b);
    }
    println!("criterion 11: PASS  [CLI determinism] all audit suites byte-identical across reruns");
}

#[test]
fn seeded_generation_is_byte_identical() {
    let path = tmp("rand.hg");
    let args = ["gen", "--family", "random", "--n", "10", "--p", "0.5", "--seed", "7", "--out", path.to_str().unwrap()];
    let a = run(&args);
    let file_a = std::fs::read(&path).unwrap();
    let b = run(&args);
    let file_b = std::fs::read(&path).unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(file_a, file_b);
    let _ = std::fs::remove_file(path);
}

#[test]
fn blowup_family_uses_an_input_instance() {
    let base = tmp("base-y.hg");
    std::fs::write(&base, "4 3 2\n0 1 2\n0 1 3\n").unwrap();
    let out = tmp("blown.hg");
    let g = run(&[
        "gen", "--family", "blowup", "--b", "2",
        "--input", base.to_str().unwrap(),
        "--out", out.to_str().unwrap(),
    ]);
    assert!(g.status.success(), "{}", String::from_utf8_lossy(&g.stderr));
    let report: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    assert_eq!(report["payload"]["n"], 8);
    assert_eq!(report["payload"]["edges"], 16);
    let _ = std::fs::remove_file(base);
    let _ = std::fs::remove_file(out);
}

#[test]
fn generated_files_reparse_to_the_same_digest() {
    for (family, extra, format) in [
        ("clique", vec!["--n", "15", "--s", "2"], "hg"),
        ("cover", vec!["--n", "8", "--s", "1"], "json"),
        ("kpartite", vec!["--n", "2", "--t", "1"], "hg"),
        ("complete", vec!["--n", "7"], "hg"),
    ] {
        let path = tmp(&format!("{family}.{format}"));
        let mut args = vec!["gen", "--family", family];
        args.extend(extra.iter());
        args.extend(["--out", path.to_str().unwrap()]);
        let g = run(&args);
        assert!(g.status.success(), "{}", String::from_utf8_lossy(&g.stderr));
        let gen_report: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();

        let s = run(&["solve", "--input", path.to_str().unwrap(), "--mode", "greedy"]);
        assert!(s.status.success());
        let solve_report: serde_json::Value = serde_json::from_slice(&s.stdout).unwrap();
        assert_eq!(
            gen_report["instance"]["sha256"], solve_report["instance"]["sha256"],
            "{family}: digest changed across write/read"
        );
        let _ = std::fs::remove_file(path);
    }
}

#[test]
fn solve_modes_regression_values() {
    let clique = tmp("clique-s2.hg");
    let g = run(&["gen", "--family", "clique", "--n", "15", "--s", "2", "--out", clique.to_str().unwrap()]);
    assert!(g.status.success());
    let gen_report: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    assert_eq!(gen_report["payload"]["edges"], 165);

    let exact = run(&["solve", "--input", clique.to_str().unwrap(), "--mode", "exact"]);
    let exact_report: serde_json::Value = serde_json::from_slice(&exact.stdout).unwrap();
    assert_eq!(exact_report["payload"]["result"]["size"], 2);
    assert_eq!(exact_report["payload"]["result"]["optimal"], true);
    assert_eq!(exact_report["payload"]["verified"], true);

    let greedy = run(&["solve", "--input", clique.to_str().unwrap(), "--mode", "greedy"]);
    let greedy_report: serde_json::Value = serde_json::from_slice(&greedy.stdout).unwrap();
    let gs = greedy_report["payload"]["result"]["size"].as_u64().unwrap();
    assert!(gs <= 2);

    let mixed = run(&["solve", "--input", clique.to_str().unwrap(), "--mode", "mixed"]);
    let mixed_report: serde_json::Value = serde_json::from_slice(&mixed.stdout).unwrap();
    // 11 clique vertices: two copies plus one edge cover 11
    assert_eq!(mixed_report["payload"]["result"]["coverage"], 11);
    let _ = std::fs::remove_file(clique);
}

#[test]
fn lp_reports_exact_rationals() {
    let y = tmp("single-y.hg");
    std::fs::write(&y, "4 3 2\n0 1 2\n0 1 3\n").unwrap();
    let lp = run(&["lp", "--input", y.to_str().unwrap()]);
    assert!(lp.status.success());
    let report: serde_json::Value = serde_json::from_slice(&lp.stdout).unwrap();
    assert_eq!(report["payload"]["optimum"], "4");
    assert_eq!(report["payload"]["verified"], true);
    assert_eq!(report["payload"]["exact_comparison"]["lp_ge_4_exact"], true);

    let single = tmp("single-edge.hg");
    std::fs::write(&single, "3 3 1\n0 1 2\n").unwrap();
    let lp = run(&["lp", "--input", single.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&lp.stdout).unwrap();
    assert_eq!(report["payload"]["optimum"], "3");
    let _ = std::fs::remove_file(y);
    let _ = std::fs::remove_file(single);
}

#[test]
fn audit_requires_seed_for_stochastic_suites() {
    let out = run(&["audit", "--suite", "linearization"]);
    assert!(!out.status.success());
    // deterministic suites run without one
    let out = run(&["audit", "--suite", "f0"]);
    assert!(out.status.success());
}

#[test]
fn csv_output_is_flat_and_deterministic() {
    let a = run(&["audit", "--suite", "f0", "--format", "csv"]);
    let b = run(&["audit", "--suite", "f0", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,computed,expected,pass"));
    assert!(text.lines().count() >= 4);
}

//! End-to-end checks of the command-line interface and the file formats.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_twistflux"))
}

fn run_in(dir: &std::path::Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn workdir() -> tempdir::TempDir {
    tempdir::TempDir::new()
}

// minimal self-contained temp dir helper
mod tempdir {
    use std::path::{Path, PathBuf};
    pub struct TempDir(PathBuf);
    impl TempDir {
        pub fn new() -> TempDir {
            let base = std::env::temp_dir().join(format!(
                "twistflux-test-{}-{:?}",
                std::process::id(),
                std::thread::current().id()
            ));
            std::fs::create_dir_all(&base).unwrap();
            TempDir(base)
        }
        pub fn path(&self) -> &Path {
            &self.0
        }
    }
    impl Drop for TempDir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

#[test]
fn examples_then_validate_and_report() {
    let dir = workdir();
    let (code, _, err) = run_in(dir.path(), &["examples", "-o", "."]);
    assert_eq!(code, 0, "examples failed: {err}");
    for file in [
        "torus.sq",
        "genus2_block.sq",
        "genus5.sq",
        "gamma.curve",
        "word.txt",
    ] {
        assert!(dir.path().join(file).exists(), "missing {file}");
    }

    let (code, out, _) = run_in(dir.path(), &["validate", "torus.sq"]);
    assert_eq!(code, 0);
    assert!(out.contains("genus 1"), "validate output: {out}");

    let (code, out, _) = run_in(dir.path(), &["validate", "genus5.sq"]);
    assert_eq!(code, 0);
    assert!(out.contains("genus 5"));

    let word = std::fs::read_to_string(dir.path().join("word.txt")).unwrap();
    let word = word.trim();
    assert_eq!(word, "a2^1*a1^9*b1^-9*b2^-1");

    let (code, out, _) = run_in(
        dir.path(),
        &["report", "genus5.sq", "-w", word, "-c", "gamma.curve"],
    );
    assert_eq!(code, 0);
    assert!(out.contains("matrix: [[325, 18], [18, 1]]"), "report: {out}");
    assert!(out.contains("torelli: yes"));
    assert!(out.contains("curve flux: 1/2"));
    assert!(out.contains("realizability: obstructed"));
}

#[test]
fn flux_subcommand_and_domain_errors() {
    let dir = workdir();
    let (code, _, _) = run_in(dir.path(), &["examples", "-o", "."]);
    assert_eq!(code, 0);

    let (code, out, _) = run_in(
        dir.path(),
        &[
            "flux",
            "genus5.sq",
            "-w",
            "a2^1*a1^9*b1^-9*b2^-1",
            "-c",
            "gamma.curve",
        ],
    );
    assert_eq!(code, 0);
    assert!(out.contains("flux = 1/2"), "flux output: {out}");

    // a single twist moves gamma's class: flux undefined
    let (code, _, err) = run_in(
        dir.path(),
        &["flux", "genus5.sq", "-w", "a1^1", "-c", "gamma.curve"],
    );
    assert_eq!(code, 1);
    assert!(err.contains("CLASS_NOT_INVARIANT"), "stderr: {err}");

    // usage error: missing required flag
    let (code, _, _) = run_in(dir.path(), &["flux", "genus5.sq"]);
    assert_eq!(code, 2);

    // parse error: broken surface file
    std::fs::write(
        dir.path().join("broken.sq"),
        "squares: 2\nalpha:\na1: [0, 1]\nbeta:\nb1: [0]\nflips: [+, +]\n",
    )
    .unwrap();
    let (code, _, err) = run_in(dir.path(), &["validate", "broken.sq"]);
    assert_eq!(code, 1);
    assert!(err.contains("MISSING_SQUARE"), "stderr: {err}");
}

#[test]
fn pa_check_verdicts() {
    let dir = workdir();
    run_in(dir.path(), &["examples", "-o", "."]);
    let (code, out, _) = run_in(
        dir.path(),
        &["pa-check", "genus2_block.sq", "-w", "a1^1*b1^-1"],
    );
    assert_eq!(code, 0);
    assert!(out.contains("matrix: [[65, 8], [8, 1]]"), "{out}");
    assert!(out.contains("trace: 66"));
    assert!(out.contains("verdict: pseudo-anosov"));

    let (code, out, _) = run_in(dir.path(), &["pa-check", "genus5.sq", "-w", "a1^1"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: not-affine-certifiable"));
}

#[test]
fn homology_subcommand() {
    let dir = workdir();
    run_in(dir.path(), &["examples", "-o", "."]);
    let (code, out, _) = run_in(dir.path(), &["homology", "genus5.sq"]);
    assert_eq!(code, 0);
    assert!(out.contains("rank 2g = 10"), "{out}");
    // a2 and b2 are nullhomologous
    assert!(out.contains("class [a2] = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0]"));
    assert!(out.contains("class [b2] = [0, 0, 0, 0, 0, 0, 0, 0, 0, 0]"));
}

#[test]
fn json_report_round_trips_exact_rationals() {
    let dir = workdir();
    run_in(dir.path(), &["examples", "-o", "."]);
    let (code, out, _) = run_in(
        dir.path(),
        &[
            "report",
            "genus5.sq",
            "-w",
            "a2^1*a1^9*b1^-9*b2^-1",
            "-c",
            "gamma.curve",
            "--json",
        ],
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["torelli"], serde_json::json!(true));
    assert_eq!(v["curve_flux"]["reduced"], serde_json::json!("1/2"));
    assert_eq!(v["curve_flux"]["raw"], serde_json::json!("9/2"));
    let parse_q = |s: &serde_json::Value| {
        twistflux::curves::q_parse(s.as_str().unwrap()).expect("rational round-trip")
    };
    assert_eq!(parse_q(&v["curve_flux"]["reduced"]), twistflux::curves::q(1, 2));
    for entry in v["flux"].as_array().unwrap() {
        let raw = parse_q(&entry["raw"]);
        let reduced = parse_q(&entry["reduced"]);
        assert_eq!(&raw - raw.floor(), reduced);
    }
    assert_eq!(v["pa"]["trace"], serde_json::json!("326"));
    assert_eq!(v["realizability"]["verdict"], serde_json::json!("obstructed"));
    let lam = v["pa"]["dilatation_approx"].as_f64().unwrap();
    assert!((lam - 325.996932515).abs() < 1e-6);

    // byte-for-byte determinism of repeated runs
    let (_, out2, _) = run_in(
        dir.path(),
        &[
            "report",
            "genus5.sq",
            "-w",
            "a2^1*a1^9*b1^-9*b2^-1",
            "-c",
            "gamma.curve",
            "--json",
        ],
    );
    assert_eq!(out, out2);
}

#[test]
fn seed_perturbation_flag_changes_nothing_observable() {
    let dir = workdir();
    run_in(dir.path(), &["examples", "-o", "."]);
    let (code, out, _) = run_in(
        dir.path(),
        &[
            "flux",
            "genus5.sq",
            "-w",
            "a2^1*a1^9*b1^-9*b2^-1",
            "-c",
            "gamma.curve",
            "--seed-perturbation",
            "4096",
        ],
    );
    assert_eq!(code, 0);
    assert!(out.contains("flux = 1/2"));
}

#[test]
fn surface_files_round_trip_through_the_writer() {
    let dir = workdir();
    run_in(dir.path(), &["examples", "-o", "."]);
    for file in ["torus.sq", "genus2_block.sq", "genus5.sq"] {
        let text = std::fs::read_to_string(dir.path().join(file)).unwrap();
        let c = twistflux::SquareComplex::parse(&text).unwrap();
        assert_eq!(c.to_file_string(), text);
    }
    let gamma_text = std::fs::read_to_string(dir.path().join("gamma.curve")).unwrap();
    let trav = twistflux::cli::parse_curve_file(&gamma_text).unwrap();
    assert_eq!(twistflux::cli::curve_file_string(&trav), gamma_text);
}

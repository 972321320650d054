use std::fs;
use std::path::PathBuf;

use qlfsr::circuit::Circuit;
use qlfsr::cli::{run, Outcome};

fn qlfsr(args: &[&str]) -> Outcome {
    run(std::iter::once("qlfsr").chain(args.iter().copied()))
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.
fn check_golden(name: &str, got: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, got).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap();
    assert_eq!(got, want, "output differs from {}", path.display());
}

#[test]
fn example_reports_match_golden() {
    for name in ["steane", "qrs21"] {
        let out = qlfsr(&["example", name]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        check_golden(&format!("{name}_example.txt"), &out.stdout);
    }
}

#[test]
fn netlists_match_golden() {
    let out = qlfsr(&["synth", "encoder", "--code", "steane"]);
    assert_eq!(out.code, 0);
    check_golden("steane_encoder.netlist", &out.stdout);
    let out = qlfsr(&[
        "synth", "shift", "--n", "7", "--k", "1", "--style", "depth6",
    ]);
    assert_eq!(out.code, 0);
    check_golden("shift_7_1_depth6.netlist", &out.stdout);
}

#[test]
fn analyze_reports_parameters() {
    let out = qlfsr(&["analyze", "--code", "qrs21"]);
    assert_eq!(out.code, 0);
    for line in [
        "qecc = [[21,3,5]]",
        "g_perp = 1,a^2,1,a",
        "basis_self_dual = yes",
    ] {
        assert!(out.stdout.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qlfsr(&[]).code, 2);
    assert_eq!(qlfsr(&["example", "golay"]).code, 2);
    assert_eq!(qlfsr(&["analyze", "--n", "7", "--field", "x"]).code, 2);
    // Hamming code: not weakly self-dual.
    assert_eq!(qlfsr(&["analyze", "--n", "7", "--g", "1,1,0,1"]).code, 3);
    // X^2+X+1 does not divide X^4-1.
    assert_eq!(qlfsr(&["analyze", "--n", "4", "--g", "1,1,1"]).code, 3);
    assert_eq!(qlfsr(&["verify", "encode", "--code", "steane"]).code, 0);
}

#[test]
fn stats_flag_and_formats() {
    let out = qlfsr(&[
        "synth", "shift", "--n", "7", "--k", "1", "--style", "depth6", "--stats",
    ]);
    assert!(out.stdout.contains("depth 6"), "{}", out.stdout);
    let json = qlfsr(&["synth", "syndrome", "--code", "steane", "--format", "json"]);
    assert_eq!(json.code, 0);
    let c = Circuit::from_json(&json.stdout).unwrap();
    let net = qlfsr(&["synth", "syndrome", "--code", "steane"]);
    assert_eq!(Circuit::parse_netlist(&net.stdout).unwrap(), c);
    let qasm = qlfsr(&["synth", "encoder", "--code", "steane", "--format", "qasm"]);
    assert!(qasm.stdout.starts_with("OPENQASM 2.0;"), "{}", qasm.stdout);
}

#[test]
fn lfsr_division_example() {
    let out = qlfsr(&[
        "lfsr",
        "run",
        "--mode",
        "div",
        "--g",
        "1,1,0,1",
        "--n",
        "7",
        "--init",
        "0,0,0,0,1",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(
        out.stdout.lines().any(|l| l == "remainder cells = 0 1 1"),
        "{}",
        out.stdout
    );
}

#[test]
fn simulate_roundtrips_through_files() {
    let dir = std::env::temp_dir().join(format!("qlfsr-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shift.netlist");
    let out = qlfsr(&[
        "synth",
        "shift",
        "--n",
        "5",
        "--k",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let sim = qlfsr(&[
        "simulate",
        "--circuit",
        path.to_str().unwrap(),
        "--input",
        "1100000000",
    ]);
    assert_eq!(sim.code, 0, "{}", sim.stderr);
    assert!(sim.stdout.contains("0011000000"), "{}", sim.stdout);
    fs::remove_dir_all(&dir).unwrap();
}

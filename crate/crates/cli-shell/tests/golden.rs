//! Byte-exact golden files for every subcommand. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p cli-shell --test golden`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn infowords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infowords"))
        .current_dir(root())
        .args(["--conventions", "conventions.json"])
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = infowords(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: exit status; stderr:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ext = if args.contains(&"--json") { "json" } else { "txt" };
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.{ext}"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(stdout == want, "{name} differs from {}:\n{stdout}", path.display());
}

#[test]
fn word() {
    golden("word", &["word", "Abba", "--json"], 0);
    golden("word_text", &["word", "a b^-1 a^-1 b^2 a"], 0);
}

#[test]
fn farey() {
    golden("farey_word", &["farey", "word", "2/3", "--json"], 0);
    golden("farey_word_text", &["farey", "word", "2/3"], 0);
    golden("farey_add", &["farey", "add", "1/2", "2/3", "--json"], 0);
    golden("farey_cf", &["farey", "cf", "5/8", "--json"], 0);
    golden("farey_lr", &["farey", "lr", "5/8", "--json"], 0);
}

#[test]
fn fseq() {
    golden("fseq", &["fseq", "{1,2}", "--json"], 0);
    golden("fseq_text", &["fseq", "{2,1,1}"], 0);
}

#[test]
fn polynomials() {
    golden("trace_poly", &["trace-poly", "a a", "--json"], 0);
    golden("trace_poly_text", &["trace-poly", "a a"], 0);
    golden("trace_poly_commutator", &["trace-poly", "a b A B"], 0);
    golden("good_poly", &["good-poly", "a B A b^2 a", "--json"], 0);
    golden("good_product", &["good-product", "A b a", "a B A", "--json"], 0);
}

#[test]
fn discreteness() {
    let modular = ["discrete", "--f", "13,34;8,21", "--g", "1,2;4,9"];
    golden("discrete_modular", &[&modular[..], &["--json"]].concat(), 0);
    golden("discrete_modular_text", &modular, 0);
    golden("discrete_float", &[&modular[..], &["--scalar", "float", "--json"]].concat(), 0);
    golden("discrete_jorgensen", &["discrete", "--f", "11/10,0;0,10/11", "--g", "4,1;-5,-1", "--json"], 0);
    golden("jorgensen", &["jorgensen", "--f", "3,0;0,1/3", "--g", "1,1;1,2", "--json"], 0);
    golden("jorgensen_violated", &["jorgensen", "--f", "11/10,0;0,10/11", "--g", "4,1;-5,-1", "--json"], 0);
}

#[test]
fn killer_grid() {
    golden("killer_grid_ball", &["killer-grid", "--gamma", "-0.4:0.4", "--beta", "-0.4:0.4", "--depth", "3", "--json"], 0);
    golden(
        "killer_grid_modular",
        &["killer-grid", "--gamma", "1/2:3/2", "--beta", "-1/2:1/2", "--depth", "2", "--scalar", "rational", "--json"],
        0,
    );
    golden("killer_grid_text", &["killer-grid", "--gamma", "-1:1", "--beta", "-1:1", "--depth", "3", "--threads", "2"], 0);
}

#[test]
fn killer_grid_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = infowords(&[
        "killer-grid", "--gamma", "-0.5:0.5", "--beta", "-0.5:0.5", "--depth", "2", "--out", path.to_str().unwrap(), "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report["cells"].as_array().unwrap().len() > 1);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["stats"], report["stats"]);
}

#[test]
fn verify_paper() {
    // the good-product identity for F-sequence words fails, so the battery exits 1
    golden("verify_paper", &["verify-paper", "--max-size", "3", "--json"], 1);
    golden("verify_paper_text", &["verify-paper", "--max-size", "1"], 1);
}

#[test]
fn calibrate_check() {
    golden("calibrate_check", &["calibrate", "--check", "--json"], 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["word"][..],
        &["no-such-command"],
        &["word", "a x b"],
        &["farey", "word", "3/2"],
        &["fseq", "1,2"],
        &["discrete", "--f", "2,0;0,1"], // missing --g
        &["discrete", "--f", "2,0;0,1", "--g", "1,1;0,1"], // det 2
        &["killer-grid", "--gamma", "1:0", "--beta", "0:1"],
        &["good-poly", "a b"],
    ] {
        let out = infowords(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let help = infowords(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("verify-paper"));
}

#[test]
fn lockfile_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(root().join("conventions.json")).unwrap();
    let bad = dir.path().join("conventions.json");
    std::fs::write(&bad, good.replace("gamma_h_g", "gamma_f_h")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_infowords"))
        .args(["--conventions", bad.to_str().unwrap(), "trace-poly", "a a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));

    let missing = dir.path().join("none.json");
    let out = Command::new(env!("CARGO_BIN_EXE_infowords"))
        .args(["--conventions", missing.to_str().unwrap(), "word", "a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // calibrate writes a lockfile that later runs accept
    let fresh = dir.path().join("fresh.json");
    let out = Command::new(env!("CARGO_BIN_EXE_infowords"))
        .args(["--conventions", fresh.to_str().unwrap(), "calibrate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&fresh).unwrap(), good);
}

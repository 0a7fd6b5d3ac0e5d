//! End-to-end runs of the binary: exit codes and JSON output shape.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chaincore"))
}

#[test]
fn chain_q8_passes_with_json_round_trip() {
    let out = bin()
        .args(["chain", "--group", "Q8", "--subgroup", "gen:[i]", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let report: chaincore::report::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.command, "chain");
    assert_eq!(
        report.chain.as_ref().unwrap().invariant_factors,
        Some(vec![2])
    );
    // round trip: serialize again and re-parse to the same value
    let again: chaincore::report::Report =
        serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn clifford_non_normal_exits_2() {
    let out = bin()
        .args(["clifford", "--group", "S3", "--subgroup", "gen:[(0 1)]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("normal"), "stderr: {err}");
}

#[test]
fn corrupted_fusion_file_exits_2_naming_the_axiom() {
    let dir = std::env::temp_dir().join("chaincore_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.fusion.json");
    // dims claim 1*1 but the product has dimension 2
    std::fs::write(
        &path,
        r#"{"labels":["1","g"],"dims":[1,1],"unit":0,"dual":[0,1],
            "tensor":[{"v":1,"w":1,"out":[1,1]}]}"#,
    )
    .unwrap();
    let out = bin().arg("fusion").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(err.contains("dimension"), "stderr: {err}");
}

#[test]
fn bundled_c2_file_passes() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/c2.fusion.json");
    let out = bin().arg("fusion").arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("invariant factors: [2]"), "{text}");
}

#[test]
fn group_subcommand_reports_degrees() {
    let out = bin().args(["group", "--group", "SL23"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("degrees: [1, 1, 1, 2, 2, 2, 3]"), "{text}");
}

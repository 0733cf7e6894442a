//! The command-line surface, run in-process.

use clap::Parser;
use superspecial::cli::{main_with_args, run, Cli, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn output(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(args).unwrap();
    let mut buf = Vec::new();
    run(&cli, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn enumerate3_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(
        main_with_args([
            "superspecial",
            "enumerate3",
            "--p",
            "11",
            "--out-dir",
            d,
            "--csv"
        ]),
        EXIT_OK
    );
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    for (k, v) in [
        ("p", 11),
        ("L1", 10),
        ("L2", 1),
        ("L3", 4),
        ("L4", 4),
        ("total", 19),
        ("nodes", 19),
        ("edges", 2565),
    ] {
        assert_eq!(summary[k], v, "{k}");
    }
    assert!(summary["seconds"].is_number());
    assert_eq!(summary["prng"], "ChaCha8Rng::seed_from_u64");
    let curves = std::fs::read_to_string(dir.path().join("curves.jsonl")).unwrap();
    assert_eq!(curves.lines().count(), 11);
    for line in curves.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(rec["key"].is_string() && rec["model"].is_object() && rec["theta"].is_object());
    }
    assert_eq!(
        std::fs::read_to_string(dir.path().join("counts.csv")).unwrap(),
        "p,L1,L2,L3,L4,total\n11,10,1,4,4,19\n"
    );
}

#[test]
fn emitted_curves_verify_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(
        main_with_args(["superspecial", "enumerate3", "--p", "11", "--out-dir", d]),
        EXIT_OK
    );
    let curves = std::fs::read_to_string(dir.path().join("curves.jsonl")).unwrap();
    for line in curves.lines().take(3) {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        let out = output(&[
            "superspecial",
            "verify",
            "--p",
            "11",
            "--curve",
            &rec["model"].to_string(),
        ]);
        assert!(out.ends_with("superspecial: true\n"));
    }
}

#[test]
fn find_hyp_uses_the_shortcut() {
    let out = output(&["superspecial", "find-hyp", "--p", "13"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["family"], "x^7-1");
    assert_eq!(v["superspecial"], true);
    let walk: serde_json::Value = serde_json::from_str(&output(&[
        "superspecial",
        "find-hyp",
        "--p",
        "17",
        "--seed",
        "5",
    ]))
    .unwrap();
    assert_eq!(walk["method"], "walk");
    assert_eq!(walk["rng_seed"], 5);
}

#[test]
fn verify_prints_matrix_and_verdict() {
    let curve = r#"{"type":"hyperelliptic","f":[0,-1,0,0,0,0,0,1]}"#;
    let out = output(&["superspecial", "verify", "--curve", curve, "--p", "11"]);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("superspecial: true"));
    let neg = r#"{"type":"hyperelliptic","f":[-1,0,0,0,0,0,0,1]}"#;
    assert!(
        output(&["superspecial", "verify", "--curve", neg, "--p", "11"])
            .contains("superspecial: false")
    );
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    std::fs::write(&file, curve).unwrap();
    let at = format!("@{}", file.display());
    assert!(
        output(&["superspecial", "verify", "--curve", &at, "--p", "11"])
            .contains("superspecial: true")
    );
}

#[test]
fn export_cosets_lists_all_representatives() {
    assert_eq!(
        output(&["superspecial", "export-cosets", "--g", "2"])
            .lines()
            .count(),
        15
    );
    assert_eq!(
        output(&["superspecial", "export-cosets"]).lines().count(),
        135
    );
}

#[test]
fn enumerate2_reports_genus2_counts() {
    let v: serde_json::Value =
        serde_json::from_str(&output(&["superspecial", "enumerate2", "--p", "19"])).unwrap();
    assert_eq!(
        (v["lambda1"].as_u64(), v["lambda2"].as_u64()),
        (Some(2), Some(7))
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for p in ["7", "9", "1", "abc"] {
        assert_eq!(
            main_with_args(["superspecial", "enumerate3", "--p", p, "--out-dir", d]),
            EXIT_USAGE,
            "p={p}"
        );
    }
    assert_eq!(
        main_with_args(["superspecial", "find-hyp", "--p", "15"]),
        EXIT_USAGE
    );
    assert_eq!(main_with_args(["superspecial", "bogus"]), EXIT_USAGE);
    assert_eq!(
        main_with_args([
            "superspecial",
            "enumerate3",
            "--p",
            "11",
            "--threads",
            "0",
            "--out-dir",
            d
        ]),
        EXIT_USAGE
    );
    assert_eq!(
        main_with_args(["superspecial", "verify", "--p", "11", "--curve", "{"]),
        EXIT_USAGE
    );
    assert_eq!(
        main_with_args([
            "superspecial",
            "verify",
            "--p",
            "11",
            "--curve",
            r#"{"f":[0,0,1,0,0,0,0,1]}"#
        ]),
        EXIT_USAGE
    );
    let ck = dir.path().join("ck.json");
    std::fs::write(&ck, "garbage").unwrap();
    let ck = ck.to_str().unwrap();
    assert_eq!(
        main_with_args([
            "superspecial",
            "enumerate3",
            "--p",
            "11",
            "--checkpoint",
            ck,
            "--out-dir",
            d
        ]),
        EXIT_IO
    );
    assert_eq!(
        main_with_args(["superspecial", "export-cosets", "--g", "4"]),
        EXIT_USAGE
    );
    assert_eq!(
        main_with_args(["superspecial", "find-hyp", "--p", "17", "--max-steps", "0"]),
        1
    );
}

#[test]
fn environment_overrides_flags() {
    std::env::set_var("SSPG3_G", "2");
    let n = output(&["superspecial", "export-cosets"]).lines().count();
    std::env::remove_var("SSPG3_G");
    assert_eq!(n, 15);
}

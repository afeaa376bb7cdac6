use std::path::PathBuf;
use std::process::{Command, Output};

use mftop_cli::{parse_space, serialize_space};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn mftop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mftop"))
        .args(args)
        .env_remove("MFTOP_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_passes_on_valid_documents() {
    for name in ["tau4.json", "symmetric.json", "point.json", "pair_2d.json"] {
        let out = mftop(&["verify", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        assert_eq!(json(&out)["status"], "PASS");
    }
}

#[test]
fn off_chain_grade_is_an_input_error() {
    let out = mftop(&["verify", &fixture("bad_grade.json")]);
    assert_eq!(out.status.code(), Some(65));
    let err = stderr(&out);
    assert!(err.contains("opens[1].a[0]"), "{err}");
    assert!(err.contains("1/3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_null_set_is_reported_as_axiom_failure() {
    let out = mftop(&["verify", &fixture("missing_null.json")]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out);
    assert_eq!(report["status"], "FAIL");
    let detail = report["checks"][0]["detail"].to_string();
    assert!(!report["checks"][0]["detail"]["violations"]
        .as_array()
        .unwrap()
        .is_empty());
    assert!(
        detail.contains("null") || detail.contains("empty"),
        "{detail}"
    );
}

#[test]
fn no_verify_loads_a_non_topology() {
    let out = mftop(&["base", "--no-verify", &fixture("missing_null.json")]);
    assert_ne!(out.status.code(), Some(65), "{}", stderr(&out));
}

#[test]
fn malformed_json_reports_line_and_column() {
    let out = mftop(&["verify", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(65));
    assert!(stderr(&out).contains("line 2 column"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = mftop(&["verify", "/nonexistent/space.json"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(mftop(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(mftop(&["verify"]).status.code(), Some(64));
    assert_eq!(mftop(&["mine", "no-such-check"]).status.code(), Some(64));
    let bad = mftop(&[
        "product",
        &fixture("tau4.json"),
        &fixture("point.json"),
        "--check",
        "nope",
    ]);
    assert_eq!(bad.status.code(), Some(64));
    assert_eq!(mftop(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_variable_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_mftop"))
        .args(["mine", "product-compact", "--budget-ms", "600000"])
        .env("MFTOP_BUDGET_MS", "0")
        .output()
        .unwrap();
    let report = json(&out);
    assert_eq!(report["data"]["mined"]["complete"], false);
    assert_eq!(out.status.code(), Some(2));

    let bad = Command::new(env!("CARGO_BIN_EXE_mftop"))
        .args(["mine", "composition"])
        .env("MFTOP_BUDGET_MS", "soon")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(64));
}

#[test]
fn text_format_lists_checks_and_status() {
    let out = mftop(&["--format", "text", "nbd", &fixture("tau4.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for axiom in ["N1", "N2", "N3", "N4", "N5"] {
        assert!(text.contains(&format!("{axiom}: PASS")), "{text}");
    }
    assert!(text.trim_end().ends_with("status: PASS"));
}

#[test]
fn nbd_of_one_point() {
    let out = mftop(&["nbd", &fixture("tau4.json"), "--point", "b"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let families = report["data"]["families"].as_object().unwrap();
    assert_eq!(families.keys().collect::<Vec<_>>(), ["b"]);
    assert_eq!(
        mftop(&["nbd", &fixture("tau4.json"), "--point", "zz"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn continuity_and_homeomorphism_of_swap() {
    let out = mftop(&["continuity", &fixture("symmetric.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["continuous"], true);
    let out = mftop(&["homeo", &fixture("symmetric.json"), "--map", "swap"]);
    assert_eq!(json(&out)["data"]["homeomorphism"], true);
}

#[test]
fn collapse_to_a_point_across_documents() {
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("tau4.json")).unwrap()).unwrap();
    doc["maps"] = serde_json::json!({"collapse": {"a": "y", "b": "y"}});
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("collapse.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = mftop(&[
        "continuity",
        path.to_str().unwrap(),
        "--codomain",
        &fixture("point.json"),
        "--map",
        "collapse",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["data"]["continuous"], true);
}

#[test]
fn product_and_compact_pass() {
    let out = mftop(&["product", &fixture("tau4.json"), &fixture("point.json")]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = mftop(&["compact", &fixture("pair_2d.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn product_of_mixed_kinds_is_an_input_error() {
    let out = mftop(&["product", &fixture("tau4.json"), &fixture("pair_2d.json")]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn documents_round_trip_through_serialisation() {
    for name in ["tau4.json", "symmetric.json", "point.json", "pair_2d.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let doc = parse_space(&text, true).unwrap();
        let again = serialize_space(&doc);
        let reparsed = parse_space(&again, true).unwrap();
        assert_eq!(reparsed.topology, doc.topology, "{name}");
        assert_eq!(reparsed.maps, doc.maps, "{name}");
        assert_eq!(serialize_space(&reparsed), again, "{name}");
    }
}

#[test]
fn mining_with_dropped_axiom_finds_a_witness() {
    let out = mftop(&["mine", "nbd-roundtrip", "--drop", "N1"]);
    assert_eq!(out.status.code(), Some(2));
    let mined = &json(&out)["data"]["mined"];
    assert!(mined["counterexamples"].as_u64().unwrap() > 0);
    assert!(mined["witness"].is_object());
}

#[test]
fn timing_is_opt_in() {
    let out = mftop(&["verify", &fixture("tau4.json")]);
    assert!(json(&out).get("elapsed_ms").is_none());
    let out = mftop(&["--timing", "verify", &fixture("tau4.json")]);
    assert!(json(&out).get("elapsed_ms").is_some());
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use arrowpencil::grassmann::{build_pencil, PencilSpec, Variant};
use serde_json::Value;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrowpencil"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env("ARROWPENCIL_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn table_csv_agrees_with_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["tables", "--p", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let spec = build_pencil(2, 4, Variant::Arrow).unwrap();
    let expected = arrowpencil::pointcount::table_csv(&arrowpencil::pointcount::count_table(&spec, 13, false).unwrap());
    assert_eq!(fs::read_to_string(dir.path().join("tables_g24_arrow_p13.csv")).unwrap(), expected);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
    let rows = json_file(&dir.path().join("tables_g24_arrow_p13.json"));
    assert_eq!(rows["congruence_holds"], Value::Bool(true));
}

#[test]
fn reruns_reproduce_the_output_digests() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert_eq!(run(dir.path(), &["search", "--p", "7"]).status.code(), Some(0));
        assert_eq!(run(dir.path(), &["hodge", "--rn", "2,4", "--variant", "quads"]).status.code(), Some(0));
    }
    for stem in ["search_p7", "hodge_g24_quads_d4"] {
        let ma = json_file(&a.path().join(format!("{stem}.manifest.json")));
        let mb = json_file(&b.path().join(format!("{stem}.manifest.json")));
        assert_eq!(ma["outputs"], mb["outputs"], "{stem}");
        assert_eq!(ma["parameters"], mb["parameters"]);
        assert!(ma["timings_ms"].as_object().is_some_and(|t| !t.is_empty()));
    }
}

#[test]
fn manifest_digests_match_the_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["tables", "--p", "5"]).status.code(), Some(0));
    let manifest = json_file(&dir.path().join("tables_g24_arrow_p5.manifest.json"));
    assert_eq!(manifest["experiment"], "tables");
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    let outputs = manifest["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), 2);
    for entry in outputs {
        let bytes = fs::read(dir.path().join(entry["file"].as_str().unwrap())).unwrap();
        let hex: String = {
            use sha2::{Digest, Sha256};
            Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
        };
        assert_eq!(entry["sha256"].as_str().unwrap(), hex);
    }
}

#[test]
fn rank_jumps_exit_with_status_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["hodge", "--t", "1,3", "--primes", "2,1073741789", "--no-rational"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("t=1 over 2"), "{stderr}");
    let report = json_file(&dir.path().join("hodge_g24_arrow_d4.json"));
    assert_eq!(report["consensus"]["invariant_dim"], 5);
    assert_eq!(report["consensus"]["bad"].as_array().unwrap().len(), 2);
}

#[test]
fn mismatched_expectations_exit_with_status_two() {
    // characteristic 2 alone is unanimous, but not the generic answer
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["hodge", "--t", "1", "--primes", "2", "--no-rational", "--check"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("invariant dimension 8 (expected 5)"));
}

#[test]
fn search_output_has_decimal_coefficients_and_the_full_scan() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["search", "--p", "11", "--check"]).status.code(), Some(0));
    let body = json_file(&dir.path().join("search_p11.json"));
    let coefficients: Vec<&str> = body["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coefficients, ["1", "0", "12", "0", "492", "0", "32880", "0", "2743020", "0", "257986512"]);
    assert_eq!(body["scan"].as_array().unwrap().len(), 100);
    assert_eq!(body["hw"].as_object().unwrap().len(), 10);
    assert_eq!(body["search_hits"], Value::Array(vec![]));
}

#[test]
fn pencil_output_deserializes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["pencil", "--variant", "squares+quads"]);
    assert_eq!(out.status.code(), Some(0));
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    // six arrow powers, three squares, two quads, then the frozen product
    assert_eq!(value["polynomial"].as_str().unwrap().matches(" + ").count(), 11);
    let spec: PencilSpec = serde_json::from_value(value).unwrap();
    spec.validate().unwrap();
    assert_eq!(spec, build_pencil(2, 4, Variant::SquaresQuads).unwrap());
}

#[test]
fn reference_tables_check() {
    let dir = tempfile::tempdir().unwrap();
    for p in ["5", "7", "11"] {
        let out = run(dir.path(), &["tables", "--p", p, "--check"]);
        assert_eq!(out.status.code(), Some(0), "p={p}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reference_search_check() {
    let dir = tempfile::tempdir().unwrap();
    for p in ["5", "7", "11"] {
        assert_eq!(run(dir.path(), &["search", "--p", p, "--check"]).status.code(), Some(0), "p={p}");
    }
}

#[test]
fn reference_hodge_check() {
    let dir = tempfile::tempdir().unwrap();
    for variant in ["arrow", "squares", "quads", "squares+quads"] {
        let out = run(dir.path(), &["hodge", "--rn", "2,4", "--variant", variant, "--check"]);
        assert_eq!(out.status.code(), Some(0), "{variant}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(dir.path(), &["hodge", "--rn", "2,5", "--t", "2,3,7,13", "--check"]);
    assert_eq!(out.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["invariant_dim"], 11);
    let full = json_file(&dir.path().join("hodge_g25_arrow_d5.json"));
    assert_eq!(full["specializations"].as_array().unwrap().len(), 8);
    assert!(full["notes"][0].as_str().unwrap().contains("H(2,5)"));
    assert!(full["reports"].as_array().unwrap().iter().all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn invariants_listing() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["invariants", "--rn", "2,4"]);
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["count"], 12);
    assert_eq!(value["group"]["order"], 32);
    assert_eq!(value["group"]["structure"], "(Z/4)^2 x Z/2");
}

#[test]
fn invalid_arguments_exit_with_status_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["tables", "--p", "4"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["tables", "--p", "13", "--check"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["hodge", "--rn", "2,5", "--variant", "squares"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["hodge", "--t", "0"]).status.code(), Some(1));
    assert_ne!(run(dir.path(), &["hodge", "--rn", "24"]).status.code(), Some(0));
}

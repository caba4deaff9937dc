mod common;

use common::{fixture, lga, stdout, FIXTURES};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> JSONSchema {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, doc: &str, what: &str) {
    let v: Value = serde_json::from_str(doc).unwrap_or_else(|e| panic!("{what}: {e}"));
    let msgs: Vec<String> = match schema.validate(&v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{what}: {}", msgs.join("; "));
}

#[test]
fn every_json_output_validates() {
    let schema = schema();
    for name in FIXTURES {
        let p = fixture(name);
        let p = p.to_str().unwrap();
        let runs: Vec<Vec<&str>> = vec![
            vec!["analyze", p],
            vec!["analyze", p, "--timing"],
            vec!["ideals", p],
            vec!["oracle", p],
            vec!["check", p, "simple"],
            vec!["check", p, "minimal"],
            vec!["check", p, "cond-l"],
            vec!["check", p, "cond-k"],
            vec!["check", p, "strongly-cofinal"],
            vec!["check", p, "disagreeable"],
        ];
        for mut args in runs {
            args.extend(["--format", "json"]);
            assert_valid(&schema, &stdout(&lga(&args)), &format!("{args:?}"));
        }
    }
}

#[test]
fn corpus_and_error_reports_validate() {
    let schema = schema();
    let p = fixture("T1");
    let o = lga(&["oracle", p.to_str().unwrap(), "--corpus", "10", "--format", "json"]);
    assert_valid(&schema, &stdout(&o), "oracle corpus");
    let o = lga(&["analyze", "/no/such/file.lg", "--format", "json"]);
    assert_valid(&schema, &stdout(&o), "io error");
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let bad = serde_json::json!({"report": "check", "input": {"sha256": "xyz"}, "verdict": {}});
    assert!(!schema.is_valid(&bad));
    let bad = serde_json::json!({"report": "nonsense"});
    assert!(!schema.is_valid(&bad));
}

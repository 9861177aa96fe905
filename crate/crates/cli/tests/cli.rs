//! End-to-end tests of the binary: output schema, exit-code contract,
//! format emitters, and determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn isofib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn isofib_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isofib"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn document_schema_and_inputs_echo() {
    let out = isofib(&["ks", "--tdim", "5"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "ks");
    assert_eq!(doc["inputs"]["tdim"], "5");
    assert_eq!(doc["results"]["partner_dims"], serde_json::json!([4, 8]));
    assert!(doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["pass"] == true));
}

#[test]
fn enumerate_csv_has_four_data_rows_for_mu3() {
    let out = isofib(&["enumerate", "--group", "mu3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 5, "header + 4 data rows:\n{text}");
    assert_eq!(
        lines[0],
        "no,IV,IVstar,genus,components,ramification,type_a"
    );
    assert_eq!(lines[1], "1,6,0,4,1,1^6,false");
    assert_eq!(lines[4], "4,0,3,1,1,2^3,true");
}

#[test]
fn kodaira_markdown_table_shape() {
    let out = isofib(&["table", "kodaira", "--format", "md"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    // header, separator, and exactly the four attribute rows
    assert_eq!(lines.len(), 6);
    let header_cells: Vec<&str> = lines[0]
        .trim_matches('|')
        .split('|')
        .map(str::trim)
        .collect();
    assert_eq!(
        header_cells,
        vec![
            "attribute",
            "I0",
            "In",
            "II",
            "III",
            "IV",
            "I0*",
            "In*",
            "II*",
            "III*",
            "IV*"
        ]
    );
    let attributes: Vec<&str> = lines[2..]
        .iter()
        .map(|l| l.trim_matches('|').split('|').next().unwrap().trim())
        .collect();
    assert_eq!(
        attributes,
        vec!["euler", "monodromy_order", "local_exponent", "lct"]
    );
}

/// JSON round-trip: the rows in the document rebuild exactly the in-memory
/// configuration list.
#[test]
fn enumerate_json_round_trips_to_configs() {
    use isofib::enumfib::{enumerate_configs, FiberConfig};
    use isofib::kodaira::KodairaType;

    for group in ["mu2", "mu3", "mu4", "mu6"] {
        let out = isofib(&["enumerate", "--group", group]);
        assert_eq!(code(&out), 0);
        let doc = json_of(&out);
        let d = doc["results"]["group_order"].as_u64().unwrap() as u32;
        let rows = doc["results"]["rows"].as_array().unwrap();
        let rebuilt: Vec<FiberConfig> = rows
            .iter()
            .map(|row| {
                let counts: Vec<(KodairaType, u32)> = row["counts"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|pair| {
                        let tag: KodairaType =
                            pair[0].as_str().unwrap().parse().expect("valid tag");
                        (tag, pair[1].as_u64().unwrap() as u32)
                    })
                    .collect();
                FiberConfig::new(d, &counts).expect("valid configuration")
            })
            .collect();
        assert_eq!(rebuilt, enumerate_configs(d, 24).unwrap(), "{group}");
    }
}

#[test]
fn repcheck_pauli_passes_and_abelian_fails() {
    let out = isofib(&["repcheck", "--group", "pauli"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert!(doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["pass"] == true));
    assert_eq!(doc["results"]["lemma"]["pass"], true);

    let out = isofib(&["repcheck", "--group", "abelian:2:2"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["lemma"]["pass"], false);
    assert_eq!(doc["results"]["lemma"]["first_violation"]["value"], 2);
}

#[test]
fn golden_mu4_fails_with_three_genus_verdicts() {
    let out = isofib(&["enumerate", "--group", "mu4", "--golden"]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    let failing: Vec<&Value> = doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["pass"] == false)
        .collect();
    assert_eq!(failing.len(), 3);
    for v in &failing {
        assert!(v["check"].as_str().unwrap().starts_with("genus row"));
        assert_eq!(v["expected"], 5);
    }

    // the allowlist downgrades exactly these three to warnings
    let out = isofib(&[
        "enumerate",
        "--group",
        "mu4",
        "--golden",
        "--allow-known-discrepancies",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["warnings"].as_array().unwrap().len(), 3);
}

#[test]
fn golden_mu2_mu3_mu6_pass() {
    for group in ["mu2", "mu3", "mu6"] {
        let out = isofib(&["enumerate", "--group", group, "--golden"]);
        assert_eq!(code(&out), 0, "{group}");
    }
}

#[test]
fn golden_path_flag_reads_local_file() {
    // a doctored golden file must produce a failing verdict
    let table = r#"{
        "table": "table2", "group_order": 3, "types": ["IV", "IVstar"],
        "rows": [
            {"no": 1, "counts": [6, 0], "ramification": [[1, 6]], "genus": 99,
             "components": 1, "annotation": "-", "oracle_genus": 4},
            {"no": 2, "counts": [4, 1], "ramification": [[1, 4], [2, 1]], "genus": 3,
             "components": 1, "annotation": "-", "oracle_genus": 3},
            {"no": 3, "counts": [2, 2], "ramification": [[1, 2], [2, 2]], "genus": 2,
             "components": 1, "annotation": "-", "oracle_genus": 2},
            {"no": 4, "counts": [0, 3], "ramification": [[2, 3]], "genus": 1,
             "components": 1, "annotation": "-", "oracle_genus": 1}
        ]
    }"#;
    let dir = std::env::temp_dir().join("isofib-golden-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("doctored.json");
    std::fs::write(&path, table).unwrap();
    let out = isofib(&[
        "enumerate",
        "--group",
        "mu3",
        "--golden",
        "--golden-path",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let doc = json_of(&out);
    let failing: Vec<String> = doc["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["pass"] == false)
        .map(|v| v["check"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failing, vec!["genus row 1"]);

    // malformed golden file
    std::fs::write(&path, "{").unwrap();
    let out = isofib(&[
        "enumerate",
        "--group",
        "mu3",
        "--golden",
        "--golden-path",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_errors_exit_2_and_list_valid_values() {
    let out = isofib(&["enumerate", "--group", "mu5"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("mu2, mu3, mu4, mu6"), "{err}");

    let out = isofib(&["repcheck", "--group", "dihedral:8"]);
    assert_eq!(code(&out), 2);

    let out = isofib(&["nonsense"]);
    assert_eq!(code(&out), 2);

    let out = isofib(&["monodromy"]);
    assert_eq!(code(&out), 2);

    let out = isofib(&["repcheck", "--group", "pauli", "--format", "csv"]);
    assert_eq!(code(&out), 2, "repcheck is json-only");

    let out = isofib(&["genus", "--degree", "6", "--exponents", "1,1"]);
    assert_eq!(code(&out), 2, "exponent sum not divisible by degree");
}

#[test]
fn order_cap_env_override() {
    let out = isofib_env(
        &["repcheck", "--group", "sym:4"],
        "ISOFIB_GROUP_ORDER_CAP",
        "10",
    );
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("group too large"), "{err}");

    let out = isofib_env(
        &["repcheck", "--group", "sym:4"],
        "ISOFIB_GROUP_ORDER_CAP",
        "1000",
    );
    assert_eq!(code(&out), 0);
}

#[test]
fn genus_command_values() {
    let out = isofib(&["genus", "--degree", "6", "--exponents", "2,5,5"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["genus_per_component"], 2);
    assert_eq!(doc["results"]["components"], 1);

    let out = isofib(&["genus", "--degree", "6", "--exponents", "3,3,3,3"]);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["components"], 3);
    assert_eq!(doc["results"]["genus_display"], "1 (x3)");
}

#[test]
fn classify_and_canonical_documents() {
    let out = isofib(&["classify", "--dim", "2"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    let candidates = doc["results"]["candidates"].as_array().unwrap();
    assert_eq!(candidates.len(), 6);
    assert!(candidates
        .iter()
        .any(|c| c["group"] == "pauli" && c["admitted"] == false));

    let out = isofib(&["classify", "--dim", "1"]);
    assert_eq!(code(&out), 2);

    let out = isofib(&["canonical", "--dim", "5", "--component", "I0star:12"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["residual"], "0/1");
    assert_eq!(doc["results"]["type"], "A");

    // generic Hilbert-scheme check via explicit coefficients
    let out = isofib(&[
        "canonical",
        "--dim",
        "3",
        "--explicit",
        "1/12:24",
        "--explicit",
        "1/2:4:2",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["residual"], "0/1");
    assert!(doc["results"]["divisor_comparison_unavailable"].is_string());

    // a residual that does not vanish fails the verdict
    let out = isofib(&["canonical", "--dim", "1", "--component", "I0star:3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn lift_from_golden_row() {
    let out = isofib(&["canonical", "--dim", "3", "--lift-from", "mu3:row1"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["residual"], "0/1");
    assert_eq!(doc["results"]["type"], "B"); // six IV fibers are not star type

    let out = isofib(&["canonical", "--dim", "3", "--lift-from", "mu3:row9"]);
    assert_eq!(code(&out), 2); // no such row
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["enumerate", "--group", "mu6", "--golden"],
        vec!["repcheck", "--group", "wreath:3:2"],
        vec!["table", "kodaira", "--format", "csv"],
        vec!["classify", "--dim", "4"],
    ] {
        let a = isofib(&args);
        let b = isofib(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn groups_command_reports_order_and_dimension() {
    let out = isofib(&["groups", "--spec", "wreath:6:2"]);
    assert_eq!(code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["results"]["order"], 72);
    assert_eq!(doc["results"]["rep_dim"], 2);
    assert_eq!(doc["results"]["identity_character"]["conductor"], 12);
    assert_eq!(
        doc["results"]["identity_character"]["coeffs"],
        serde_json::json!(["2/1", "0/1", "0/1", "0/1"])
    );
}

//! End-to-end tests of the `solvco` binary: exit codes, output documents,
//! determinism, and the regenerated reference artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use solvco_cli::document::{canonical_form, ResultDocument};

const N3: &str = r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]]}"#;
const N4: &str = r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"], ["0"]]}"#;
const PRODUCT11: &str = r#"{"kind": "product", "n": 1, "m": 1}"#;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_solvco"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_descriptor(dir: &Path, content: &str) -> PathBuf {
    let path = dir.join("descriptor.json");
    fs::write(&path, content).unwrap();
    path
}

#[test]
fn betti_reproduces_the_reference_columns() {
    let dir = tempfile::tempdir().unwrap();
    for (descriptor, expected) in [
        (N3, vec![1, 2, 5, 8, 5, 2, 1]),
        (PRODUCT11, vec![1, 4, 10, 20, 26, 20, 10, 4, 1]),
    ] {
        let path = write_descriptor(dir.path(), descriptor);
        let out = run(&["betti", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        let betti: Vec<u64> = v["betti"]["table"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        let expected: Vec<u64> = expected.into_iter().map(|x: i32| x as u64).collect();
        assert_eq!(betti, expected);
        assert_eq!(v["betti"]["baseline"], v["betti"]["table"]);
        assert_eq!(v["betti"]["routes_agree"], Value::Bool(true));
    }
}

#[test]
fn betti_markdown_mirrors_the_reference_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), N3);
    let out = run(&["betti", path.to_str().unwrap(), "--format", "md"]);
    assert_eq!(code(&out), 0);
    let md = stdout(&out);
    assert!(md.contains("| degree | generators | b_k |"), "{md}");
    for b in ["| 0 | 1 | 1 |", "| 6 |"] {
        assert!(md.contains(b), "missing {b:?} in:\n{md}");
    }
    // The b_k column reads 1, 2, 5, 8, 5, 2, 1 top to bottom.
    let column: Vec<String> = md
        .lines()
        .filter(|l| l.starts_with("| ") && !l.contains("degree") && !l.contains("---"))
        .map(|l| l.rsplit('|').nth(1).unwrap().trim().to_string())
        .collect();
    assert_eq!(column, ["1", "2", "5", "8", "5", "2", "1"]);
}

#[test]
fn betti_emits_the_hodge_comparison_for_products() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), PRODUCT11);
    let out = run(&["betti", path.to_str().unwrap(), "--format", "json", "--degree", "0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let hodge = &v["hodge"];
    assert_eq!(hodge["basis_count"][1][1], 16);
    assert_eq!(hodge["printed"][1][1], 8);
    assert_eq!(hodge["basis_count"][3][1], 16);
    assert_eq!(hodge["printed"][3][1], 16);
    assert_eq!(hodge["basis_count"][2][2], 36);
    assert_eq!(
        hodge["discrepancies"],
        serde_json::json!([[1, 1], [1, 2], [2, 1]])
    );
    // Edge row h^{p,0} = C(4, p).
    for (p, expect) in [(0, 1), (1, 4), (2, 6), (3, 4), (4, 1)] {
        assert_eq!(hodge["basis_count"][p][0], expect);
    }
}

#[test]
fn malformed_input_exits_2_naming_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    for (content, needle) in [
        (
            r#"{"kind": "generalized_nakamura", "weights": [["1/0"], ["-1"]]}"#,
            "weights[0][0]",
        ),
        (r#"{"kind": "generalized_nakamura", "weights": [["1"], ["-1"]], "zzz": 1}"#, "unknown field"),
        (r#"{"kind": "torus"}"#, "kind"),
        (r#"{"kind": "product", "n": 1}"#, "field m"),
        ("{not json", "schema"),
    ] {
        let path = write_descriptor(dir.path(), content);
        let out = run(&["betti", path.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{content}");
        assert!(
            stderr(&out).contains(needle),
            "{content}: stderr = {}",
            stderr(&out)
        );
    }
    // Unreadable descriptor path.
    let out = run(&["betti", "/nonexistent/descriptor.json"]);
    assert_eq!(code(&out), 2);
    // Out-of-range degree.
    let path = write_descriptor(dir.path(), N3);
    let out = run(&["betti", path.to_str().unwrap(), "--degree", "7"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("degree"));
    // Usage errors (clap) are input errors too.
    let out = run(&[]);
    assert_eq!(code(&out), 2);
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn hlc_default_forms_hold_on_the_reference_models() {
    let dir = tempfile::tempdir().unwrap();
    for descriptor in [N3, N4, PRODUCT11] {
        let path = write_descriptor(dir.path(), descriptor);
        let out = run(&["hlc", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code(&out), 0, "{descriptor}: {}", stderr(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["hlc"]["holds"], Value::Bool(true));
        let n = v["hlc"]["per_k"].as_array().unwrap().len();
        assert_eq!(n, if descriptor == N3 { 3 } else { 4 });
    }
}

#[test]
fn hlc_example_53_preset_holds_and_is_product_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), PRODUCT11);
    let out = run(&[
        "hlc",
        path.to_str().unwrap(),
        "--omega",
        "example-5.3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["hlc"]["holds"], Value::Bool(true));
    assert_eq!(v["hlc"]["source"], "example-5.3");
    // The rendered ω carries the character twist.
    assert!(v["hlc"]["omega"].as_str().unwrap().contains("e^{λ("));

    let path = write_descriptor(dir.path(), N3);
    let out = run(&["hlc", path.to_str().unwrap(), "--omega", "example-5.3"]);
    assert_eq!(code(&out), 2, "preset inapplicable to this family");
}

#[test]
fn hlc_zero_coefficient_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor =
        r#"{"kind": "product", "n": 1, "m": 1, "symplectic": {"base": ["0", "1"]}}"#;
    let path = write_descriptor(dir.path(), descriptor);
    let out = run(&["hlc", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("C_1"), "{}", stderr(&out));

    // Inline overrides go through the same constraint checks.
    let path = write_descriptor(dir.path(), PRODUCT11);
    let out = run(&[
        "hlc",
        path.to_str().unwrap(),
        "--omega",
        r#"{"fibers": [["0", "0"]]}"#,
    ]);
    assert_eq!(code(&out), 3);

    // A model whose weights admit no pairing has no invariant form at all.
    let path = write_descriptor(
        dir.path(),
        r#"{"kind": "generalized_nakamura", "weights": [["1"], ["1"], ["-2"]]}"#,
    );
    let out = run(&["hlc", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn hlc_inline_overrides_and_lattice_reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = r#"{"kind": "product", "n": 1, "m": 1,
        "lattice": {"periods": [1, 2], "matrix": [[1, 1], [1, 2]]}}"#;
    let path = write_descriptor(dir.path(), descriptor);
    let out = run(&[
        "hlc",
        path.to_str().unwrap(),
        "--omega",
        r#"{"base": ["2", "1"], "fibers": [["0", "1"]]}"#,
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["hlc"]["holds"], Value::Bool(true));
    assert_eq!(v["hlc"]["source"], "inline");
    assert_eq!(v["reports"]["lattice"]["periods"]["all_trivial"], true);
    assert_eq!(v["reports"]["lattice"]["matrix"]["determinant"], "1");
    assert_eq!(
        v["reports"]["lattice"]["matrix"]["char_poly_display"],
        "x^2 - 3x + 1"
    );
    // Lossless round trip through the typed document.
    let doc: ResultDocument = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(text, again);
}

#[test]
fn identical_requests_are_byte_identical_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), PRODUCT11);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out_dir in [&out_a, &out_b] {
        let out = run(&[
            "betti",
            path.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let json_a = fs::read_to_string(out_a.join("betti.json")).unwrap();
    let json_b = fs::read_to_string(out_b.join("betti.json")).unwrap();
    assert_eq!(
        canonical_form(&json_a).unwrap(),
        canonical_form(&json_b).unwrap()
    );
    // Markdown carries no timing at all.
    assert_eq!(
        fs::read_to_string(out_a.join("betti.md")).unwrap(),
        fs::read_to_string(out_b.join("betti.md")).unwrap()
    );
}

#[test]
fn parallel_runs_return_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), N4);
    let serial = run(&["betti", path.to_str().unwrap(), "--format", "json"]);
    let parallel = run(&[
        "betti",
        path.to_str().unwrap(),
        "--format",
        "json",
        "--parallel",
        "2",
    ]);
    assert_eq!(code(&serial), 0);
    assert_eq!(code(&parallel), 0);
    assert_eq!(
        canonical_form(&stdout(&serial)).unwrap(),
        canonical_form(&stdout(&parallel)).unwrap()
    );
    let out = run(&["betti", path.to_str().unwrap(), "--parallel", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn the_degree_cap_is_honored_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_descriptor(dir.path(), N3);
    let out = run_env(
        &["betti", path.to_str().unwrap()],
        &[("SOLVCO_MAX_DEGREE_DIM", "2")],
    );
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("SOLVCO_MAX_DEGREE_DIM"), "{}", stderr(&out));
}

#[test]
fn examples_regenerate_deterministic_reference_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out_dir in [&out_a, &out_b] {
        let out = run(&["examples", out_dir.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let expected_files = [
        "table1.md",
        "table2.md",
        "table3.md",
        "figure1.json",
        "example51.json",
        "example52.json",
        "example53.json",
        "example53.md",
        "example54.json",
        "structure_identities.json",
        "index.md",
    ];
    for name in expected_files {
        let a = fs::read(out_a.join(name)).unwrap_or_else(|_| panic!("missing {name}"));
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} not byte-identical across runs");
    }

    // Spot checks on the content.
    let table1 = fs::read_to_string(out_a.join("table1.md")).unwrap();
    assert!(table1.contains("b = (1, 2, 5, 8, 5, 2, 1)"), "{table1}");
    let table2 = fs::read_to_string(out_a.join("table2.md")).unwrap();
    assert!(table2.contains("b = (1, 4, 10, 20, 26, 20, 10, 4, 1)"));
    let table3 = fs::read_to_string(out_a.join("table3.md")).unwrap();
    assert!(table3.contains("b = (1, 4, 10, 20, 26, 20, 10, 4, 1)"));

    let figure1: Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("figure1.json")).unwrap()).unwrap();
    assert_eq!(figure1["discrepancies"], serde_json::json!([[1, 1], [1, 2], [2, 1]]));
    let flagged: Vec<&Value> = figure1["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["discrepancy"].as_bool().unwrap())
        .collect();
    assert_eq!(flagged.len(), 3);
    assert_eq!(flagged[0]["basis_count"], 16);
    assert_eq!(flagged[0]["printed"], 8);
    // Degree 1 witnesses the naive-count excess 8 > 4.
    assert_eq!(figure1["degree_sums"][1]["hodge_sum"], 8);
    assert_eq!(figure1["degree_sums"][1]["betti"], 4);
    assert_eq!(figure1["degree_sums"][1]["exceeds"], true);

    let ex52: Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("example52.json")).unwrap()).unwrap();
    assert!(ex52["all_verified"].as_bool().unwrap());
    assert_eq!(ex52["generators"]["g1_prime"]["translation"][0][0], "1/2-1/10√5");
    assert_eq!(ex52["generators"]["g1_prime"]["translation"][1][0], "1/2+1/10√5");
    assert_eq!(ex52["generators"]["g1_prime"]["translation"][2][0], "0");
    assert_eq!(ex52["char_poly_display"], "x^3 - 4x^2 + 4x - 1");

    let ex53: Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("example53.json")).unwrap()).unwrap();
    assert!(ex53["cube_consistent"].as_bool().unwrap());
    assert_eq!(ex53["lefschetz_rows"].as_array().unwrap().len(), 8);

    let ex54: Value =
        serde_json::from_str(&fs::read_to_string(out_a.join("example54.json")).unwrap()).unwrap();
    assert!(ex54["factor_square_matches"].as_bool().unwrap());
    assert!(ex54["cofactor_agrees"].as_bool().unwrap());
    assert_eq!(ex54["char_poly_display"], "x⁴ - 8x³ + 18x² - 8x + 1");

    let ids: Value = serde_json::from_str(
        &fs::read_to_string(out_a.join("structure_identities.json")).unwrap(),
    )
    .unwrap();
    assert!(ids["deformed_family"][0]["all_verified"].as_bool().unwrap());
    assert!(ids["integrable_controls"][0]["integrable"].as_bool().unwrap());
}

//! End-to-end tests of the `schubsplit` binary: every subcommand, the
//! documented exit-code contract (0 split/pass, 1 non-split/fail,
//! 2 error), and the shipped example files.

use std::fs;
use std::process::Command;

use schubsplit_cli::bundlefile::{BundleFile, WedgeFile};

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_schubsplit"))
        .args(args)
        .output()
        .expect("binary launches");
    Run {
        status: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        stderr: String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    }
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn roots_reports_counts_and_minuscule_nodes() {
    let r = run(&["roots", "A", "3"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stdout.contains("root system A3: rank 3, 6 positive roots"));
    assert!(r.stdout.contains("minuscule nodes: 1, 2, 3"));
    assert!(r.stdout.contains("Cartan matrix:"));

    let r = run(&["roots", "E", "7"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("63 positive roots"));
    assert!(r.stdout.contains("minuscule nodes: 7"));
}

#[test]
fn roots_rejects_unsupported_systems() {
    for args in [["roots", "E", "8"], ["roots", "F", "4"], ["roots", "G", "2"]] {
        let r = run(&args);
        assert_eq!(r.status, 2, "{:?}", args);
        assert!(r.stderr.contains("unsupported type"), "{}", r.stderr);
    }
}

#[test]
fn roots_json_is_machine_readable() {
    let r = run(&["roots", "B", "4", "--json"]);
    assert_eq!(r.status, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(value["label"], "B4");
    assert_eq!(value["positive_roots"], 16);
    assert_eq!(value["minuscule_nodes"], serde_json::json!([4]));
    assert_eq!(value["cartan_matrix"][2][3], -2);
    assert_eq!(value["cartan_matrix"][3][2], -1);
}

#[test]
fn hasse_text_shows_levels() {
    let r = run(&["hasse", "A", "2", "1"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("coset poset A2/1: 3 elements, dimension 2"));
    assert!(r.stdout.contains("level 0: e"));
    assert!(r.stdout.contains("level 1: s1"));
    assert!(r.stdout.contains("level 2: s2 s1"));
    assert!(r.stdout.contains("cover edges: 2,"));

    let r = run(&["hasse", "A", "3", "2"]);
    assert!(r.stdout.contains("6 elements, dimension 4"));

    let r = run(&["hasse", "E", "6", "6"]);
    assert!(r.stdout.contains("27 elements, dimension 16"));
}

#[test]
fn hasse_dot_emits_a_digraph() {
    let r = run(&["hasse", "A", "2", "1", "--dot"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.starts_with("digraph \"A2/1\" {"));
    assert!(r.stdout.contains("v0 [label=\"e\\n(dim 2, codim 0)\"];"));
    assert!(r.stdout.contains("v2 [label=\"s2 s1\\n(dim 0, codim 2)\"];"));
    assert!(r.stdout.contains("v0 -> v1;"));
    assert!(r.stdout.contains("v1 -> v2;"));
    assert!(r.stdout.trim_end().ends_with('}'));
    assert_eq!(r.stdout.matches("->").count(), 2);
}

#[test]
fn hasse_json_lists_vertices_and_edges() {
    let r = run(&["hasse", "A", "3", "2", "--json"]);
    assert_eq!(r.status, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(value["size"], 6);
    assert_eq!(value["dimension"], 4);
    assert_eq!(value["vertices"][0]["display"], "e");
    assert_eq!(value["edges"].as_array().expect("array").len(), 6);
}

#[test]
fn hasse_guards_nodes() {
    let r = run(&["hasse", "C", "3", "3"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("not minuscule"), "{}", r.stderr);
    assert!(r.stderr.contains("--allow-nonminuscule"));

    let r = run(&["hasse", "C", "3", "3", "--allow-nonminuscule"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("8 elements, dimension 6"));

    let r = run(&["hasse", "A", "3", "9"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("invalid node 9"), "{}", r.stderr);
}

#[test]
fn pieri_coefficients_match_the_minuscule_bound() {
    let r = run(&["pieri", "A", "4", "2"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("maximum coefficient: 1"), "{}", r.stdout);
    assert!(!r.stdout.contains("2*["));

    let r = run(&["pieri", "C", "2", "2", "--allow-nonminuscule"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("maximum coefficient: 2"), "{}", r.stdout);
    assert!(r.stdout.contains("2*["), "{}", r.stdout);

    let r = run(&["pieri", "C", "2", "2"]);
    assert_eq!(r.status, 2);
}

#[test]
fn pieri_json_reports_products() {
    let r = run(&["pieri", "C", "3", "3", "--allow-nonminuscule", "--json"]);
    assert_eq!(r.status, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(value["max_coefficient"], 2);
    let products = value["products"].as_array().expect("array");
    assert_eq!(products.len(), 8);
    // the fundamental class times the divisor is the divisor
    assert_eq!(products[0]["terms"][0]["coeff"], 1);
}

#[test]
fn x2_classifies_both_shapes() {
    let r = run(&["x2", "A", "4", "2"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("verdict: P2 wedge P2 along line"));
    assert!(r.stdout.contains("intersection: ["));

    let r = run(&["x2", "E", "7", "7"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("space dimension 27"));
    assert!(r.stdout.contains("verdict: P2"));
    assert!(r.stdout.contains("intersection: (single class)"));

    let r = run(&["x2", "D", "4", "1", "--json"]);
    assert_eq!(r.status, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(value["verdict"], "P2");
    assert_eq!(value["dimension"], 6);
    assert_eq!(value["degrees"], serde_json::json!([1]));

    let r = run(&["x2", "C", "3", "3"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("not minuscule"));
}

#[test]
fn table_recomputes_and_passes() {
    let r = run(&["table"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stdout.contains("9 families checked: all PASS"), "{}", r.stdout);
    for family in ["P(n-1)", "Gr(k,n)", "S_n", "Q4", "Q_2n,", "OP2", "Freudenthal", "Q5", "Q_2n+1"] {
        assert!(r.stdout.contains(family), "missing {family}: {}", r.stdout);
    }
    assert!(r.stdout.contains("B3/1 -> D3/1"), "{}", r.stdout);
}

#[test]
fn table_variety_selects_one_family() {
    let r = run(&["table", "--variety", "OP2"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("X2 = P2,"), "{}", r.stdout);
    assert!(r.stdout.contains("result: PASS"));

    let r = run(&["table", "--variety", "Q4"]);
    assert_eq!(r.status, 0);
    assert!(r.stdout.contains("P2 wedge P2"), "{}", r.stdout);
    assert!(r.stdout.contains("wedge test"));

    let r = run(&["table", "--variety", "Gr(k,n)"]);
    assert_eq!(r.status, 0);

    let r = run(&["table", "--variety", "Nope"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("known families"), "{}", r.stderr);
}

#[test]
fn table_json_serializes_rows() {
    let r = run(&["table", "--json"]);
    assert_eq!(r.status, 0);
    let rows: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    let rows = rows.as_array().expect("array");
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|row| row["pass"] == true));
}

#[test]
fn split_p2_verdicts_and_exit_codes() {
    let r = run(&["split-p2", &fixture("split_sum.json")]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), r#"{"verdict":"split","twists":[1,0]}"#);

    let r = run(&["split-p2", &fixture("euler_kernel.json")]);
    assert_eq!(r.status, 1);
    assert_eq!(
        r.stdout.trim(),
        r#"{"verdict":"non-split","h1_end":3,"certificate":"h1(End(V)(-1)) = 3"}"#
    );

    let r = run(&["split-p2", &fixture("tangent_cokernel.json")]);
    assert_eq!(r.status, 1);
}

#[test]
fn split_p2_honors_the_cutoff_cap() {
    let r = run(&["split-p2", &fixture("euler_kernel.json"), "--max-cutoff", "1"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("cutoff exhausted"), "{}", r.stderr);
}

#[test]
fn split_p2_rejects_malformed_input_with_positions() {
    let dir = std::env::temp_dir();
    let path = dir.join("schubsplit_cli_test_malformed.json");
    fs::write(
        &path,
        r#"{
  "variables": 3,
  "kind": "kernel",
  "source_twists": [0, 0, 0],
  "target_twists": [1],
  "matrix": [["x", "y", "z +"]]
}"#,
    )
    .expect("temp file written");
    let r = run(&["split-p2", path.to_str().expect("utf-8 path")]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("row 1, column 3"), "{}", r.stderr);
    assert!(r.stderr.contains("character"), "{}", r.stderr);
    fs::remove_file(&path).ok();

    let path = dir.join("schubsplit_cli_test_bad_json.json");
    fs::write(&path, "{ not json").expect("temp file written");
    let r = run(&["split-p2", path.to_str().expect("utf-8 path")]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("line 1"), "{}", r.stderr);
    fs::remove_file(&path).ok();

    let r = run(&["split-p2", "/nonexistent/nowhere.json"]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("cannot read"), "{}", r.stderr);
}

#[test]
fn split_wedge_spec_examples_at_seed_zero() {
    let r = run(&["split-wedge", &fixture("wedge_constant.json")]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), r#"{"verdict":"split","twists":[0,0]}"#);

    let r = run(&["split-wedge", &fixture("wedge_euler_component.json")]);
    assert_eq!(r.status, 1);
    assert!(
        r.stdout.contains(r#""verdict":"non-split""#),
        "{}",
        r.stdout
    );
    assert!(
        r.stdout.contains("right component fails the plane test"),
        "{}",
        r.stdout
    );

    let r = run(&["split-wedge", &fixture("wedge_triangular.json")]);
    assert_eq!(r.status, 0);
    assert_eq!(r.stdout.trim(), r#"{"verdict":"split","twists":[2,0]}"#);
}

#[test]
fn split_wedge_verdict_is_seed_independent() {
    for seed in ["1", "42", "18446744073709551615"] {
        let r = run(&["split-wedge", &fixture("wedge_triangular.json"), "--seed", seed]);
        assert_eq!(r.status, 0, "seed {seed}: {}", r.stderr);
        assert_eq!(r.stdout.trim(), r#"{"verdict":"split","twists":[2,0]}"#);
    }
}

#[test]
fn bott_closed_form_and_file_mode() {
    let r = run(&["bott", "-5"]);
    assert_eq!(r.status, 0);
    assert_eq!(r.stdout.trim(), "O(-5) on the plane: h = [0, 0, 6]");

    let r = run(&["bott", "2"]);
    assert_eq!(r.stdout.trim(), "O(2) on the plane: h = [6, 0, 0]");

    let r = run(&["bott", "0", "--file", &fixture("euler_kernel.json"), "--json"]);
    assert_eq!(r.status, 0);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).expect("valid JSON");
    assert_eq!(value["h"], serde_json::json!([0, 0, 0]));
    assert!(value["cutoff"].is_i64(), "certificate present: {value}");

    let r = run(&["bott", "-1", "--file", &fixture("euler_kernel.json")]);
    assert!(r.stdout.contains("h = [0, 1, 0]"), "{}", r.stdout);
    assert!(r.stdout.contains("certified at cutoff"), "{}", r.stdout);
}

#[test]
fn shipped_bundle_files_round_trip() {
    for name in ["split_sum.json", "euler_kernel.json", "tangent_cokernel.json"] {
        let text = fs::read_to_string(fixture(name)).expect("fixture readable");
        let file: BundleFile = serde_json::from_str(&text).expect("fixture parses");
        let complex = file.to_complex().expect("fixture is a valid presentation");
        let back = BundleFile::from_complex(&complex).expect("two-term");
        assert_eq!(back, file, "canonical form drifted for {name}");
        assert_eq!(
            back.to_complex().expect("round-tripped presentation parses"),
            complex,
            "in-memory value drifted for {name}"
        );
        let reparsed: BundleFile =
            serde_json::from_str(&serde_json::to_string(&back).expect("serializes"))
                .expect("reparses");
        assert_eq!(reparsed, back);
    }
}

#[test]
fn shipped_wedge_files_round_trip() {
    for name in [
        "wedge_constant.json",
        "wedge_euler_component.json",
        "wedge_triangular.json",
    ] {
        let text = fs::read_to_string(fixture(name)).expect("fixture readable");
        let file: WedgeFile = serde_json::from_str(&text).expect("fixture parses");
        file.to_wedge().expect("fixture is a valid wedge datum");
        let reparsed: WedgeFile =
            serde_json::from_str(&serde_json::to_string(&file).expect("serializes"))
                .expect("reparses");
        assert_eq!(reparsed, file, "JSON round trip drifted for {name}");
    }
}

#[test]
fn wedge_validation_failures_exit_2() {
    let dir = std::env::temp_dir();
    let path = dir.join("schubsplit_cli_test_bad_wedge.json");
    // rank-2 left component against rank-1 right component
    fs::write(
        &path,
        r#"{
  "left": {
    "variables": 3, "kind": "kernel",
    "source_twists": [0, 0], "target_twists": [], "matrix": []
  },
  "right": {
    "variables": 3, "kind": "kernel",
    "source_twists": [0], "target_twists": [], "matrix": []
  },
  "gluing": [["1", "0"]]
}"#,
    )
    .expect("temp file written");
    let r = run(&["split-wedge", path.to_str().expect("utf-8 path")]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains("ranks differ"), "{}", r.stderr);
    fs::remove_file(&path).ok();
}

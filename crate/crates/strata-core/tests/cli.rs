//! End-to-end checks of the strata binary: pinned outputs, exit codes,
//! error shapes, and byte determinism.

use std::io::Write;
use std::process::{Command, Output};

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("strata-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn rt_enum_2_prints_the_three_types_in_order() {
    let out = strata(&["rt", "enum", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "[(2,1)]\n[(1,1),(1,1)]\n[(1,2)]\n");
}

#[test]
fn rt_dim_pinned_example() {
    let out = strata(&["rt", "dim", "[(2,1)]", "--l", "0", "--r", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "5\n");
}

#[test]
fn rt_rigidity_4_prints_ok_with_certificate() {
    let out = strata(&["rt", "rigidity", "4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OK"));
    // one certificate line per element of RT_4
    assert_eq!(lines.count(), 11);
}

#[test]
fn rt_leq_dual_and_aut() {
    let out = strata(&["rt", "leq", "[(1,1),(1,1)]", "[(2,1)]"]);
    assert_eq!(stdout_of(&out), "true\n");
    let out = strata(&["rt", "leq", "[(2,1)]", "[(1,1),(1,1)]"]);
    assert_eq!(stdout_of(&out), "false\n");
    let out = strata(&["rt", "dual", "[(2,1)]"]);
    assert_eq!(stdout_of(&out), "[(1,2)]\n");
    let out = strata(&["rt", "aut", "4"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("order 2\nid\n"));
    assert!(text.contains("[(2,1),(1,2)]"));
}

#[test]
fn usage_errors_exit_2() {
    let out = strata(&["rt", "leq", "bogus", "[(2,1)]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("invalid type"));
    assert!(stdout_of(&out).is_empty());

    let out = strata(&["rt", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = strata(&["classify", "/nonexistent/tuple.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1_with_json_object() {
    let out = strata(&["rt", "enum", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_dimension");
    assert!(err["error"]["message"].is_string());

    let out = strata(&["rt", "dim", "[(2,1)]", "--l", "0", "--r", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "rank_too_small");

    let rot = write_temp(
        "rotation.json",
        r#"{"n":2,"r":2,"matrices":[[[0,-1],[1,0]],[[1,0],[0,1]]]}"#,
    );
    let out = strata(&["classify", rot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "not_split_over_rationals");
    assert_eq!(err["error"]["factor"], "x^2 - 2*x + 2");
}

#[test]
fn classify_text_and_json_reports() {
    let pair = write_temp(
        "pair.json",
        r#"{"n":2,"r":2,"matrices":[[[2,0],[0,2]],[[0,1],[1,0]]]}"#,
    );
    let path = pair.to_str().unwrap();
    let out = strata(&["classify", path]);
    assert_eq!(stdout_of(&out), "[(1,1),(1,1)]\n");
    let out = strata(&["classify", path, "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(doc["type"], "[(1,1),(1,1)]");
    assert_eq!(doc["algebra_dim"], 2);
    assert_eq!(doc["radical_dim"], 0);
    assert_eq!(doc["blocks"].as_array().unwrap().len(), 2);

    let out = strata(&["semisimple", path]);
    assert_eq!(stdout_of(&out), "true\n");
    let out = strata(&["invariants2x2", path]);
    assert_eq!(stdout_of(&out), "4 0 4 -1 3\n");
    let out = strata(&["invariants2x2", path, "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(doc["invariants"][4], "3");
}

#[test]
fn hm_subcommand_and_length_mismatch() {
    let out = strata(&["hm", "--weights", "1,-1", "--coords", "1,1"]);
    assert_eq!(stdout_of(&out), "true\n");
    let out = strata(&["hm", "--weights", "-1,0,2", "--coords", "0,5,1/3"]);
    assert_eq!(stdout_of(&out), "false\n");
    let out = strata(&["hm", "--weights", "1,-1", "--coords", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "length_mismatch");
}

#[test]
fn group_analyze_and_regular_compose() {
    let swap = write_temp("swap_table.json", r#"{"table":[[0,1],[1,0]]}"#);
    let out = strata(&["group", "regular", swap.to_str().unwrap()]);
    assert!(out.status.success());
    let doc = stdout_of(&out);
    let regrp = write_temp("swap_group.json", doc.trim());
    let out = strata(&["group", "analyze", regrp.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let rep: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(rep["order"], 2);
    assert_eq!(rep["pseudo_reflections"].as_array().unwrap().len(), 1);
    assert_eq!(rep["codim2"]["holds"], false);
    let w = &rep["codim2"]["witness"];
    assert_eq!(w["dim_fixed_normal"], 2);
    assert_eq!(w["dim_fixed_over"], 1);

    let bad = write_temp("bad_table.json", r#"{"table":[[0,1],[0,1]]}"#);
    let out = strata(&["group", "regular", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr_of(&out).trim()).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_table");
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["rt", "hasse", "5"],
        vec!["rt", "hasse", "5", "--format", "json"],
        vec!["rt", "aut", "6", "--format", "json"],
        vec!["rt", "rigidity", "6", "--format", "json"],
    ] {
        let a = strata(&args);
        let b = strata(&args);
        assert_eq!(a.stdout, b.stdout, "{:?}", args);
        assert!(a.status.success());
    }
}

#[test]
fn hasse_dot_shape() {
    let out = strata(&["rt", "hasse", "2"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("digraph rt_2 {"));
    assert!(text.contains("0 [label=\"[(2,1)]\"];"));
    assert!(text.contains("0 -> 1;"));
    assert!(text.trim_end().ends_with('}'));
}

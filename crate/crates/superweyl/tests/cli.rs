//! End-to-end checks of the command line front end: exit codes, report
//! shapes, the batch mode, and the verify verb across the catalog.

use serde_json::Value;

use superweyl::cli::run;
use superweyl::rootdata::{AlgebraId, Weight};

fn invoke(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["superweyl".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run(&argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = invoke(args);
    let value = serde_json::from_str(text.trim()).unwrap_or_else(|e| {
        panic!("not a JSON report: {} in {}", e, text)
    });
    (code, value)
}

#[test]
fn typical_worked_example() {
    let (code, v) = invoke_json(&["typical", "B(1,1)", "2,;0"]);
    assert_eq!(code, 0);
    assert_eq!(v["typical"], Value::Bool(true));
    assert_eq!(v["strongly_typical"], Value::Bool(true));
    assert_eq!(v["t_value"], Value::String("3".into()));
    assert!(v["version"].is_string());
    assert_eq!(v["input"]["lambda"], Value::String("2;0".into()));
}

#[test]
fn echoed_inputs_reparse_identically() {
    let (code, v) = invoke_json(&[
        "typical",
        "D(2,1,a)",
        "0;1,1",
        "--rho-shifted",
    ]);
    assert_eq!(code, 0);
    let id = AlgebraId::parse(v["input"]["algebra"].as_str().unwrap()).unwrap();
    let given =
        Weight::parse(&id, v["input"]["weight"].as_str().unwrap()).unwrap();
    let lambda =
        Weight::parse(&id, v["input"]["lambda"].as_str().unwrap()).unwrap();
    assert_eq!(given, Weight::parse(&id, "0;1,1").unwrap());
    let rho = Weight::parse(&id, "-1;-1,-1").unwrap();
    assert_eq!(lambda, &given - &rho);
}

#[test]
fn exit_codes_separate_error_classes() {
    let (code, v) = invoke_json(&["typical", "Q(7)", "0;0"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], Value::String("parse".into()));

    let (code, v) = invoke_json(&["mate", "B(1,1)", "0;0"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], Value::String("domain".into()));

    let (code, v) =
        invoke_json(&["transport", "B(1,1)", "0;0", "--from", "0", "--to", "1"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("transport undefined"));

    let (code, _) = invoke(&["typical", "B(1,1)"]);
    assert_eq!(code, 1);

    let (code, _) = invoke(&["--version"]);
    assert_eq!(code, 0);
}

#[test]
fn roots_report_shape() {
    let (code, v) = invoke_json(&["roots", "B(1,1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["weyl_order"], Value::from(4));
    let odd: Vec<&str> = v["odd_positive"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(odd, vec!["d1", "d1+e1", "d1-e1"]);
    assert_eq!(v["rho"], Value::String("-1/2;1/2".into()));
}

#[test]
fn mate_worked_example() {
    let (code, v) = invoke_json(&["mate", "D(2,1,a)", "0;1,1", "--rho-shifted"]);
    assert_eq!(code, 0);
    let gamma: Vec<&str> = v["gamma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(gamma, vec!["d1-e1+e2", "d1-e1-e2"]);
    assert_eq!(v["is_perfect"], Value::Bool(true));
    assert_eq!(v["generic"], Value::Bool(false));
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn transport_worked_example() {
    let (code, v) =
        invoke_json(&["transport", "B(1,1)", "2;0", "--from", "0", "--to", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], Value::String("1;1".into()));
    assert_eq!(v["shifted_invariant"], Value::Bool(true));
}

#[test]
fn character_coefficients() {
    let (code, v) =
        invoke_json(&["character", "gl(1,1)", "0;0", "--depth", "3"]);
    assert_eq!(code, 0);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["coefficient"], Value::from(1));
    assert_eq!(terms[1]["weight"], Value::String("1;-1".into()));

    let (code, v) = invoke_json(&[
        "character",
        "B(1,1)",
        "2;0",
        "--depth",
        "4",
        "--typical",
        "--positivity-scan",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["positivity_scan"]["label"],
        Value::String("heuristic".into())
    );
    assert_eq!(v["positivity_scan"]["nonnegative"], Value::Bool(true));
}

#[test]
fn plain_mode_renders_tables() {
    let (code, text) = invoke(&["typical", "B(1,1)", "2;0", "--plain"]);
    assert_eq!(code, 0);
    assert!(text.contains("typical: true"));
    assert!(text.contains("t_value: 3"));
    assert!(!text.trim_start().starts_with('{'));
}

#[test]
fn batch_emits_one_report_per_line() {
    let dir = std::env::temp_dir();
    let path = dir.join(format!("superweyl-batch-{}.ndjson", std::process::id()));
    std::fs::write(
        &path,
        concat!(
            "[\"typical\",\"B(1,1)\",\"2,;0\"]\n",
            "\n",
            "[\"typical\",\"B(1,1)\",\"oops\"]\n",
            "[\"simple\",\"gl(1,1)\",\"0;0\"]\n",
        ),
    )
    .unwrap();
    let (code, text) = invoke(&["--batch", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1);
    let lines: Vec<&str> =
        text.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines.len(), 3);
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["typical"], Value::Bool(true));
    let second: Value = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second["code"], Value::from(1));
    let third: Value = serde_json::from_str(lines[2]).unwrap();
    assert_eq!(third["simple"], Value::Bool(false));
}

#[test]
fn verify_passes_on_the_whole_catalog() {
    for name in [
        "B(1,1)",
        "B(2,2)",
        "D(2,2)",
        "D(2,1,a)",
        "D(2,1,a=3/2)",
        "F(4)",
        "G(3)",
        "gl(1,1)",
        "gl(2,1)",
        "sl(2,1)",
        "osp(2,2)",
    ] {
        let (code, v) = invoke_json(&["verify", name]);
        assert_eq!(code, 0, "verify failed on {}: {}", name, v);
        assert_eq!(v["passed"], Value::Bool(true));
        assert!(v["checks"].as_array().unwrap().len() >= 15);
    }
}

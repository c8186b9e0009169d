use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xladder"))
        .args(args)
        .output()
        .expect("spawn xladder")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_text_report() {
    let o = run(&[
        "verify", "--type", "I", "--suite", "algebra", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[H,B]=−2B: pass"));
}

#[test]
fn json_report_schema() {
    let o = run(&["verify", "--type", "II", "--suite", "algebra"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "xladder/1");
    for item in v["items"].as_array().unwrap() {
        for key in ["identity", "type", "status", "computed", "printed"] {
            assert!(item.get(key).is_some(), "missing {key}");
        }
        assert!(["pass", "fail", "printed-mismatch"].contains(&item["status"].as_str().unwrap()));
    }
}

#[test]
fn chains_suite_has_fn_consistency() {
    let o = run(&[
        "verify", "--type", "II", "--suite", "chains", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for n in 1..=5 {
        assert!(
            out.contains(&format!("f_n consistency n={n}: pass")),
            "n={n}"
        );
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--type", "IV"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    let o = run(&["chain", "--type", "I", "--start", "psi(a+17)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("psi(a+1)"));
}

#[test]
fn chain_up_weights() {
    let o = run(&[
        "chain",
        "--type",
        "II",
        "--start",
        "alpha+1",
        "--direction",
        "up",
        "--n",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let weights: Vec<&str> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["weight"].as_str().unwrap())
        .collect();
    assert_eq!(weights, ["a + 1", "a + 3", "a + 5", "a + 7", "a + 9"]);
}

#[test]
fn coeffs_examples() {
    let o = run(&["coeffs", "--kind", "f", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("f_0(H) = 0"));

    let o = run(&[
        "coeffs", "--type", "I", "--kind", "f", "--base", "1+alpha", "--n", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("f_1 = "));

    let o = run(&[
        "coeffs", "--type", "II", "--kind", "g", "--base", "-alpha-1", "--n", "1..3", "--alpha",
        "1/3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for (n, l) in lines.iter().enumerate() {
        let value = l.strip_prefix(&format!("g_{} = ", n + 1)).unwrap();
        let value = value.split_whitespace().next().unwrap();
        assert!(
            value
                .chars()
                .all(|c| c.is_ascii_digit() || c == '-' || c == '/'),
            "{value}"
        );
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--type", "I", "--suite", "algebra"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["chain", "--type", "I", "--emit", "dot"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
}

#[test]
fn diagram_dot_labels_and_edges() {
    let o = run(&["chain", "--type", "III", "--emit", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"psi(a+1)\""));
    assert!(dot
        .lines()
        .filter(|l| l.contains("->"))
        .all(|l| l.contains("op=") && l.contains("coeff=")));
}

#[test]
fn eval_prints_floats() {
    let o = run(&[
        "eval", "--type", "I", "--state", "psi(a+1)", "--x", "3/2", "--alpha", "1/3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value"));
}

use std::process::{Command, Output};

use serde_json::{json, Value};

fn singwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singwb")).args(args).env_remove("SINGWB_SEED").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn mu_routes_agree_on_brieskorn() {
    let out = singwb(&["mu", "z1^2+z2^3+z3^7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["payload"]["formula"], 12);
    assert_eq!(r["payload"]["newton"], 12);
    assert_eq!(r["payload"]["oracle"], 12);
    assert_eq!(r["payload"]["equal"], true);
}

#[test]
fn zeta_of_the_node() {
    let out = singwb(&["zeta", "z1^2+z2^2+z3^2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["milnor_orlik"], json!([[1, 1], [2, -1]]));
    assert_eq!(r["payload"]["acampo"]["reduced_divisor"], json!([[1, 1], [2, -1]]));
    assert_eq!(r["payload"]["equal"], true);
}

#[test]
fn zeta_in_two_variables() {
    let out = singwb(&["zeta", "--vars", "2", "x^2+y^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["payload"]["milnor_orlik"], json!([[1, 1], [2, -1], [3, -1], [6, 1]]));
}

#[test]
fn negative_exponent_is_an_input_error() {
    let out = singwb(&["analyze", "z1^-1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["error"]["kind"], "input");
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn resolve_needs_three_variables() {
    assert_eq!(singwb(&["resolve", "--vars", "2", "x^2+y^3"]).status.code(), Some(2));
    assert_eq!(singwb(&["resolve", "z1^2+z2^3+z2^4+z3^2"]).status.code(), Some(2));
}

#[test]
fn non_isolated_input_fails_with_certificate() {
    let out = singwb(&["mu", "z1^2+z2^2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["payload"]["oracle"], "infinite");
    assert_eq!(r["verdicts"]["isolated"], false);
}

#[test]
fn exit_code_follows_verdicts() {
    for expr in ["z1^2+z2^3+z3^7", "z1^2+z2^2", "z1^3+z2^3+z3^3"] {
        let out = singwb(&["verify", expr]);
        let r = report(&out);
        let all = r["verdicts"].as_object().unwrap().values().all(|v| v == true);
        assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }), "{expr}");
    }
}

#[test]
fn resolve_reports_checks() {
    let out = singwb(&["resolve", "z1^3+z2^3+z3^3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let checks = r["payload"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert_eq!(r["verdicts"]["resolution"], true);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "z1^4 + z2^3 z3 - 2 z2^2 z3^2 + z2 z3^3 + z1^2 z2 z3 + z1 z2^2 z3"];
    assert_eq!(singwb(&args).stdout, singwb(&args).stdout);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |seed: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_singwb"));
        cmd.args(args).env_remove("SINGWB_SEED");
        if let Some(s) = seed {
            cmd.env("SINGWB_SEED", s);
        }
        report(&cmd.output().unwrap())
    };
    let expr = "z1^3+z2^3+z3^3";
    assert_eq!(run(Some("7"), &["resolve", expr])["input"]["seed"], 7);
    assert_eq!(run(None, &["resolve", expr])["input"]["seed"], 1);
    assert_eq!(run(Some("7"), &["resolve", "--seed", "9", expr])["input"]["seed"], 9);
}

#[test]
fn file_input_and_out_path() {
    let dir = std::env::temp_dir().join(format!("singwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("f.txt");
    let output = dir.join("r.json");
    std::fs::write(&input, "z1^2+z2^3+z3^7\n").unwrap();
    let out = singwb(&["mu", "--file", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(r["payload"]["oracle"], 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_file_is_an_input_error() {
    assert_eq!(singwb(&["mu", "--file", "/nonexistent/singwb.txt"]).status.code(), Some(2));
}

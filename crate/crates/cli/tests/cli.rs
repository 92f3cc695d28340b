use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};
use shuffle_cli::input::{element_json, ElementSpec};
use shuffle_cli::{run_value, Overrides, Status};
use shuffle_core::quiver::Quiver;

fn run(job: &Value) -> (Value, Status) {
    run_value(job, &Overrides::default())
}

/// Runs the binary with `args`, feeding `stdin`; parsed stdout and exit code.
fn exec(args: &[&str], stdin: &str) -> (Value, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shuffle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (serde_json::from_slice(&out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn a1_unit_product() {
    let (v, s) = run(&json!({"command": "product", "quiver": "A1", "fgl": "additive", "a": "1@e", "b": "1@e"}));
    assert_eq!(s, Status::Ok);
    assert_eq!(v["result"], json!({"dim": {"1": 2}, "num": "-2", "den": "1"}));
}

#[test]
fn grassmannian_pushforward_values() {
    let push = |f: &str| {
        run(&json!({"command": "pushforward", "kind": "grassmannian", "f": f, "r": 1, "n": 2})).0["result"]["value"]
            .clone()
    };
    assert_eq!(push("l1_1"), json!("-1"));
    assert_eq!(push("1"), json!("0"));
}

#[test]
fn serre_table_starts_with_closed_forms() {
    let (v, s) = run(&json!({"command": "serre-table", "n_max": 3}));
    assert_eq!(s, Status::Ok);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["direct"], json!("2*b*hbar"));
    assert!(rows
        .iter()
        .all(|r| r["agree"] == json!(true) && r["vanishes_at_half"] == json!(true)));
}

#[test]
fn quadratic_check_on_a2_pair() {
    let (v, s) = run(&json!({"command": "check-quadratic", "quiver": "A2", "k": 1, "l": 2}));
    assert_eq!(s, Status::Ok);
    assert_eq!(v["result"]["verified"], json!(true));
}

#[test]
fn element_json_round_trips() {
    let q = Quiver::a2();
    for text in ["l1_1*l1_2 + 3@2e1", "(l2_1 + 1)/2@e1+e2", "1@(0,1)"] {
        let e = ElementSpec::Short(text.into()).build(&q).unwrap();
        let j = element_json(&e, &q);
        let back = ElementSpec::Full(j.clone()).build(&q).unwrap();
        assert_eq!(back, e, "{}", text);
        let wire: ElementSpec = serde_json::from_value(serde_json::to_value(&j).unwrap()).unwrap();
        assert_eq!(wire.build(&q).unwrap(), e);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let (v, s) = run(&json!({"command": "product", "quiver": "A1", "a": "1@e", "b": "1@e", "bogus": 1}));
    assert_eq!(s, Status::Input);
    assert!(v["error"].as_str().unwrap().contains("bogus"));
}

#[test]
fn batch_status_is_the_worst_entry() {
    let ok = json!({"command": "serre-table", "n_max": 1});
    let over = json!({"command": "serre-table", "n_max": 7});
    let (v, s) = run(&json!([ok, over]));
    assert_eq!(s, Status::Limit);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let cases = [
        (
            json!({"command": "product", "quiver": "A1", "a": "1@e", "b": "1@e"}),
            0,
            "ok",
        ),
        (
            json!({"command": "product", "quiver": "A1", "a": "1/(l1_1-l1_2)^2@2e", "b": "1@e"}),
            1,
            "failed",
        ),
        (
            json!({"command": "product", "quiver": "A9", "a": "1@e", "b": "1@e"}),
            2,
            "input-error",
        ),
        (json!({"command": "serre-table", "n_max": 7}), 3, "limit-exceeded"),
    ];
    for (job, code, label) in cases {
        let (v, c) = exec(&["run"], &job.to_string());
        assert_eq!(c, code, "{}", job);
        assert_eq!(v["status"], json!(label));
    }
    let (v, c) = exec(&["run"], "{not json");
    assert_eq!((c, v["status"].clone()), (2, json!("input-error")));
}

#[test]
fn substitution_applies_to_outputs() {
    let job = json!({"command": "product", "quiver": "Jordan", "a": "1@e", "b": "1@e"});
    let (v, c) = exec(
        &["run", "--substitute", "t1=hbar/2", "--substitute", "t2=hbar/2"],
        &job.to_string(),
    );
    assert_eq!(c, 0);
    let num = v["result"]["num"].as_str().unwrap();
    assert!(num.contains("hbar") && !num.contains("t1"), "{}", num);
}

#[test]
fn serre_table_subcommand_and_verify_are_deterministic() {
    let (a, c) = exec(&["serre-table", "--n-max", "2"], "");
    assert_eq!(c, 0);
    assert_eq!(a, exec(&["serre-table", "--n-max", "2"], "").0);
    let (v, c) = exec(&["verify"], "");
    assert_eq!(c, 0);
    assert!(v.as_array().unwrap().iter().all(|e| e["status"] == json!("ok")));
}

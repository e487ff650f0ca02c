use std::process::{Command, Output};

use serde_json::Value;

fn theta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(args)
        .env_remove("THETA_KERNEL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = theta(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn multiplier_json() {
    let v = json(&[
        "multiplier",
        "--level",
        "3",
        "--matrix",
        "0,-1,1,0",
        "--format",
        "json",
    ]);
    assert_eq!(v["nu"], "18/24");
    assert_eq!(v["value"], "-i");
    assert_eq!(v["level"], 3);

    let v = json(&[
        "multiplier",
        "--level",
        "4",
        "--matrix",
        "-1,0,0,-1",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(v["value"], "-1");
    assert_eq!(v["value_k"], "1");
}

#[test]
fn membership_formats() {
    let v = json(&[
        "membership",
        "--level",
        "4",
        "--matrix",
        "1,1,0,1",
        "--format",
        "json",
    ]);
    assert_eq!(v["member"], false);

    let o = theta(&[
        "membership",
        "--level",
        "3",
        "--matrix",
        "-2,-3,3,4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("matrix,level,member"));
    assert_eq!(lines.next(), Some("\"-2,-3,3,4\",3,true"));

    let o = theta(&["membership", "--level", "3", "--matrix", "1,0,0,1"]);
    assert!(stdout(&o).contains("member: true"));
}

#[test]
fn usage_and_domain_errors_exit_2() {
    for args in [
        vec!["multiplier", "--level", "3", "--matrix", "1,1,0,1"],
        vec!["membership", "--level", "5", "--matrix", "1,0,0,1"],
        vec!["membership", "--level", "3", "--matrix", "2,0,0,1"],
        vec!["membership", "--level", "3", "--matrix", "1,2,3"],
        vec!["verify", "--suite", "nonsense"],
        vec!["verify", "--suite", "oracle", "--tol", "-1"],
        vec!["verify", "--suite", "oracle", "--tol", "1e-300"],
        vec!["kernel", "--level", "3"],
        vec!["frobnicate"],
    ] {
        let o = theta(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_csv_header_and_exit_codes() {
    let o = theta(&[
        "verify",
        "--suite",
        "cusps,cosets",
        "--samples",
        "200",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("suite,case,verdict,residual"));
    assert!(text.lines().skip(1).all(|l| l.contains(",PASS,")));

    // An impossibly tight tolerance makes the oracle comparisons fail.
    let o = theta(&[
        "verify",
        "--suite",
        "oracle",
        "--samples",
        "50",
        "--tol",
        "2e-16",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_is_deterministic_and_reads_seed_from_env() {
    let args = [
        "verify",
        "--suite",
        "character,kernels",
        "--samples",
        "300",
        "--format",
        "json",
    ];
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_theta"));
        cmd.args(args).env_remove("THETA_KERNEL_SEED");
        if let Some(s) = seed {
            cmd.env("THETA_KERNEL_SEED", s);
        }
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run(None), run(None));
    assert_eq!(run(Some("11")), run(Some("11")));

    let mut explicit = theta(&args).stdout;
    assert_eq!(run(None), explicit);
    explicit = Command::new(env!("CARGO_BIN_EXE_theta"))
        .args(args)
        .args(["--seed", "11"])
        .env("THETA_KERNEL_SEED", "99")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(run(Some("11")), explicit);
}

#[test]
fn kernel_cosets_and_cusps() {
    let v = json(&[
        "kernel", "--level", "4", "--k", "6", "--matrix", "1,0,4,1", "--format", "json",
    ]);
    assert_eq!(v["in_kernel"], v["by_congruence"]);
    assert_eq!(v["image_size"], 2);
    assert_eq!(v["coset_reps"].as_array().unwrap().len(), 2);

    let v = json(&[
        "cosets",
        "--level",
        "3",
        "--matrix",
        "5,-7,-2,3",
        "--format",
        "json",
    ]);
    assert_eq!(v["index"], 6);
    assert_eq!(v["image_order"], 4);
    assert_eq!(v["reps"].as_array().unwrap().len(), 6);

    let v = json(&["cusp", "--level", "4", "--format", "json"]);
    assert_eq!(v["class_count"], 2);

    let v = json(&[
        "cusp", "--level", "3", "--from", "inf", "--to", "-1", "--format", "json",
    ]);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["witness"], Value::Null);

    let v = json(&[
        "cusp", "--level", "3", "--from", "inf", "--to", "0", "--format", "json",
    ]);
    assert_eq!(v["equivalent"], true);
}

#[test]
fn lemma_report() {
    let v = json(&[
        "kernel",
        "--lemma",
        "level3-mod3",
        "--box",
        "30",
        "--format",
        "json",
    ]);
    assert_eq!(v["counterexample_count"], 0);
    assert_eq!(v["verdict"], "PASS");

    let o = theta(&["kernel", "--lemma", "level9-mod2"]);
    assert_eq!(o.status.code(), Some(2));
}

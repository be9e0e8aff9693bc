use std::process::{Command, Output};

fn cuntzlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntzlab"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn apply_examples() {
    for (perm, el, expect) in [
        ("(1 2)", "s[1]", "s[11] t[2] + s[12] t[1]"),
        ("id", "s[2] t[2]", "s[2] t[2]"),
        ("(1 3)", "s[1] t[1]", "s[12] t[12] + s[21] t[21]"),
    ] {
        let o = cuntzlab(&["apply", "--perm", perm, "--element", el]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), expect);
    }
    let o = cuntzlab(&["apply", "--perm-word", "1324", "--element", "s[1]"]);
    assert_eq!(stdout(&o).trim(), "s[11] t[1] + s[21] t[2]");
}

#[test]
fn exit_codes() {
    let o = cuntzlab(&["apply", "--perm", "(1 2)", "--element", "s[1 t[2]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(cuntzlab(&["apply", "--perm", "(1 9)", "--element", "s[1]"]).status.code(), Some(2));
    assert_eq!(cuntzlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(cuntzlab(&["entropy", "--element", "s[1] t[2]"]).status.code(), Some(3));
    let o = cuntzlab(&["entropy", "--element", "s[1] t[1] + 0+1i * s[2] t[2]", "--masa", "ef"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("θ^0(E)"));
    let o = cuntzlab(&["entropy", "--perm", "shift", "--steps", "40", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(cuntzlab(&["norm", "--element", "s[1] t[1]", "--n-gens", "1"]).status.code(), Some(2));
}

#[test]
fn entropy_verdicts() {
    let verdict = |perm: &str, masa: &str| {
        let o = cuntzlab(&["entropy", "--perm", perm, "--masa", masa, "--json", "--depth", "3", "--steps", "12"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["verdict"].as_str().unwrap().to_string()
    };
    assert_eq!(verdict("(2 3)", "standard"), "log2");
    assert_eq!(verdict("(1 2)", "ef"), "log2");
    assert_eq!(verdict("id", "standard"), "zero");
}

#[test]
fn entropy_json_shape() {
    let o = cuntzlab(&["entropy", "--perm", "shift", "--depth", "1", "--steps", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["perm"], "(2 3)");
    assert_eq!(r["masa"], "standard");
    assert_eq!(r["p"], 1);
    assert_eq!(r["counts"], serde_json::json!([[1, "2"], [2, "4"], [3, "8"], [4, "16"], [5, "32"]]));
    assert_eq!(r["increments"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(r["verdict"], "log2");
    assert!((r["estimate_nats"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_cuntzlab"))
        .arg("apply")
        .env_clear()
        .env("CUNTZLAB_PERM", "(1 3)")
        .env("CUNTZLAB_ELEMENT", "s[1] t[1]")
        .env("CUNTZLAB_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["image"], "s[12] t[12] + s[21] t[21]");
}

#[test]
fn norm_and_psi() {
    let o = cuntzlab(&["norm", "--element", "s[1] t[2] + s[2] t[1]"]);
    assert_eq!(stdout(&o).trim(), "1.000000000000");
    let o = cuntzlab(&["norm", "--element", "2 * s[11] t[2]", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["norm"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    let o = cuntzlab(&["psi", "--element", "s[12] t[1]", "--rank", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["decomposition"]["direction"], "creation");
    for part in v["decomposition"]["parts"].as_array().unwrap() {
        let rows = part["matrix"].as_array().unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.as_array().unwrap().iter().all(|z| z.as_array().unwrap().len() == 2)));
        assert!(part["norm"].as_f64().unwrap() <= 1.0 + 1e-9);
    }
}

#[test]
fn verify_single_suite() {
    let o = cuntzlab(&["verify", "lemma1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["seed"], 2024);
    assert_eq!(cuntzlab(&["verify", "nope"]).status.code(), Some(2));
}

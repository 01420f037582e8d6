use std::process::{Command, Output};

fn manin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn passing_run_exits_zero_with_summary() {
    let o = manin(&["run", "--check", "cramer", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cramer"));
    assert!(text.trim_end().ends_with("1 checks, 1 passed, 0 failed"), "{text}");
}

#[test]
fn json_output_is_an_array_of_reports() {
    let o = manin(&["run", "--check", "newton", "--ring", "free", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["name"], "newton");
    assert_eq!(r["verdict"], "golden-match");
    assert_eq!(r["ring"], "free(2,2)");
    assert!(r["millis"].is_null());
}

#[test]
fn golden_mismatch_exits_one() {
    let dir = std::env::temp_dir().join(format!("manin-cli-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("newton_free_2.json"),
        r#"{"check":"newton","ring":"free(2,2)","components":{"t^1":"0"}}"#,
    )
    .unwrap();
    let o = manin(&["run", "--check", "newton", "--ring", "free", "--n", "2", "--golden-dir", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("golden-mismatch"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["run", "--check", "no_such_check"],
        vec!["run", "--ring", "octonions"],
        vec!["run", "--check", "newton", "--degree", "1"],
        vec!["run", "--check", "capelli", "--ring", "free"],
        vec!["fuzz", "--kind", "nope", "--count", "1"],
    ] {
        let o = manin(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "), "{args:?}");
    }
    // clap rejects malformed flags with its own usage exit code
    assert_eq!(manin(&["run", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn list_names_every_check() {
    let o = manin(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["newton", "capelli", "det_oracle", "numeric_block_det", "poisson_inverse"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn fuzz_reports_per_invariant() {
    let o = manin(&["fuzz", "--n", "2", "--count", "4", "--kind", "rank_one", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["params"]["invariant"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 3);
    assert!(names.contains(&"is_manin"));
}

#[test]
fn timings_are_opt_in() {
    let o = manin(&["run", "--check", "cramer", "--n", "2", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v[0]["millis"].is_u64());
}

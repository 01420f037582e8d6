//! Acceptance run against the `manin` binary: one PASS/FAIL line per
//! criterion, each with its wall-time budget.

use serde_json::Value;
use std::process::Command;
use std::time::{Duration, Instant};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
    elapsed: Duration,
}

fn manin(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_manin")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed: start.elapsed(),
    }
}

fn reports(run: &Run) -> Result<Vec<Value>, String> {
    if run.code != 0 {
        return Err(format!("exit {}: {}{}", run.code, run.stderr, tail(&run.stdout)));
    }
    match serde_json::from_str::<Value>(&run.stdout) {
        Ok(Value::Array(v)) => Ok(v),
        _ => Err("output is not a JSON array".into()),
    }
}

fn tail(s: &str) -> String {
    let lines: Vec<&str> = s.lines().collect();
    lines[lines.len().saturating_sub(20)..].join("\n")
}

/// Every report named in `names` exists and has one of the verdicts.
fn expect(reports: &[Value], names: &[&str], verdicts: &[&str]) -> Result<(), String> {
    for name in names {
        let mine: Vec<&Value> = reports.iter().filter(|r| r["name"] == *name).collect();
        if mine.is_empty() {
            return Err(format!("{name} did not run"));
        }
        for r in mine {
            let v = r["verdict"].as_str().unwrap_or("");
            if !verdicts.contains(&v) {
                return Err(format!("{name} {}: {v} {}", r["params"], r["residuals"]));
            }
        }
    }
    Ok(())
}

fn has_instance(reports: &[Value], name: &str, key: &str, value: Value) -> Result<(), String> {
    if reports.iter().any(|r| r["name"] == name && r["params"][key] == value) {
        Ok(())
    } else {
        Err(format!("{name} has no instance with {key}={value}"))
    }
}

fn within(runs: &[&Run], budget: Duration) -> Result<(), String> {
    let total: Duration = runs.iter().map(|r| r.elapsed).sum();
    if total <= budget {
        Ok(())
    } else {
        Err(format!("took {total:?}, budget {budget:?}"))
    }
}

fn criterion_1() -> Result<(), String> {
    let r = manin(&["run", "--check", "newton", "--check", "macmahon", "--ring", "free", "--n", "2", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, &["newton", "macmahon"], &["golden-match"])?;
    within(&[&r], Duration::from_secs(1))
}

fn criterion_2() -> Result<(), String> {
    let r = manin(&["run", "--check", "nogo_exp_det", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, &["nogo_exp_det"], &["golden-match"])?;
    let line = reps[0]["residuals"][0].as_str().unwrap_or("");
    if !line.starts_with("ε^3:") {
        return Err(format!("unexpected residual {line}"));
    }
    within(&[&r], Duration::from_secs(5))
}

const MANIN_SUITE: &[&str] = &[
    "cramer",
    "cayley_hamilton",
    "newton",
    "second_newton",
    "macmahon",
    "det_multiplicativity",
    "frobenius",
    "plucker",
    "leningrad",
    "silantiev",
];

fn criterion_3() -> Result<(), String> {
    let list = MANIN_SUITE.join(",");
    let r = manin(&["run", "--suite", &list, "--n-max", "3", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, MANIN_SUITE, &["zero"])?;
    for name in MANIN_SUITE.iter().filter(|n| !matches!(**n, "plucker" | "silantiev")) {
        has_instance(&reps, name, "n", 3.into())?;
    }
    let big = manin(&["run", "--suite", "cramer,cayley_hamilton", "--n", "4", "--format", "json"]);
    let big_reps = reports(&big)?;
    expect(&big_reps, &["cramer", "cayley_hamilton"], &["zero"])?;
    has_instance(&big_reps, "cramer", "n", 4.into())?;
    has_instance(&big_reps, "cayley_hamilton", "n", 4.into())?;
    within(&[&r, &big], Duration::from_secs(600))
}

const SERIES_SUITE: &[&str] = &[
    "schur_block",
    "jacobi_ratio",
    "ldjlc",
    "inverse_manin",
    "sylvester",
    "weinstein_aronszajn",
    "gauss_det",
    "poisson_inverse",
];

fn criterion_4() -> Result<(), String> {
    let list = SERIES_SUITE.join(",");
    let r = manin(&["run", "--suite", &list, "--n-max", "3", "--degree", "4", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, SERIES_SUITE, &["zero"])?;
    for name in ["schur_block", "jacobi_ratio", "ldjlc", "inverse_manin", "gauss_det"] {
        has_instance(&reps, name, "n", 3.into())?;
    }
    within(&[&r], Duration::from_secs(900))
}

fn criterion_5() -> Result<(), String> {
    let r = manin(&[
        "run",
        "--suite",
        "capelli,cauchy_binet_det,cauchy_binet_perm,toy_identity",
        "--n-max",
        "3",
        "--format",
        "json",
    ]);
    let reps = reports(&r)?;
    expect(&reps, &["capelli", "cauchy_binet_det", "cauchy_binet_perm", "toy_identity"], &["zero"])?;
    has_instance(&reps, "capelli", "n", 3.into())?;
    for rr in 1..=4 {
        has_instance(&reps, "toy_identity", "r", rr.into())?;
    }
    within(&[&r], Duration::from_secs(1200))
}

fn criterion_6() -> Result<(), String> {
    let r = manin(&["run", "--suite", "confluence,confluence_broken", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, &["confluence"], &["zero"])?;
    expect(&reps, &["confluence_broken"], &["nonzero-expected"])
}

fn criterion_7() -> Result<(), String> {
    for n in ["2", "3"] {
        let r = manin(&["run", "--check", "numeric_block_det", "--n", n, "--variant", "m=2,trials=50", "--format", "json"]);
        let reps = reports(&r)?;
        expect(&reps, &["numeric_block_det"], &["zero"])?;
        has_instance(&reps, "numeric_block_det", "trials", 50.into())?;
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let r = manin(&["run", "--check", "det_oracle", "--format", "json"]);
    let reps = reports(&r)?;
    expect(&reps, &["det_oracle"], &["zero"])?;
    has_instance(&reps, "det_oracle", "trials", 500.into())?;
    has_instance(&reps, "det_oracle", "n_max", 4.into())
}

fn criterion_9() -> Result<(), String> {
    let args = ["run", "--seed", "1234", "--format", "json"];
    let a = manin(&args);
    let b = manin(&args);
    reports(&a)?;
    if a.stdout.as_bytes() == b.stdout.as_bytes() {
        Ok(())
    } else {
        Err("outputs differ".into())
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<(), String>); 9] = [
        ("2×2 golden residuals (Newton, MacMahon)", criterion_1),
        ("no-go ε³ residual over Cartier–Foata", criterion_2),
        ("residual-zero suite over manin_generic", criterion_3),
        ("series suite at D = 4", criterion_4),
        ("Capelli, Cauchy–Binet and toy identities", criterion_5),
        ("confluence self-test and broken fixture", criterion_6),
        ("numeric block determinant", criterion_7),
        ("Laplace against permutation-sum oracle", criterion_8),
        ("deterministic JSON reports", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (what, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match &res {
            Ok(()) => println!("criterion {}: PASS  {what} ({secs:.2} s)", i + 1),
            Err(e) => {
                println!("criterion {}: FAIL  {what} ({secs:.2} s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

use manin::identities::{
    find_check, fuzz, registry, run_check, run_suite, CheckCtx, FuzzConfig, SuiteConfig, Verdict, FUZZ_INVARIANTS,
    FUZZ_KINDS,
};
use manin::Error;
use rand::RngCore;

fn failures(reports: &[manin::identities::Report]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed()).map(|r| r.to_text()).collect()
}

#[test]
fn default_suite_passes() {
    let reports = run_suite(&SuiteConfig::default()).unwrap();
    assert!(reports.len() >= registry().len());
    let bad = failures(&reports);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
    for def in registry() {
        assert!(reports.iter().any(|r| r.name == def.name), "{} did not run", def.name);
    }
}

#[test]
fn manin_checks_are_zero_and_counterexamples_nonzero() {
    let reports = run_suite(&SuiteConfig::default()).unwrap();
    for r in &reports {
        match r.name.as_str() {
            "nogo_det_log" | "nogo_trace_det" | "nogo_square" | "confluence_broken" => {
                assert_eq!(r.verdict, Verdict::NonzeroExpected, "{}", r.to_text())
            }
            "nogo_exp_det" | "cramer_right" => assert_eq!(r.verdict, Verdict::GoldenMatch, "{}", r.to_text()),
            _ => assert_eq!(r.verdict, Verdict::Zero, "{}", r.to_text()),
        }
    }
}

#[test]
fn free_ring_runs_match_goldens_or_fail_as_expected() {
    let cfg = SuiteConfig {
        ring: Some("free".into()),
        n: Some(2),
        ..SuiteConfig::default()
    };
    let reports = run_suite(&cfg).unwrap();
    assert!(!reports.is_empty());
    for r in &reports {
        assert!(
            matches!(r.verdict, Verdict::GoldenMatch | Verdict::NonzeroExpected),
            "{}",
            r.to_text()
        );
    }
    for name in ["newton", "macmahon", "cramer", "cayley_hamilton", "frobenius", "det_multiplicativity"] {
        let r = reports.iter().find(|r| r.name == name).unwrap();
        assert_eq!(r.verdict, Verdict::GoldenMatch, "{}", r.to_text());
    }
}

#[test]
fn cramer_and_cayley_hamilton_at_four() {
    for name in ["cramer", "cayley_hamilton"] {
        let r = run_check(find_check(name).unwrap(), &CheckCtx::new(4), false).unwrap();
        assert_eq!(r.verdict, Verdict::Zero, "{}", r.to_text());
    }
}

#[test]
fn commutative_ring_is_zero_everywhere_it_applies() {
    let cfg = SuiteConfig {
        ring: Some("commutative".into()),
        n_max: 2,
        ..SuiteConfig::default()
    };
    let bad = failures(&run_suite(&cfg).unwrap());
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig {
        checks: Some(vec!["det_oracle".into(), "numeric_block_det".into(), "capelli".into()]),
        seed: 7,
        variant: None,
        ..SuiteConfig::default()
    };
    let a = serde_json::to_string(&run_suite(&cfg).unwrap().iter().map(|r| r.to_json()).collect::<Vec<_>>()).unwrap();
    let b = serde_json::to_string(&run_suite(&cfg).unwrap().iter().map(|r| r.to_json()).collect::<Vec<_>>()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn seeds_change_random_instances() {
    let ctx = |seed| CheckCtx {
        seed,
        ..CheckCtx::new(2)
    };
    assert_ne!(ctx(1).rng("x").next_u64(), ctx(2).rng("x").next_u64());
    assert_eq!(ctx(1).rng("x").next_u64(), ctx(1).rng("x").next_u64());
}

#[test]
fn usage_errors() {
    let run = |cfg: SuiteConfig| run_suite(&cfg);
    assert!(matches!(
        run(SuiteConfig {
            checks: Some(vec!["no_such_check".into()]),
            ..SuiteConfig::default()
        }),
        Err(Error::UnknownCheck(_))
    ));
    assert!(run(SuiteConfig {
        ring: Some("octonions".into()),
        ..SuiteConfig::default()
    })
    .is_err());
    assert!(matches!(
        run(SuiteConfig {
            degree: 1,
            ..SuiteConfig::default()
        }),
        Err(Error::Precondition(_))
    ));
    // a fixed-ring check refuses an override
    let err = run(SuiteConfig {
        checks: Some(vec!["capelli".into()]),
        ring: Some("free".into()),
        ..SuiteConfig::default()
    })
    .unwrap_err();
    assert!(err.is_usage());
}

#[test]
fn check_preconditions_are_usage_errors() {
    let ctx = |n: usize, v: &str| CheckCtx {
        variant: Some(v.to_string()),
        ..CheckCtx::new(n)
    };
    let perm = find_check("cauchy_binet_perm").unwrap();
    assert!(run_check(perm, &ctx(1, "capelli(1)"), false).unwrap_err().is_usage());
    assert!(run_check(perm, &ctx(2, "antisymmetric(2)"), false).unwrap_err().is_usage());
    let num = find_check("numeric_block_det").unwrap();
    assert!(run_check(num, &ctx(2, "m"), false).unwrap_err().is_usage());
}

#[test]
fn capelli_family_variants() {
    let det = find_check("cauchy_binet_det").unwrap();
    for (n, v) in [
        (2, "capelli(2,2,2)"),
        (2, "capelli(2,3,1)"),
        (2, "capelli(2,1,2)"),
        (2, "turnbull(2)"),
        (2, "css_shift(2)"),
        (2, "commuting(2)"),
        (2, "zero_correction(2)"),
    ] {
        let ctx = CheckCtx {
            variant: Some(v.into()),
            ..CheckCtx::new(n)
        };
        let r = run_check(det, &ctx, false).unwrap();
        assert_eq!(r.verdict, Verdict::Zero, "{}", r.to_text());
    }
    let toy = find_check("toy_identity").unwrap();
    for r in 1..=4 {
        let rep = run_check(toy, &CheckCtx::new(r), false).unwrap();
        assert_eq!(rep.verdict, Verdict::Zero, "{}", rep.to_text());
    }
}

#[test]
fn numeric_block_det_with_more_trials() {
    let def = find_check("numeric_block_det").unwrap();
    for (n, m) in [(2, 2), (3, 2)] {
        let ctx = CheckCtx {
            variant: Some(format!("m={m},trials=50")),
            seed: 3,
            ..CheckCtx::new(n)
        };
        let r = run_check(def, &ctx, false).unwrap();
        assert_eq!(r.verdict, Verdict::Zero, "{}", r.to_text());
        assert_eq!(r.params["trials"], 50);
    }
}

#[test]
fn fuzz_small_run() {
    for kind in FUZZ_KINDS {
        let cfg = FuzzConfig {
            n: 2,
            count: 6,
            seed: 11,
            kind: Some(kind.to_string()),
            invariant: None,
        };
        let reports = fuzz(&cfg).unwrap();
        assert_eq!(reports.len(), FUZZ_INVARIANTS.len());
        let bad = failures(&reports);
        assert!(bad.is_empty(), "{}", bad.join("\n"));
    }
    let bad = FuzzConfig {
        kind: Some("nope".into()),
        ..FuzzConfig::default()
    };
    assert!(fuzz(&bad).is_err());
}

#[test]
fn golden_mismatch_is_reported() {
    let dir = std::env::temp_dir().join(format!("manin-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("newton_free_2.json"),
        r#"{"check":"newton","ring":"free(2,2)","exact":false,"components":{"t^1":"M[1,1]"}}"#,
    )
    .unwrap();
    let ctx = CheckCtx {
        ring: Some("free".into()),
        golden_dir: Some(dir.clone()),
        ..CheckCtx::new(2)
    };
    let r = run_check(find_check("newton").unwrap(), &ctx, false).unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(r.verdict, Verdict::GoldenMismatch);
    assert!(!r.passed());
}

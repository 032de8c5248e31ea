use contactsym::verify::{run_suite, Status, Suite, SuiteConfig};
use contactsym::{int, rat};

fn small(suites: &[Suite]) -> SuiteConfig {
    SuiteConfig {
        n_values: vec![1],
        k_max: 2,
        trials: 4,
        ..SuiteConfig::default()
    }
    .with_suites(suites)
}

#[test]
fn equal_configs_give_identical_reports() {
    let cfg = SuiteConfig {
        n_values: vec![1, 2],
        k_max: 2,
        trials: 3,
        base_degree: 2,
        ..SuiteConfig::default()
    };
    let a = run_suite(&cfg).without_timing().to_json();
    let b = run_suite(&cfg).without_timing().to_json();
    assert_eq!(a, b);
    let other = run_suite(&SuiteConfig { seed: 2, ..cfg }).without_timing();
    assert!(other.all_passed());
}

#[test]
fn zero_weight_at_k1_is_skipped_with_a_raised_error() {
    let cfg = SuiteConfig {
        n_values: vec![1],
        k_max: 1,
        deltas: vec![int(0)],
        trials: 3,
        ..SuiteConfig::default()
    }
    .with_suites(&[Suite::Projector]);
    let r = run_suite(&cfg);
    let laws: Vec<_> = r.by_id("projector-laws").collect();
    assert_eq!(laws.len(), 1);
    assert_eq!(laws[0].status, Status::Skipped);
    assert_eq!(laws[0].detail.as_deref(), Some("skipped: singular weight"));
    let raised: Vec<_> = r.by_id("projector-singular-error").collect();
    assert_eq!(raised.len(), 1);
    assert_eq!(raised[0].status, Status::Pass);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn corrupted_projector_coefficient_is_caught() {
    let cfg = SuiteConfig {
        corrupt_b: Some(rat(1, 7)),
        ..small(&[Suite::Projector])
    };
    let r = run_suite(&cfg);
    assert_eq!(r.exit_code(), 1);
    let failing: Vec<_> = r.failures().collect();
    assert!(!failing.is_empty());
    for c in failing {
        assert_eq!(c.id, "projector-laws");
        assert_eq!(c.detail.as_deref(), Some("p_k ∘ p_k ≠ p_k"));
        let text = c.counterexample.as_deref().expect("counterexample attached");
        contactsym::format::parse_symbol(text).expect("counterexample parses");
    }
}

#[test]
fn every_suite_runs_on_a_small_panel() {
    for s in Suite::ALL {
        let r = run_suite(&small(&[s]));
        assert!(!r.checks.is_empty(), "{s} produced no checks");
        assert!(r.all_passed(), "{s}:\n{}", r.summary());
        assert!(r.checks.iter().all(|c| c.suite == s));
    }
}

#[test]
fn suite_names_parse() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}

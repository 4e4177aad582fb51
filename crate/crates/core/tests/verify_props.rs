use std::collections::BTreeMap;

use neumann_bessel_core::bessel::EvalBudget;
use neumann_bessel_core::verify::{sweep, verify_all, GridSpec, IdSelection, Status, SweepConfig};

fn master_config() -> SweepConfig {
    let mut cfg = SweepConfig::new(IdSelection::List(vec!["master".into()]), EvalBudget::default());
    let mut grids = BTreeMap::new();
    grids.insert(
        "n".into(),
        GridSpec::Linear {
            min: 1.0,
            max: 4.0,
            count: 4,
        },
    );
    grids.insert(
        "p".into(),
        GridSpec::Linear {
            min: 0.0,
            max: 4.0,
            count: 5,
        },
    );
    grids.insert("z".into(), GridSpec::List(vec![0.0, 1.0, 5.0]));
    grids.insert("y".into(), GridSpec::List(vec![0.0, 1.0]));
    cfg.grids = grids;
    cfg.threshold = 1e-10;
    cfg
}

#[test]
fn master_sweep_has_no_failures() {
    let report = sweep(&master_config()).unwrap();
    assert_eq!(report.summary.failures, 0);
    // p > n points are outside the master domain.
    assert!(report.summary.count > 0 && report.summary.count + report.summary.skipped == 4 * 5 * 3 * 2);
}

#[test]
fn summary_is_consistent_with_records() {
    let report = sweep(&master_config()).unwrap();
    let max = report.records.iter().filter_map(|r| r.residual).fold(0.0, f64::max);
    assert_eq!(report.summary.max_residual, max);
    let failures = report
        .records
        .iter()
        .filter(|r| r.residual.is_none_or(|v| v > report.summary.threshold))
        .count();
    assert_eq!(report.summary.failures, failures);
    assert_eq!(report.summary.count, report.records.len());
}

#[test]
fn trivial_argument_sweep() {
    let mut cfg = SweepConfig::new(IdSelection::List(vec!["cos4k".into()]), EvalBudget::default());
    cfg.grids.insert("z".into(), GridSpec::List(vec![0.0]));
    let report = sweep(&cfg).unwrap();
    assert!(report.records.iter().all(|r| r.residual.unwrap() <= 2e-12));
}

#[test]
fn empty_grid_and_unknown_id_are_errors() {
    let mut cfg = SweepConfig::new(IdSelection::List(vec!["cos4k".into()]), EvalBudget::default());
    cfg.grids.insert("z".into(), GridSpec::List(vec![]));
    assert!(sweep(&cfg).is_err());
    let cfg = SweepConfig::new(IdSelection::List(vec!["no-such-id".into()]), EvalBudget::default());
    assert!(sweep(&cfg).is_err());
}

#[test]
fn sweep_is_deterministic() {
    let cfg = SweepConfig::new(IdSelection::All, EvalBudget::default());
    let a = sweep(&cfg).unwrap().to_json();
    let b = sweep(&cfg).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn default_verification_passes() {
    let report = verify_all(EvalBudget::default(), 1e-10).unwrap();
    let failed: Vec<_> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.clone())
        .collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(report.identities.summary.failures, 0);
    assert_eq!(report.status, Status::Pass);
}

#[test]
fn loose_tolerance_still_passes() {
    let budget = EvalBudget {
        eps: 1e-2,
        ..EvalBudget::default()
    };
    let report = verify_all(budget, 100.0 * budget.eps).unwrap();
    assert_eq!(report.status, Status::Pass);
}

#[test]
fn zero_threshold_fails() {
    let report = verify_all(EvalBudget::default(), 0.0).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert!(report.identities.summary.failures > 0);
}

#[test]
fn sevenfold_finding_is_reported_not_asserted() {
    let report = verify_all(EvalBudget::default(), 1e-10).unwrap();
    let seven = &report.findings.sevenfold;
    assert_eq!(seven.candidates.len(), 2);
    assert!(seven.innermost.value.is_finite());
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert!(json["findings"]["sevenfold"]["candidates"].is_array());
}

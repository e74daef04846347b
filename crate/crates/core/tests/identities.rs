use bianchi::identities::{self, CheckKind, IdentityError, Status, VerifyConfig};
use num_rational::Rational64;

#[test]
fn default_run_passes() {
    let report = identities::run_all(&VerifyConfig::default()).unwrap();
    assert_eq!(report.checks.len(), identities::registry().len());
    let failing: Vec<_> = report.checks.iter().filter(|c| !c.passed()).map(|c| &c.name).collect();
    assert!(failing.is_empty(), "{failing:?}");
}

#[test]
fn every_exact_mutation_is_caught() {
    let cfg = VerifyConfig { series_order: Rational64::from_integer(15), ..VerifyConfig::default() };
    for check in identities::registry().iter().filter(|c| c.kind != CheckKind::Numeric) {
        let r = identities::run_identity_mutated(&check.name, &cfg).unwrap();
        assert_eq!(r.status, Status::Fail, "{}", check.name);
        if check.kind == CheckKind::ExactSeries {
            assert!(r.first_failing_exponent.is_some(), "{}", check.name);
        }
    }
}

#[test]
fn numeric_checks_have_no_mutation() {
    assert!(matches!(
        identities::run_identity_mutated("jacobi-A4", &VerifyConfig::default()),
        Err(IdentityError::NoMutation(_))
    ));
}

#[test]
fn reports_are_deterministic() {
    let cfg = VerifyConfig { samples: 5, seed: 123, ..VerifyConfig::default() };
    let names = ["addition-eq20", "chain-eq7", "five-torsion", "weierstrass-map"];
    let a = identities::run_selected(&names, &cfg).unwrap().to_json(false);
    let b = identities::run_selected(&names, &cfg).unwrap().to_json(false);
    assert_eq!(a, b);
    let other = VerifyConfig { seed: 124, ..cfg };
    let c = identities::run_selected(&names, &other).unwrap().to_json(false);
    assert_ne!(a["checks"], c["checks"]);
}

#[test]
fn invalid_configuration_is_rejected() {
    let cfg = VerifyConfig { samples: 0, ..VerifyConfig::default() };
    assert!(matches!(identities::run_all(&cfg), Err(IdentityError::InvalidConfig(_))));
    assert!(matches!(identities::find("nope"), Err(IdentityError::UnknownName(_))));
}

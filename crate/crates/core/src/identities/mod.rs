//! Registry of named identities, each an executable check with a uniform
//! configuration and a machine-readable report.
//!
//! Exact checks compare q-expansions or polynomials coefficient by coefficient.
//! Numeric checks evaluate theta functions and curve maps at seeded random
//! points and report the worst relative residual.

mod exact;
mod numeric;

use std::hash::Hasher;
use std::sync::OnceLock;
use std::time::Instant;

use fnv::FnvHasher;
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use numeric::{duplication_cubic_residual, EvalError, Sample, ADDITION_TABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownName(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("identity `{0}` has no coefficient mutation")]
    NoMutation(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ExactSeries,
    ExactPoly,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Sampling region for `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TauRegion {
    pub re: [f64; 2],
    pub im: [f64; 2],
}

impl Default for TauRegion {
    fn default() -> Self {
        TauRegion { re: [-0.5, 0.5], im: [0.8, 2.0] }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    #[serde(serialize_with = "ser_rational")]
    pub series_order: Rational64,
    pub tol: f64,
    pub samples: u32,
    pub seed: u64,
    pub tau_region: TauRegion,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            series_order: Rational64::from_integer(30),
            tol: 1e-9,
            samples: 20,
            seed: 7,
            tau_region: TauRegion::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), IdentityError> {
        let bad = |m: &str| Err(IdentityError::InvalidConfig(m.into()));
        if self.series_order < Rational64::from_integer(10) {
            return bad("series_order must be at least 10");
        }
        if !(self.tol > 0.0 && self.tol < 1e-4) {
            return bad("tol must lie in (0, 1e-4)");
        }
        if self.samples < 1 {
            return bad("samples must be at least 1");
        }
        let TauRegion { re, im } = self.tau_region;
        if !(re[0] <= re[1] && im[0] <= im[1] && im[0] > 0.0 && re.iter().chain(&im).all(|v| v.is_finite())) {
            return bad("tau_region must be a nonempty rectangle in the upper half-plane");
        }
        Ok(())
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_exponent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Results of a batch of checks, sorted by name.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl Report {
    fn assemble(config: &VerifyConfig, mut checks: Vec<CheckResult>, elapsed_ms: u64) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        Report { config: config.clone(), checks, passed, failed, elapsed_ms }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// JSON form; wall time is included only on request so that reruns with the
    /// same configuration produce identical output.
    pub fn to_json(&self, with_timing: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if with_timing {
            v["elapsed_ms"] = self.elapsed_ms.into();
        }
        v
    }
}

enum Executor {
    Series(exact::ResidualFn),
    Poly(fn(bool) -> Option<usize>),
    Numeric { arity: usize, f: numeric::NumericFn },
}

/// A named identity with its executor.
pub struct IdentityCheck {
    pub name: String,
    pub kind: CheckKind,
    pub description: String,
    exec: Executor,
}

impl std::fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCheck").field("name", &self.name).field("kind", &self.kind).finish()
    }
}

fn series(name: &str, description: &'static str, f: exact::ResidualFn) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        kind: CheckKind::ExactSeries,
        description: description.into(),
        exec: Executor::Series(f),
    }
}

fn build_registry() -> Vec<IdentityCheck> {
    use exact::*;
    let mut r = vec![
        series("sym-e1", "g1 + g2 + g3 = 1", sym_e1),
        series("sym-e2", "g1 g2 + g2 g3 + g3 g1 = phi^5", sym_e2),
        series("sym-e3", "g1 g2 g3 = -phi^5", sym_e3),
        series("cubic-root-g1", "g1^3 - g1^2 + phi^5 g1 + phi^5 = 0", cubic_root_g1),
        series("cubic-root-g2", "g2^3 - g2^2 + phi^5 g2 + phi^5 = 0", cubic_root_g2),
        series("cubic-root-g3", "g3^3 - g3^2 + phi^5 g3 + phi^5 = 0", cubic_root_g3),
        series("delta-squared", "delta^2 = 4 phi^5 (1 - 11 phi^5 - phi^10)", delta_squared),
        series("g1-from-XY", "g1 = (P - Y^2)/(P + Y^2), X = phi, Y = delta/(2 g1), P = 1 - 11 X^5 - X^10", g1_from_xy),
        series("defeq-gamma10", "Y^2 (P - Y^2)^2 = X^5 P (P + Y^2)^2, X = phi, Y = delta/(2 g1)", defeq_gamma10),
        series("ramanujan-relation", "-g2(2 tau) = (1 - g1)/(1 + g1)", ramanujan_relation),
        series("g1g2-relation", "X^2 Y + X Y^2 + X^2 + Y^2 - X - Y = 0 at X = g1, Y = g2", g1g2_relation),
        series(
            "g1g2-weierstrass",
            "Y^2 = X^3 + X^2 - X at X = (2-s)/s, Y = (g1-g2)(2-s)/s^2, s = g1+g2",
            g1g2_weierstrass,
        ),
        series("G2-defeq", "Y^2 = X^3 - 11 X^2 - X at X = -phi^5, Y = delta/2", g2_defeq),
        series("bring-kk", "Y^3 - Y^2 + X^5 Y + X^5 = 0 at X = phi, Y = g1", bring_kk),
        series("genus5-defeq", "Y^2 = X^5 (1 - 11 X^5 - X^10) at X = phi, Y = delta/2", genus5_defeq),
        series("phi5-from-g1", "phi^5 = (g1^2 - g1^3)/(1 + g1)", phi5_from_g1),
        series("j5-phi", "j5 = 1/phi^5 - 11 - phi^5", j5_phi),
        series("j5-j10", "j5 = (j10 + 1)(j10 - 4)^2 / j10^2", j5_j10),
        series("j10-g2", "j10 = g2(2 tau) - 1/g2(2 tau)", j10_g2),
        series("j10-g1", "j10 = 4 g1 / (1 - g1^2)", j10_g1),
        series("hulek-craig-2tors", "2-torsion coordinates satisfy the Hulek-Craig plane quintic", hulek_craig_2tors),
        series(
            "bring2-subst",
            "phi^4 x1^2 x2 + phi^3 x1^3 + phi x2^3 - x1 x2^2 = (x1^3/phi^2) K(phi x2/x1)",
            bring2_subst,
        ),
        series("weber-model", "y^5 (x - 1) = (x + 1) x^2 at x = -g_i, y = -phi", weber_model),
        series("j-cross-check", "j phi^5 (1 - 11 phi^5 - phi^10)^5 = P20(phi)^3", j_cross_check),
        IdentityCheck {
            name: "weierstrass-discriminant".into(),
            kind: CheckKind::ExactPoly,
            description: "(P20^3 - P30^2)/1728 = phi^5 (1 - 11 phi^5 - phi^10)^5".into(),
            exec: Executor::Poly(weierstrass_discriminant),
        },
        IdentityCheck {
            name: "cubic-discriminant-factorization".into(),
            kind: CheckKind::ExactPoly,
            description: "discriminant of x^3 - x^2 + phi^5 x + phi^5: general formula, closed form, three factors"
                .into(),
            exec: Executor::Poly(cubic_discriminant_factorization),
        },
    ];
    for (name, arity, description, f) in numeric::checks() {
        r.push(IdentityCheck { name, kind: CheckKind::Numeric, description, exec: Executor::Numeric { arity, f } });
    }
    r.sort_by(|a, b| a.name.cmp(&b.name));
    r
}

/// Every check, sorted by name.
pub fn registry() -> &'static [IdentityCheck] {
    static REGISTRY: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

pub fn find(name: &str) -> Result<&'static IdentityCheck, IdentityError> {
    registry().iter().find(|c| c.name == name).ok_or_else(|| IdentityError::UnknownName(name.into()))
}

/// Seed of the random stream for one check; independent of execution order.
pub fn check_seed(seed: u64, name: &str) -> u64 {
    let mut h = FnvHasher::default();
    h.write(name.as_bytes());
    seed ^ h.finish()
}

/// The `samples` points drawn for a check: `tau` uniform in the region and each
/// free argument `u + v tau` with `u, v` uniform in `[-1/2, 1/2]`.
pub fn draw_samples(cfg: &VerifyConfig, name: &str, arity: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(cfg.seed, name));
    let TauRegion { re, im } = cfg.tau_region;
    (0..cfg.samples)
        .map(|_| {
            let tau = Complex64::new(rng.gen_range(re[0]..=re[1]), rng.gen_range(im[0]..=im[1]));
            let args = (0..arity).map(|_| rng.gen_range(-0.5..=0.5) + tau * rng.gen_range(-0.5..=0.5)).collect();
            Sample { tau, args }
        })
        .collect()
}

impl IdentityCheck {
    fn blank(&self, status: Status) -> CheckResult {
        CheckResult {
            name: self.name.clone(),
            kind: self.kind,
            status,
            worst_residual: None,
            first_failing_exponent: None,
            order: None,
            samples: None,
            error: None,
        }
    }

    fn run(&self, cfg: &VerifyConfig, mutate: bool) -> CheckResult {
        match &self.exec {
            Executor::Series(f) => {
                let first = exact::evaluate(*f, cfg.series_order, mutate);
                let mut r = self.blank(if first.is_none() { Status::Pass } else { Status::Fail });
                r.first_failing_exponent = first.map(|e| e.to_string());
                r.order = Some(cfg.series_order.to_string());
                r
            }
            Executor::Poly(f) => {
                let first = f(mutate);
                let mut r = self.blank(if first.is_none() { Status::Pass } else { Status::Fail });
                r.first_failing_exponent = first.map(|e| e.to_string());
                r
            }
            Executor::Numeric { arity, f } => {
                let mut worst = 0.0f64;
                let mut error = None;
                for s in draw_samples(cfg, &self.name, *arity) {
                    match f(&s) {
                        Ok(v) if v.is_nan() => worst = f64::INFINITY,
                        Ok(v) => worst = worst.max(v),
                        Err(e) => {
                            error = Some(format!("at tau = {}: {e}", s.tau));
                            break;
                        }
                    }
                }
                let ok = error.is_none() && worst < cfg.tol;
                let mut r = self.blank(if ok { Status::Pass } else { Status::Fail });
                if error.is_none() {
                    r.worst_residual = Some(worst);
                }
                r.error = error;
                r.samples = Some(cfg.samples);
                r
            }
        }
    }
}

/// Runs one check by name.
pub fn run_identity(name: &str, cfg: &VerifyConfig) -> Result<CheckResult, IdentityError> {
    cfg.validate()?;
    Ok(find(name)?.run(cfg, false))
}

/// Runs an exact check with one coefficient deliberately altered; it should fail.
pub fn run_identity_mutated(name: &str, cfg: &VerifyConfig) -> Result<CheckResult, IdentityError> {
    cfg.validate()?;
    let check = find(name)?;
    if check.kind == CheckKind::Numeric {
        return Err(IdentityError::NoMutation(name.into()));
    }
    Ok(check.run(cfg, true))
}

/// Runs the named checks; entries are sorted by name.
pub fn run_selected(names: &[&str], cfg: &VerifyConfig) -> Result<Report, IdentityError> {
    cfg.validate()?;
    let checks = names.iter().map(|n| find(n)).collect::<Result<Vec<_>, _>>()?;
    let start = Instant::now();
    let results = run_many(&checks, cfg);
    Ok(Report::assemble(cfg, results, start.elapsed().as_millis() as u64))
}

/// Runs every check.
pub fn run_all(cfg: &VerifyConfig) -> Result<Report, IdentityError> {
    cfg.validate()?;
    let checks: Vec<_> = registry().iter().collect();
    let start = Instant::now();
    let results = run_many(&checks, cfg);
    Ok(Report::assemble(cfg, results, start.elapsed().as_millis() as u64))
}

#[cfg(feature = "parallel")]
fn run_many(checks: &[&IdentityCheck], cfg: &VerifyConfig) -> Vec<CheckResult> {
    use rayon::prelude::*;
    checks.par_iter().map(|c| c.run(cfg, false)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_many(checks: &[&IdentityCheck], cfg: &VerifyConfig) -> Vec<CheckResult> {
    checks.iter().map(|c| c.run(cfg, false)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let r = registry();
        assert_eq!(r.len(), 69);
        let mut names: Vec<_> = r.iter().map(|c| c.name.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), 69);
        assert_eq!(r.iter().filter(|c| c.name.starts_with("addition-eq")).count(), 25);
        assert_eq!(r.iter().filter(|c| c.kind == CheckKind::ExactSeries).count(), 24);
        assert_eq!(r.iter().filter(|c| c.kind == CheckKind::ExactPoly).count(), 2);
    }

    #[test]
    fn config_validation() {
        let mut c = VerifyConfig::default();
        assert!(c.validate().is_ok());
        c.tol = 1e-3;
        assert!(c.validate().is_err());
        c = VerifyConfig { series_order: Rational64::from_integer(9), ..Default::default() };
        assert!(c.validate().is_err());
        c = VerifyConfig { samples: 0, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(run_identity("nope", &VerifyConfig::default()), Err(IdentityError::UnknownName("nope".into())));
    }

    #[test]
    fn seeds_differ_per_check() {
        assert_ne!(check_seed(7, "sym-e1"), check_seed(7, "sym-e2"));
        let cfg = VerifyConfig::default();
        let a = draw_samples(&cfg, "jacobi-A4", 4);
        let b = draw_samples(&cfg, "jacobi-A4", 4);
        assert_eq!(a.len(), 20);
        assert_eq!(a[3].args, b[3].args);
        for s in &a {
            assert!((0.8..=2.0).contains(&s.tau.im));
        }
    }

    #[test]
    fn numeric_check_reports_samples() {
        let r = run_identity("bianchi-quadrics-theta", &VerifyConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.samples, Some(20));
        assert!(r.first_failing_exponent.is_none());
    }

    #[test]
    fn poly_checks_and_mutations() {
        let cfg = VerifyConfig::default();
        for name in ["weierstrass-discriminant", "cubic-discriminant-factorization"] {
            assert!(run_identity(name, &cfg).unwrap().passed());
            let m = run_identity_mutated(name, &cfg).unwrap();
            assert_eq!(m.status, Status::Fail);
            assert!(m.first_failing_exponent.is_some());
        }
        assert!(matches!(run_identity_mutated("jacobi-A4", &cfg), Err(IdentityError::NoMutation(_))));
    }
}

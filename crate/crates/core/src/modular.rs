//! Exact q-expansions of the modular functions built from the Rogers-Ramanujan
//! function `phi`, Dedekind eta quotients and `j`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{pochhammer_product, PochhammerFactor, PuiseuxSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("unknown series name `{0}`; known: {known}", known = NamedFunction::ALL.map(|f| f.name()).join(", "))]
    UnknownName(String),
}

/// The named series available through [`named_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedFunction {
    Phi,
    Phi5,
    G1,
    G2,
    G3,
    Delta,
    J5,
    J10,
    J,
    Eta,
    NegG2TwoTau,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 11] = [
        NamedFunction::Phi,
        NamedFunction::Phi5,
        NamedFunction::G1,
        NamedFunction::G2,
        NamedFunction::G3,
        NamedFunction::Delta,
        NamedFunction::J5,
        NamedFunction::J10,
        NamedFunction::J,
        NamedFunction::Eta,
        NamedFunction::NegG2TwoTau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedFunction::Phi => "phi",
            NamedFunction::Phi5 => "phi5",
            NamedFunction::G1 => "g1",
            NamedFunction::G2 => "g2",
            NamedFunction::G3 => "g3",
            NamedFunction::Delta => "delta",
            NamedFunction::J5 => "j5",
            NamedFunction::J10 => "j10",
            NamedFunction::J => "j",
            NamedFunction::Eta => "eta",
            NamedFunction::NegG2TwoTau => "neg_g2_2tau",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            NamedFunction::Phi => {
                "Rogers-Ramanujan function q^(1/5) prod (1-q^(5n-1))(1-q^(5n-4))/((1-q^(5n-2))(1-q^(5n-3)))"
            }
            NamedFunction::Phi5 => "phi^5, hauptmodul for Gamma1(5)",
            NamedFunction::G1 => "g1 = phi(tau)^2 / phi(2 tau)",
            NamedFunction::G2 => "g2 = -phi(tau/2) phi(tau)^2",
            NamedFunction::G3 => "g3 = phi(tau) phi(2 tau) / phi(tau/2)",
            NamedFunction::Delta => "delta = (g1-g2)(g2-g3)(g3-g1)",
            NamedFunction::J5 => "j5 = eta(tau)^6 / eta(5 tau)^6",
            NamedFunction::J10 => "j10 = eta(2 tau) eta(5 tau)^5 / (eta(tau) eta(10 tau)^5)",
            NamedFunction::J => "Klein j = E4^3 / eta^24",
            NamedFunction::Eta => "Dedekind eta q^(1/24) prod (1-q^n)",
            NamedFunction::NegG2TwoTau => "-g2(2 tau) = phi(tau) phi(2 tau)^2",
        }
    }

    /// Exact series known modulo `q^order`.
    pub fn series(self, order: Rational64) -> PuiseuxSeries {
        match self {
            NamedFunction::Phi => phi_series(order),
            NamedFunction::Phi5 => with_margin(order, |w| phi_series(w).pow(5).expect("phi is nonzero")),
            NamedFunction::G1 => gi_series(1, order),
            NamedFunction::G2 => gi_series(2, order),
            NamedFunction::G3 => gi_series(3, order),
            NamedFunction::Delta => delta_series(order),
            NamedFunction::J5 => eta_quotient_series(&[(1, 6), (5, -6)], order),
            NamedFunction::J10 => eta_quotient_series(&[(2, 1), (5, 5), (1, -1), (10, -5)], order),
            NamedFunction::J => j_series(order),
            NamedFunction::Eta => eta_quotient_series(&[(1, 1)], order),
            NamedFunction::NegG2TwoTau => {
                let half = order / 2;
                PuiseuxSeries::neg(&gi_series(2, half).subst_qpow(Rational64::from_integer(2)))
            }
        }
    }
}

impl fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedFunction {
    type Err = ModularError;
    fn from_str(s: &str) -> Result<Self, ModularError> {
        NamedFunction::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| ModularError::UnknownName(s.to_string()))
    }
}

// recompute at a larger working order until the result reaches `order`
fn with_margin(order: Rational64, f: impl Fn(Rational64) -> PuiseuxSeries) -> PuiseuxSeries {
    let mut w = order;
    loop {
        let s = f(w);
        if s.order() >= order {
            return s.truncate(order).simplify_ram();
        }
        w += order - s.order() + Rational64::one();
    }
}

fn product_or_zero(factors: &[PochhammerFactor], prefactor: Rational64, order: Rational64) -> PuiseuxSeries {
    if order <= prefactor {
        return PuiseuxSeries::zero(order);
    }
    pochhammer_product(factors, prefactor, order)
}

/// `phi(tau) = q^(1/5) prod (1-q^(5n-1))(1-q^(5n-4)) / ((1-q^(5n-2))(1-q^(5n-3)))`.
pub fn phi_series(order: Rational64) -> PuiseuxSeries {
    let factors = [
        PochhammerFactor::new(1, 5, 1),
        PochhammerFactor::new(4, 5, 1),
        PochhammerFactor::new(2, 5, -1),
        PochhammerFactor::new(3, 5, -1),
    ];
    product_or_zero(&factors, Rational64::new(1, 5), order)
}

/// `g1 = phi^2/phi(2 tau)`, `g2 = -phi(tau/2) phi^2`, `g3 = phi phi(2 tau)/phi(tau/2)`.
pub fn gi_series(i: u8, order: Rational64) -> PuiseuxSeries {
    let two = Rational64::from_integer(2);
    let half = Rational64::new(1, 2);
    with_margin(order, |w| {
        let phi = phi_series(w);
        match i {
            1 => {
                let phi_2 = phi_series(w / 2).subst_qpow(two);
                PuiseuxSeries::mul(&phi, &phi).div(&phi_2).expect("phi(2 tau) is nonzero")
            }
            2 => {
                let phi_half = phi_series(w * 2).subst_qpow(half);
                PuiseuxSeries::neg(&PuiseuxSeries::mul(&phi_half, &PuiseuxSeries::mul(&phi, &phi)))
            }
            3 => {
                let phi_2 = phi_series(w / 2).subst_qpow(two);
                let phi_half = phi_series(w * 2).subst_qpow(half);
                PuiseuxSeries::mul(&phi, &phi_2).div(&phi_half).expect("phi(tau/2) is nonzero")
            }
            _ => panic!("g_i is defined for i = 1, 2, 3"),
        }
    })
}

/// `delta = (g1 - g2)(g2 - g3)(g3 - g1)`.
pub fn delta_series(order: Rational64) -> PuiseuxSeries {
    with_margin(order, |w| {
        let [g1, g2, g3] = [1, 2, 3].map(|i| gi_series(i, w));
        PuiseuxSeries::mul(&PuiseuxSeries::mul(&(&g1 - &g2), &(&g2 - &g3)), &(&g3 - &g1))
    })
}

/// `prod eta(m tau)^e` over `(m, e)` pairs.
///
/// The integer-exponent product is expanded once and shifted by `sum m e / 24`,
/// which keeps the ramification at the denominator of that shift.
pub fn eta_quotient_series(spec: &[(i64, i64)], order: Rational64) -> PuiseuxSeries {
    assert!(spec.iter().all(|&(m, _)| m >= 1), "eta scales must be positive");
    let prefactor: Rational64 = spec.iter().map(|&(m, e)| Rational64::new(m * e, 24)).sum();
    let factors: Vec<PochhammerFactor> =
        spec.iter().filter(|&&(_, e)| e != 0).map(|&(m, e)| PochhammerFactor::new(0, m, e)).collect();
    product_or_zero(&factors, prefactor, order)
}

fn sigma3(n: u64) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(3);
        }
    }
    s
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(order: Rational64) -> PuiseuxSeries {
    let len = order.ceil().to_integer().max(0) as usize;
    let coeffs: Vec<BigRational> = (0..len)
        .map(|n| if n == 0 { BigRational::one() } else { BigRational::from_integer(sigma3(n as u64) * 240) })
        .collect();
    if coeffs.is_empty() {
        return PuiseuxSeries::zero(order);
    }
    PuiseuxSeries::from_parts(1, 0, len as i64, coeffs).expect("dense coefficients").truncate(order)
}

/// `j = E4^3 / eta^24`.
pub fn j_series(order: Rational64) -> PuiseuxSeries {
    let inv_delta = product_or_zero(&[PochhammerFactor::all(-24)], Rational64::from_integer(-1), order);
    let e4 = eisenstein_e4(order + 1);
    let e4_3 = PuiseuxSeries::mul(&PuiseuxSeries::mul(&e4, &e4), &e4);
    PuiseuxSeries::mul(&e4_3, &inv_delta).truncate(order)
}

type CacheCell = Arc<OnceLock<PuiseuxSeries>>;

fn cache() -> &'static Mutex<HashMap<(NamedFunction, Rational64), CacheCell>> {
    static CACHE: OnceLock<Mutex<HashMap<(NamedFunction, Rational64), CacheCell>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`NamedFunction::series`], truncated to exactly `order`.
///
/// A finished computation at a higher order serves lower requests; each
/// `(name, order)` key is computed at most once even under concurrent access.
pub fn named(f: NamedFunction, order: Rational64) -> PuiseuxSeries {
    let cell = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        let best = map
            .iter()
            .filter(|((g, o), c)| *g == f && *o >= order && c.get().is_some())
            .min_by_key(|((_, o), _)| *o)
            .map(|(_, c)| c.clone());
        match best {
            Some(c) => c,
            None => map.entry((f, order)).or_default().clone(),
        }
    };
    cell.get_or_init(|| f.series(order)).truncate(order)
}

/// [`named`] by name.
pub fn named_series(name: &str, order: Rational64) -> Result<PuiseuxSeries, ModularError> {
    Ok(named(name.parse()?, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn assert_terms(s: &PuiseuxSeries, terms: &[(Rational64, i64)]) {
        for &(e, c) in terms {
            assert_eq!(s.coeff(e).unwrap(), int(c), "coefficient of q^{e}");
        }
    }

    #[test]
    fn phi_leading_terms() {
        let phi = phi_series(r(11, 1));
        assert_eq!(phi.ram(), 5);
        assert_terms(&phi, &[(r(1, 5), 1), (r(6, 5), -1), (r(11, 5), 1), (r(16, 5), 0), (r(21, 5), -1), (r(51, 5), 2)]);
    }

    #[test]
    fn eta_quotients() {
        let j5 = eta_quotient_series(&[(1, 6), (5, -6)], r(4, 1));
        assert_terms(&j5, &[(r(-1, 1), 1), (r(0, 1), -6), (r(1, 1), 9), (r(2, 1), 10), (r(3, 1), -30)]);
        assert_eq!(j5.ram(), 1);
        let one = eta_quotient_series(&[(3, 0)], r(5, 1));
        assert_eq!(one, PuiseuxSeries::one(r(5, 1)));
    }

    #[test]
    fn j_first_terms() {
        let j = j_series(r(3, 1));
        assert_terms(&j, &[(r(-1, 1), 1), (r(0, 1), 744), (r(1, 1), 196884), (r(2, 1), 21493760)]);
        assert_eq!(j.order(), r(3, 1));
    }

    #[test]
    fn g_series_reach_requested_order() {
        for i in 1..=3 {
            let g = gi_series(i, r(7, 1));
            assert_eq!(g.order(), r(7, 1));
            assert!(120 % g.ram() == 0);
        }
    }

    #[test]
    fn names_round_trip() {
        for f in NamedFunction::ALL {
            assert_eq!(f.name().parse::<NamedFunction>().unwrap(), f);
        }
        assert!(matches!(named_series("psi", r(3, 1)), Err(ModularError::UnknownName(_))));
    }

    #[test]
    fn cache_serves_lower_orders() {
        let a = named(NamedFunction::G3, r(12, 1));
        let b = named(NamedFunction::G3, r(6, 1));
        assert_eq!(b.order(), r(6, 1));
        assert!(a.agrees_with(&b));
    }
}

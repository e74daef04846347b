use bianchi::congruence::{self, ModMatrix, SubgroupSpec};
use bianchi::curve::{add, double, negate, neutral, relative_quadric_residual, P4Point};
use bianchi::exact::{PuiseuxSeries, Rational64};
use bianchi::theta::{phi_numeric, theta_vector};
use num_complex::Complex64;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = PuiseuxSeries> {
    (1u32..=5, -3i64..3, prop::collection::vec(-9i64..=9, 1..12)).prop_map(|(ram, lo, c)| {
        let trunc = lo + 12;
        PuiseuxSeries::from_int_coeffs(ram, lo, &c, trunc)
    })
}

// leading coefficient +-1 so that the inverse stays integral
fn unit_series() -> impl Strategy<Value = PuiseuxSeries> {
    (1u32..=5, prop::bool::ANY, prop::collection::vec(-9i64..=9, 0..10)).prop_map(|(ram, neg, rest)| {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(rest);
        PuiseuxSeries::from_int_coeffs(ram, 0, &c, 12)
    })
}

fn tau_and_z() -> impl Strategy<Value = (Complex64, Complex64)> {
    (-0.5f64..0.5, 0.8f64..2.0, -0.5f64..0.5, -0.5f64..0.5).prop_map(|(a, b, u, v)| {
        let tau = Complex64::new(a, b);
        (tau, u + v * tau)
    })
}

fn point(z: Complex64, tau: Complex64) -> P4Point<Complex64> {
    P4Point::new(theta_vector(z, tau).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert!(a.add(&b).agrees_with(&b.add(&a)));
        prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
        prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn series_inverse(a in unit_series()) {
        let inv = a.inv().unwrap();
        let one = PuiseuxSeries::one(a.order());
        prop_assert!(a.mul(&inv).agrees_with(&one));
        prop_assert!(a.pow(-2).unwrap().agrees_with(&inv.mul(&inv)));
    }

    #[test]
    fn substitution_is_multiplicative(a in series(), b in series(), k in 1i64..4) {
        let r = Rational64::from_integer(k);
        prop_assert!(a.mul(&b).subst_qpow(r).agrees_with(&a.subst_qpow(r).mul(&b.subst_qpow(r))));
    }

    #[test]
    fn group_law_matches_theta_addition((tau, x) in tau_and_z(), u in -0.5f64..0.5, v in -0.5f64..0.5) {
        let y = u + v * tau;
        let phi = phi_numeric(tau).unwrap();
        let (p, q) = (point(x, tau), point(y, tau));
        prop_assert!(relative_quadric_residual(&p, &phi).unwrap() < 1e-10);
        prop_assert!(add(&p, &q).unwrap().projective_distance(&point(x + y, tau)) < 1e-9);
        prop_assert!(negate(&p).projective_distance(&point(-x, tau)) < 1e-9);
        prop_assert!(double(&p).unwrap().projective_distance(&add(&p, &p).unwrap()) < 1e-9);
        prop_assert!(add(&p, &negate(&p)).unwrap().projective_distance(&neutral(&phi)) < 1e-9);
    }

    #[test]
    fn projective_distance_is_scale_invariant((tau, x) in tau_and_z(), re in -3.0f64..3.0, im in 0.1f64..3.0) {
        let p = point(x, tau);
        let s = Complex64::new(re, im);
        let scaled = P4Point::new(p.x.map(|c| c * s)).unwrap();
        prop_assert!(p.projective_distance(&scaled) < 1e-24);
    }

    #[test]
    fn matrix_group_axioms(a in 0i64..10, b in 0i64..10, c in 0i64..10, n in prop::sample::select(vec![2u32, 5, 10])) {
        // complete (a, b) with d solving ad - bc = 1 when possible
        let m = (0..n as i64).find_map(|d| ModMatrix::new(a, b, c, d, n));
        if let Some(m) = m {
            let id = ModMatrix::identity(n);
            prop_assert_eq!(m.mul(&m.inverse()), id);
            prop_assert_eq!(m.mul(&ModMatrix::s(n)).mul(&ModMatrix::t(n)), m.mul(&ModMatrix::s(n).mul(&ModMatrix::t(n))));
            prop_assert_eq!(m.neg().neg(), m);
        }
    }
}

#[test]
fn index_is_multiplicative_along_chains() {
    let chains = [
        ["Gamma(10)", "G1", "Gamma1(5)"],
        ["Gamma(10)", "G1", "G2"],
        ["G1", "G2", "Gamma1(5)"],
        ["Gamma(10)", "G3", "Gamma(5)"],
        ["Gamma(10)", "G4", "Gamma(5)"],
        ["Gamma(5)", "Gamma1(5)", "Gamma0(5)"],
        ["Gamma0(10)", "Gamma0(5)", "SL2(Z)"],
    ];
    for [a, b, c] in chains {
        let [a, b, c]: [SubgroupSpec; 3] = [a, b, c].map(|s| s.parse().unwrap());
        let ab = congruence::subgroup_report(&a, &b, 10).unwrap().index;
        let bc = congruence::subgroup_report(&b, &c, 10).unwrap().index;
        let ac = congruence::subgroup_report(&a, &c, 10).unwrap().index;
        assert_eq!(ab * bc, ac, "{} < {} < {}", a.name(), b.name(), c.name());
    }
}

#[test]
fn group_orders_agree_with_crt() {
    for n in [2, 3, 4, 5, 6, 10, 12, 15] {
        let direct = congruence::enumerate_group(n).unwrap();
        let crt = congruence::enumerate_group_crt(n).unwrap();
        assert_eq!(direct.len(), congruence::sl2_order(n));
        assert_eq!(direct, crt);
    }
}

#[test]
fn genus_is_stable_under_larger_modulus() {
    for name in ["Gamma0(5)", "Gamma1(5)", "Gamma(5)"] {
        let spec: SubgroupSpec = name.parse().unwrap();
        assert_eq!(congruence::genus_data(&spec, 5).unwrap(), congruence::genus_data(&spec, 10).unwrap());
    }
}

//! Identities between q-expansions, checked coefficient by coefficient.
//!
//! Each residual is a polynomial expression in the named series with all
//! denominators cleared; `mutate` replaces one integer coefficient so the
//! residual is provably nonzero.

use num_rational::Rational64;

use crate::curve::{two_torsion_points_series, P4Point};
use crate::exact::{int, PuiseuxSeries, QPoly};
use crate::modular::{named, NamedFunction as N};

pub(crate) type ResidualFn = fn(Rational64, bool) -> Vec<PuiseuxSeries>;

fn k(c: i64, w: Rational64) -> PuiseuxSeries {
    PuiseuxSeries::constant(int(c), w + 2)
}

fn pick(mutate: bool, good: i64, bad: i64) -> i64 {
    if mutate {
        bad
    } else {
        good
    }
}

fn pw(s: &PuiseuxSeries, n: i64) -> PuiseuxSeries {
    s.pow(n).expect("nonnegative power")
}

fn g(i: u8, w: Rational64) -> PuiseuxSeries {
    named([N::G1, N::G2, N::G3][i as usize - 1], w)
}

fn phi(w: Rational64) -> PuiseuxSeries {
    named(N::Phi, w)
}

fn phi5(w: Rational64) -> PuiseuxSeries {
    named(N::Phi5, w)
}

// 1 - c phi^5 - phi^10 with c = 11 unless mutated
fn p_disc(w: Rational64, c: i64) -> PuiseuxSeries {
    let t = phi5(w);
    &(&k(1, w) - &(&k(c, w) * &t)) - &(&t * &t)
}

pub(crate) fn sym_e1(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    vec![&(&(&g(1, w) + &g(2, w)) + &g(3, w)) - &k(pick(m, 1, 2), w)]
}

pub(crate) fn sym_e2(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let (a, b, c) = (g(1, w), g(2, w), g(3, w));
    let e2 = &(&(&a * &b) + &(&b * &c)) + &(&c * &a);
    vec![&e2 - &(&k(pick(m, 1, 2), w) * &phi5(w))]
}

pub(crate) fn sym_e3(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let e3 = &(&g(1, w) * &g(2, w)) * &g(3, w);
    vec![&e3 + &(&k(pick(m, 1, 2), w) * &phi5(w))]
}

// xi^3 - c xi^2 + phi^5 xi + phi^5
fn cubic_at(xi: &PuiseuxSeries, w: Rational64, c: i64) -> PuiseuxSeries {
    let t = phi5(w);
    let xi2 = xi * xi;
    &(&(&(&xi2 * xi) - &(&k(c, w) * &xi2)) + &(&t * xi)) + &t
}

pub(crate) fn cubic_root_g1(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    vec![cubic_at(&g(1, w), w, pick(m, 1, 2))]
}

pub(crate) fn cubic_root_g2(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    vec![cubic_at(&g(2, w), w, pick(m, 1, 2))]
}

pub(crate) fn cubic_root_g3(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    vec![cubic_at(&g(3, w), w, pick(m, 1, 2))]
}

pub(crate) fn delta_squared(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let d = named(N::Delta, w);
    vec![&(&d * &d) - &(&(&k(4, w) * &phi5(w)) * &p_disc(w, pick(m, 11, 12)))]
}

// g1 (4 g1^2 P + delta^2) - (4 g1^2 P - delta^2), i.e. g1 = (P - Y^2)/(P + Y^2)
// with Y = delta/(2 g1) after multiplying through by 4 g1^2
pub(crate) fn g1_from_xy(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let g1 = g(1, w);
    let d = named(N::Delta, w);
    let d2 = &d * &d;
    let p4 = &(&k(4, w) * &(&g1 * &g1)) * &p_disc(w, pick(m, 11, 12));
    vec![&(&g1 * &(&p4 + &d2)) - &(&p4 - &d2)]
}

// Y^2 (P - Y^2)^2 - X^5 P (P + Y^2)^2 times (4 g1^2)^3; mutation drops the
// Y^2 inside the first square
pub(crate) fn defeq_gamma10(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let g1 = g(1, w);
    let d = named(N::Delta, w);
    let d2 = &d * &d;
    let four_g2 = &k(4, w) * &(&g1 * &g1);
    let p = p_disc(w, 11);
    let p4 = &four_g2 * &p;
    let left_inner = if m { p4.clone() } else { &p4 - &d2 };
    let lhs = &d2 * &pw(&left_inner, 2);
    let rhs = &(&(&four_g2 * &phi5(w)) * &p) * &pw(&(&p4 + &d2), 2);
    vec![&lhs - &rhs]
}

pub(crate) fn ramanujan_relation(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let g1 = g(1, w);
    let h = named(N::NegG2TwoTau, w);
    vec![&(&h * &(&k(1, w) + &(&k(pick(m, 1, 2), w) * &g1))) - &(&k(1, w) - &g1)]
}

pub(crate) fn g1g2_relation(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let (x, y) = (g(1, w), g(2, w));
    let x2 = &x * &x;
    let y2 = &y * &y;
    let terms = [&(&k(pick(m, 1, 2), w) * &x2) * &y, &x * &y2, x2.clone(), y2.clone(), -&x, -&y];
    vec![terms.iter().fold(PuiseuxSeries::zero(w + 2), |acc, t| &acc + t)]
}

// X = u/s, Y = d u / s^2 with s = g1 + g2, u = 2 - s, d = g1 - g2;
// s^4 (Y^2 - X^3 - X^2 + X) = d^2 u^2 - u^3 s - u^2 s^2 + u s^3
pub(crate) fn g1g2_weierstrass(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let (a, b) = (g(1, w), g(2, w));
    let s = &a + &b;
    let u = &k(2, w) - &s;
    let d = &a - &b;
    let u2 = &u * &u;
    let r = &(&(&(&d * &d) * &u2) - &(&(&u2 * &u) * &s)) - &(&u2 * &(&s * &s));
    vec![&r + &(&k(pick(m, 1, 2), w) * &(&u * &pw(&s, 3)))]
}

// X = -phi^5, Y = delta/2: 4 (Y^2 - X^3 + 11 X^2 + X)
pub(crate) fn g2_defeq(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let d = named(N::Delta, w);
    let x = -&phi5(w);
    let x2 = &x * &x;
    let rhs = &(&(&x2 * &x) - &(&k(pick(m, 11, 12), w) * &x2)) - &x;
    vec![&(&d * &d) - &(&k(4, w) * &rhs)]
}

// X = phi, Y = g1: Y^3 - Y^2 + X^5 Y + X^5
pub(crate) fn bring_kk(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let x5 = pw(&phi(w), 5);
    let y = g(1, w);
    let y2 = &y * &y;
    vec![&(&(&(&y2 * &y) - &y2) + &(&(&k(pick(m, 1, 2), w) * &x5) * &y)) + &x5]
}

// X = phi, Y = delta/2: 4 (Y^2 - X^5 (1 - 11 X^5 - X^10))
pub(crate) fn genus5_defeq(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let d = named(N::Delta, w);
    let x5 = pw(&phi(w), 5);
    let inner = &(&k(1, w) - &(&k(11, w) * &x5)) - &(&x5 * &x5);
    vec![&(&d * &d) - &(&(&k(pick(m, 4, 5), w) * &x5) * &inner)]
}

// phi^5 (1 + g1) - (g1^2 - g1^3)
pub(crate) fn phi5_from_g1(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let g1 = g(1, w);
    let g2 = &g1 * &g1;
    vec![&(&phi5(w) * &(&k(1, w) + &g1)) - &(&g2 - &(&k(pick(m, 1, 2), w) * &(&g2 * &g1)))]
}

// phi^5 j5 - (1 - 11 phi^5 - phi^10)
pub(crate) fn j5_phi(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    vec![&(&phi5(w) * &named(N::J5, w)) - &p_disc(w, pick(m, 11, 12))]
}

// j5 j10^2 - (j10 + 1)(j10 - 4)^2
pub(crate) fn j5_j10(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let j5 = named(N::J5, w);
    let j10 = named(N::J10, w);
    let a = &j10 - &k(pick(m, 4, 5), w);
    vec![&(&j5 * &(&j10 * &j10)) - &(&(&j10 + &k(1, w)) * &(&a * &a))]
}

// j10 g2(2 tau) - (g2(2 tau)^2 - 1)
pub(crate) fn j10_g2(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let h = -&named(N::NegG2TwoTau, w);
    let j10 = named(N::J10, w);
    vec![&(&j10 * &h) - &(&(&h * &h) - &k(pick(m, 1, 2), w))]
}

// j10 (1 - g1^2) - 4 g1
pub(crate) fn j10_g1(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let g1 = g(1, w);
    let j10 = named(N::J10, w);
    vec![&(&j10 * &(&k(1, w) - &(&g1 * &g1))) - &(&k(pick(m, 4, 5), w) * &g1)]
}

fn two_torsion(w: Rational64) -> [P4Point<PuiseuxSeries>; 3] {
    two_torsion_points_series(w).expect("g_i are nonzero series")
}

// x0^4 x1 x2 - x0^2 x1^2 x2^2 - x0 x1^5 - x0 x2^5 + 2 x1^3 x2^3 on each 2-torsion point
pub(crate) fn hulek_craig_2tors(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    two_torsion(w)
        .iter()
        .map(|p| {
            let [x0, x1, x2, _, _] = &p.x;
            let t = [
                &(&pw(x0, 4) * x1) * x2,
                -&(&(&(x0 * x0) * &(x1 * x1)) * &(x2 * x2)),
                -&(x0 * &pw(x1, 5)),
                -&(x0 * &pw(x2, 5)),
                &k(pick(m, 2, 3), w) * &(&pw(x1, 3) * &pw(x2, 3)),
            ];
            t.iter().skip(1).fold(t[0].clone(), |acc, s| &acc + s)
        })
        .collect()
}

// phi^4 x1^2 x2 + phi^3 x1^3 + phi x2^3 - x1 x2^2 at (x1, x2) = (phi, g_i), and its
// agreement with (x1^3/phi^2) (xi^3 - xi^2 + phi^5 xi + phi^5) at xi = phi x2/x1 = g_i
pub(crate) fn bring2_subst(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let f = phi(w);
    let mut out = Vec::new();
    for p in two_torsion(w) {
        let (x1, x2) = (&p.x[1], &p.x[2]);
        let b2 = &(&(&(&pw(&f, 4) * &(x1 * x1)) * x2) + &(&(&k(pick(m, 1, 2), w) * &pw(&f, 3)) * &pw(x1, 3)))
            + &(&(&f * &pw(x2, 3)) - &(x1 * &(x2 * x2)));
        let xi = (&f * x2).div(x1).expect("x1 = phi is invertible");
        let kk = cubic_at(&xi, w, 1);
        let lifted = (&pw(x1, 3) * &kk).div(&(&f * &f)).expect("phi is invertible");
        out.push(&b2 - &lifted);
        out.push(b2);
    }
    out
}

// y^5 (x - 1) - (x + 1) x^2 at x = -g_i, y = -phi
pub(crate) fn weber_model(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let y5 = pw(&(-&phi(w)), 5);
    (1..=3)
        .map(|i| {
            let x = -&g(i, w);
            let lhs = &y5 * &(&x - &k(1, w));
            &lhs - &(&(&x + &k(pick(m, 1, 2), w)) * &(&x * &x))
        })
        .collect()
}

// j phi^5 (1 - 11 phi^5 - phi^10)^5 - P20(phi)^3
pub(crate) fn j_cross_check(w: Rational64, m: bool) -> Vec<PuiseuxSeries> {
    let f = phi(w);
    let mut p20 = crate::curve::p20().coeffs().to_vec();
    if m {
        p20[15] -= int(1);
    }
    let p20 = QPoly::new(p20).eval_series(&f);
    let den = &phi5(w) * &pw(&p_disc(w, 11), 5);
    vec![&(&named(N::J, w) * &den) - &pw(&p20, 3)]
}

/// Lowest power of `phi` where `(P20^3 - P30^2)/1728` and
/// `phi^5 (1 - 11 phi^5 - phi^10)^5` differ.
pub(crate) fn weierstrass_discriminant(mutate: bool) -> Option<usize> {
    let mut p20 = crate::curve::p20().coeffs().to_vec();
    if mutate {
        p20[10] += int(1);
    }
    let lhs = crate::curve::discriminant_lhs(&QPoly::new(p20), &crate::curve::p30());
    (&lhs - &crate::curve::discriminant_rhs()).low_degree()
}

/// Lowest power of `phi` where the general cubic discriminant, the closed form
/// and the three-factor form disagree.
pub(crate) fn cubic_discriminant_factorization(mutate: bool) -> Option<usize> {
    let general = crate::curve::cubic_discriminant_poly();
    let mut closed = crate::curve::cubic_discriminant_closed();
    if mutate {
        closed = &closed + &QPoly::from_terms(&[(10, -1)]);
    }
    let factored = crate::curve::cubic_discriminant_factored();
    [(&general - &closed).low_degree(), (&closed - &factored).low_degree()].into_iter().flatten().min()
}

/// Residuals known modulo at least `q^order`, computed with enough working
/// precision; the first exponent with a nonzero coefficient if any.
pub(crate) fn evaluate(f: ResidualFn, order: Rational64, mutate: bool) -> Option<Rational64> {
    let mut w = order;
    for _ in 0..8 {
        let rs = f(w, mutate);
        let reached = rs.iter().map(|r| r.order()).min().expect("at least one residual");
        if reached >= order {
            return rs.iter().filter_map(|r| r.truncate(order).first_nonzero_exponent()).min();
        }
        w += order - reached + Rational64::from_integer(1);
    }
    panic!("working precision does not converge")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_squared_low_order() {
        let r = Rational64::from_integer(6);
        assert_eq!(evaluate(delta_squared, r, false), None);
        assert!(evaluate(delta_squared, r, true).is_some());
    }

    #[test]
    fn delta_leading_term() {
        let d = named(N::Delta, Rational64::from_integer(3));
        assert_eq!(d.valuation(), Some(Rational64::new(1, 2)));
        assert_eq!(d.leading_coeff(), Some(&int(2)));
    }
}

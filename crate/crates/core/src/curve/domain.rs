use std::fmt::Debug;

use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::exact::{int, rat, PuiseuxSeries, QPoly};

/// Coefficient field for curve points: complex floats or exact Puiseux series.
///
/// Constants are built "like" an existing value so that series constants carry
/// the truncation order of the data they are combined with.
pub trait CoefficientDomain: Clone + Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when the value fails the zero test.
    fn inv(&self) -> Option<Self>;
    fn rational_like(&self, c: &BigRational) -> Self;
    /// Size used by relative zero tests. Series report 0 for the zero series and
    /// 1 otherwise, which turns every relative test into an exact one.
    fn magnitude(&self) -> f64;

    fn is_zero(&self) -> bool {
        self.magnitude() == 0.0
    }

    fn int_like(&self, n: i64) -> Self {
        self.rational_like(&int(n))
    }

    fn ratio_like(&self, num: i64, den: i64) -> Self {
        self.rational_like(&rat(num, den))
    }

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn powu(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn eval_poly(&self, p: &QPoly) -> Self {
        let mut acc = self.zero_like();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&self.rational_like(c));
        }
        acc
    }
}

impl CoefficientDomain for Complex64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        (n > 1e-300 && n.is_finite()).then(|| self.inv())
    }
    fn rational_like(&self, c: &BigRational) -> Self {
        Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl CoefficientDomain for PuiseuxSeries {
    fn add(&self, other: &Self) -> Self {
        PuiseuxSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        PuiseuxSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PuiseuxSeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        PuiseuxSeries::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        PuiseuxSeries::inv(self).ok()
    }
    fn rational_like(&self, c: &BigRational) -> Self {
        // exact constants must not limit sums with self nor products with self
        let order = self.order();
        let order = match self.valuation() {
            Some(v) if v < Rational64::zero() => order - v,
            _ => order,
        };
        PuiseuxSeries::constant(c.clone(), order)
    }
    fn magnitude(&self) -> f64 {
        if PuiseuxSeries::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

/// `true` when `sum` is negligible against the largest of `terms`.
pub(crate) fn cancels<F: CoefficientDomain>(sum: &F, terms: &[F]) -> bool {
    let scale = terms.iter().map(F::magnitude).fold(0.0, f64::max);
    sum.magnitude() <= 1e-12 * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_zero_test_is_strict() {
        assert!(CoefficientDomain::inv(&Complex64::new(0.0, 0.0)).is_none());
        assert!(CoefficientDomain::inv(&Complex64::new(1e-10, 0.0)).is_some());
    }

    #[test]
    fn series_constants_keep_relative_precision() {
        let q = PuiseuxSeries::monomial(int(1), Rational64::new(1, 5), Rational64::new(3, 1));
        let two = q.int_like(2);
        assert_eq!(two.order(), Rational64::new(3, 1));
        assert!(two.mul(&q).agrees_with(&q.add(&q)));
    }

    #[test]
    fn poly_evaluation_matches_qpoly() {
        let p = QPoly::from_terms(&[(3, 1), (2, -1), (1, 5), (0, 5)]);
        let x = Complex64::new(0.3, -0.2);
        assert!((x.eval_poly(&p) - p.eval_complex(x)).norm() < 1e-15);
    }

    #[test]
    fn cancellation_test() {
        let a = Complex64::new(1.0, 0.0);
        let tiny = Complex64::new(1e-14, 0.0);
        assert!(cancels(&tiny, &[a, a]));
        assert!(!cancels(&a, &[a]));
    }
}

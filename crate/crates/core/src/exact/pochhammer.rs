use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use super::PuiseuxSeries;

/// One factor `prod_{n >= 1, n = residue mod modulus} (1 - q^n)^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerFactor {
    pub residue: i64,
    pub modulus: i64,
    pub exponent: i64,
}

impl PochhammerFactor {
    pub fn new(residue: i64, modulus: i64, exponent: i64) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        PochhammerFactor { residue: residue.rem_euclid(modulus), modulus, exponent }
    }

    /// All `n >= 1`.
    pub fn all(exponent: i64) -> Self {
        Self::new(0, 1, exponent)
    }
}

// (1 - q^n) applied in place to an integer power series of length len
fn mul_one_minus(c: &mut [BigInt], n: usize) {
    for k in (n..c.len()).rev() {
        let t = c[k - n].clone();
        c[k] -= t;
    }
}

// division by (1 - q^n), i.e. multiplication by sum_j q^(jn)
fn div_one_minus(c: &mut [BigInt], n: usize) {
    for k in n..c.len() {
        let t = c[k - n].clone();
        c[k] += t;
    }
}

/// `q^prefactor * prod (1 - q^n)^e` over the given factors, known modulo `q^order`.
///
/// Only the finitely many factors with `n < order - prefactor` contribute; the
/// product itself is computed over the integers.
pub fn pochhammer_product(factors: &[PochhammerFactor], prefactor: Rational64, order: Rational64) -> PuiseuxSeries {
    assert!(order > prefactor, "order must exceed the prefactor exponent");
    // integer exponents 0..len of the product part
    let span = order - prefactor;
    let len = span.ceil().to_integer() as usize;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    for f in factors {
        assert!(f.modulus >= 1);
        let first = if f.residue == 0 { f.modulus } else { f.residue };
        let mut n = first as usize;
        while n < len {
            if f.exponent >= 0 {
                for _ in 0..f.exponent {
                    mul_one_minus(&mut c, n);
                }
            } else {
                for _ in 0..(-f.exponent) {
                    div_one_minus(&mut c, n);
                }
            }
            n += f.modulus as usize;
        }
    }
    let coeffs: Vec<BigRational> = c.into_iter().map(BigRational::from_integer).collect();
    let len = coeffs.len() as i64;
    PuiseuxSeries::from_parts(1, 0, len, coeffs).expect("dense coefficient vector").shift(prefactor).truncate(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn empty_product_is_one() {
        let s = pochhammer_product(&[], r(0, 1), r(5, 1));
        assert_eq!(s, PuiseuxSeries::one(r(5, 1)));
    }

    #[test]
    fn euler_function_matches_pentagonal_numbers() {
        let s = pochhammer_product(&[PochhammerFactor::all(1)], r(0, 1), r(60, 1));
        // generalized pentagonal numbers k(3k-1)/2 carry sign (-1)^k
        let mut expected = vec![0i64; 60];
        for k in -10i64..=10 {
            let p = k * (3 * k - 1) / 2;
            if (0..60).contains(&p) {
                expected[p as usize] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(s.coeff(r(n as i64, 1)).unwrap(), int(*e), "q^{n}");
        }
    }

    #[test]
    fn eta_prefactor_and_ramification() {
        let eta = pochhammer_product(&[PochhammerFactor::all(1)], r(1, 24), r(3, 1));
        assert_eq!(eta.ram(), 24);
        assert_eq!(eta.valuation(), Some(r(1, 24)));
        assert_eq!(eta.order(), r(3, 1));
        assert_eq!(eta.coeff(r(25, 24)).unwrap(), int(-1));
    }

    #[test]
    fn negative_exponent_inverts() {
        let a = pochhammer_product(&[PochhammerFactor::new(2, 5, 1)], r(0, 1), r(30, 1));
        let b = pochhammer_product(&[PochhammerFactor::new(2, 5, -1)], r(0, 1), r(30, 1));
        assert_eq!(&a * &b, PuiseuxSeries::one(r(30, 1)));
    }
}

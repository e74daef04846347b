//! Floating-point theta functions with characteristics and the level-5 family
//! `theta_k(z, tau) = i^{-1} theta_{(1/2 - k/5, 5/2)}(5z, 5tau)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("tau must lie in the upper half-plane, got Im(tau) = {0}")]
    Domain(f64),
    #[error("theta series would need {0} terms; Im(tau) is too small")]
    Convergence(f64),
    #[error("theta value overflowed")]
    Overflow,
    #[error("theta_2(0, tau) vanishes")]
    DivisionByZero,
}

/// Relative size of the first omitted term compared with the largest one kept.
pub const DEFAULT_CUTOFF: f64 = 1e-30;

const MAX_TERMS: f64 = 1e6;

/// `sum_n exp(pi i (n+p)^2 tau + 2 pi i (n+p)(z+qchar))`.
pub fn theta_pq(p: f64, qchar: f64, z: Complex64, tau: Complex64) -> Result<Complex64, ThetaError> {
    theta_pq_with_cutoff(p, qchar, z, tau, DEFAULT_CUTOFF)
}

/// [`theta_pq`] with an explicit truncation threshold.
pub fn theta_pq_with_cutoff(
    p: f64,
    qchar: f64,
    z: Complex64,
    tau: Complex64,
    cutoff: f64,
) -> Result<Complex64, ThetaError> {
    let y = tau.im;
    if !(y > 0.0) {
        return Err(ThetaError::Domain(y));
    }
    // |term(s)| = exp(-pi y s^2 - 2 pi s Im z) peaks at s* = -Im z / y
    let s_star = -z.im / y;
    let center = (s_star - p).round();
    // kept terms reach within 1/2 of s*, omitted ones sit at least K - 1/2 away
    let log_cut = -cutoff.ln();
    let half_width = ((log_cut / (PI * y) + 0.25).sqrt() + 0.5).ceil() + 1.0;
    if half_width > MAX_TERMS {
        return Err(ThetaError::Convergence(half_width));
    }
    let k_max = half_width as i64;
    let zq = z + qchar;
    let i_pi = Complex64::new(0.0, PI);
    let term = |n: f64| {
        let s = n + p;
        (i_pi * (s * s) * tau + i_pi * (2.0 * s) * zq).exp()
    };
    let mut sum = term(center);
    for j in 1..=k_max {
        let j = j as f64;
        sum += term(center + j) + term(center - j);
    }
    if !(sum.re.is_finite() && sum.im.is_finite()) {
        return Err(ThetaError::Overflow);
    }
    Ok(sum)
}

/// Index `k` of `theta_k`, an integer or half-integer reduced mod 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaIndex {
    twice: u8,
}

impl ThetaIndex {
    /// Index `twice / 2`.
    pub fn from_twice(twice: i64) -> Self {
        ThetaIndex { twice: twice.rem_euclid(10) as u8 }
    }

    /// Integer index `k`.
    pub fn int(k: i64) -> Self {
        Self::from_twice(2 * k)
    }

    /// Half-integer index `odd / 2`; `odd` must be odd.
    pub fn half(odd: i64) -> Self {
        assert!(odd % 2 != 0, "half-integer index needs an odd numerator");
        Self::from_twice(odd)
    }

    pub fn twice(self) -> i64 {
        self.twice as i64
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    /// `k + twice_delta / 2`.
    pub fn shifted(self, twice_delta: i64) -> Self {
        Self::from_twice(self.twice() + twice_delta)
    }

    /// `-k`.
    pub fn negated(self) -> Self {
        Self::from_twice(-self.twice())
    }

    /// `(-1)^(2k+1)`.
    pub fn parity_sign(self) -> f64 {
        if self.twice.is_multiple_of(2) {
            -1.0
        } else {
            1.0
        }
    }
}

impl std::fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// `theta_k(z, tau)`.
pub fn theta_k(k: ThetaIndex, z: Complex64, tau: Complex64) -> Result<Complex64, ThetaError> {
    theta_k_with_cutoff(k, z, tau, DEFAULT_CUTOFF)
}

pub fn theta_k_with_cutoff(k: ThetaIndex, z: Complex64, tau: Complex64, cutoff: f64) -> Result<Complex64, ThetaError> {
    let p = 0.5 - k.value() / 5.0;
    let v = theta_pq_with_cutoff(p, 2.5, z * 5.0, tau * 5.0, cutoff)?;
    Ok(v * Complex64::new(0.0, -1.0))
}

/// `theta_k(z, tau)` for integer `k`.
pub fn theta(k: i64, z: Complex64, tau: Complex64) -> Result<Complex64, ThetaError> {
    theta_k(ThetaIndex::int(k), z, tau)
}

/// `(theta_0, ..., theta_4)(z, tau)`, the point of the Bianchi quintic attached to `z`.
pub fn theta_vector(z: Complex64, tau: Complex64) -> Result<[Complex64; 5], ThetaError> {
    let mut out = [Complex64::new(0.0, 0.0); 5];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = theta(k as i64, z, tau)?;
    }
    Ok(out)
}

/// The Rogers-Ramanujan function as `-theta_1(0)/theta_2(0)`.
pub fn phi_numeric(tau: Complex64) -> Result<Complex64, ThetaError> {
    let zero = Complex64::new(0.0, 0.0);
    let t1 = theta(1, zero, tau)?;
    let t2 = theta(2, zero, tau)?;
    if t2.norm() < 1e-30 {
        return Err(ThetaError::DivisionByZero);
    }
    Ok(-t1 / t2)
}

/// `q^r = exp(2 pi i tau r)`, the determination used for fractional powers of `q`.
pub fn q_pow(tau: Complex64, r: f64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI * r) * tau).exp()
}

/// Relative residual of a signed sum: `|sum terms| / max |term|`.
pub fn relative_residual(terms: &[Complex64]) -> f64 {
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let sum: Complex64 = terms.iter().sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // independent fixed window n in [-50, 50], summed naively
    fn theta_pq_window(p: f64, q: f64, z: Complex64, tau: Complex64) -> Complex64 {
        let i_pi = c(0.0, PI);
        (-50..=50)
            .map(|n| {
                let s = n as f64 + p;
                (i_pi * s * s * tau + i_pi * 2.0 * s * (z + q)).exp()
            })
            .sum()
    }

    #[test]
    fn theta_zero_vanishes_at_origin() {
        let v = theta_pq(0.5, 2.5, c(0.0, 0.0), c(0.0, 5.0)).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn matches_fixed_window_oracle() {
        let z = c(0.3, 0.2);
        let tau = c(0.0, 1.1);
        for &(p, q) in &[(0.5, 2.5), (0.3, 2.5), (0.0, 0.0), (-0.2, 0.7)] {
            let a = theta_pq(p, q, z, tau).unwrap();
            let b = theta_pq_window(p, q, z, tau);
            assert!((a - b).norm() / b.norm() < 1e-12, "p={p} q={q}: {a} vs {b}");
        }
    }

    #[test]
    fn window_is_converged() {
        let z = c(0.1, -0.3);
        let tau = c(0.0, 1.0);
        let a = theta_pq_with_cutoff(0.1, 0.4, z, tau, 1e-30).unwrap();
        let b = theta_pq_with_cutoff(0.1, 0.4, z, tau, 1e-60).unwrap();
        assert!((a - b).norm() / a.norm() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert_eq!(theta_pq(0.0, 0.0, c(0.0, 0.0), c(0.3, 0.0)), Err(ThetaError::Domain(0.0)));
        assert!(matches!(theta_pq(0.0, 0.0, c(0.0, 0.0), c(0.0, 1e-14)), Err(ThetaError::Convergence(_))));
    }

    #[test]
    fn nullwerte() {
        for tau in [c(0.0, 1.0), c(0.3, 1.4)] {
            let z = c(0.0, 0.0);
            let v = theta_vector(z, tau).unwrap();
            let scale = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
            assert!(v[0].norm() / scale < 1e-12);
            assert!(relative_residual(&[v[3], v[2]]) < 1e-12);
            assert!(relative_residual(&[v[4], v[1]]) < 1e-12);
        }
    }

    #[test]
    fn index_reduction_and_parity() {
        assert_eq!(ThetaIndex::int(7), ThetaIndex::int(2));
        assert_eq!(ThetaIndex::half(-1), ThetaIndex::half(9));
        assert_eq!(ThetaIndex::int(3).negated(), ThetaIndex::int(2));
        assert_eq!(ThetaIndex::half(5).to_string(), "5/2");
        assert_eq!(ThetaIndex::int(0).parity_sign(), -1.0);
        assert_eq!(ThetaIndex::half(1).parity_sign(), 1.0);
    }

    #[test]
    fn phi_at_i() {
        // q^(1/5) prod over 30 factors at q = e^(-2 pi)
        let q: f64 = (-2.0 * PI).exp();
        let mut prod = q.powf(0.2);
        for n in 1..=30 {
            let n = n as f64;
            prod *= (1.0 - q.powf(5.0 * n - 1.0)) * (1.0 - q.powf(5.0 * n - 4.0))
                / ((1.0 - q.powf(5.0 * n - 2.0)) * (1.0 - q.powf(5.0 * n - 3.0)));
        }
        let phi = phi_numeric(c(0.0, 1.0)).unwrap();
        assert!((phi - prod).norm() < 1e-13, "{phi} vs {prod}");
        assert!((phi.re - 0.2840790).abs() < 1e-6);
    }

    #[test]
    fn phi_modulus_invariant_under_five_shift() {
        let tau = c(0.17, 1.3);
        let a = phi_numeric(tau).unwrap();
        let b = phi_numeric(tau + 5.0).unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-12);
    }
}

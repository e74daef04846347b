use std::f64::consts::PI;

use nalgebra::{Matrix3, Schur};
use num_complex::Complex64;
use num_rational::Rational64;

use super::domain::{cancels, CoefficientDomain};
use super::point::{neutral, P4Point};
use super::CurveError;
use crate::exact::PuiseuxSeries;
use crate::modular;

/// `zeta = exp(2 pi i / 5)`.
pub fn zeta5() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 5.0)
}

/// `(x_k) -> (zeta^{-km} x_k)`, the image under `z -> z + m/5` up to scale.
pub fn zeta_twist(p: &P4Point<Complex64>, m: i64) -> P4Point<Complex64> {
    let z = zeta5();
    P4Point { x: std::array::from_fn(|k| p.x[k] * z.powi(-(k as i32) * m as i32)) }
}

/// The 25 points of order dividing 5: cyclic shifts of the zeta-twists of `O`.
/// Entry `5 * b + m` is shift `b` of twist `m`; it has `x_{-b} = 0`.
pub fn five_torsion_points(phi: Complex64) -> Vec<P4Point<Complex64>> {
    let o = neutral(&phi);
    let mut out = Vec::with_capacity(25);
    for b in 0..5 {
        for m in 0..5 {
            out.push(zeta_twist(&o, m).shifted(b));
        }
    }
    out
}

/// The cubic `xi^3 - xi^2 + phi^5 xi + phi^5` of the 2-torsion abscissae.
pub fn cubic_coefficients<F: CoefficientDomain>(phi: &F) -> [F; 4] {
    let t = phi.powu(5);
    [t.clone(), t, phi.int_like(-1), phi.one_like()]
}

/// Discriminant `4 phi^5 (1 - 11 phi^5 - phi^10)` of the cubic.
pub fn cubic_discriminant<F: CoefficientDomain>(phi: &F) -> F {
    let t = phi.powu(5);
    let inner = phi.one_like().sub(&t.mul(&phi.int_like(11))).sub(&t.square());
    t.mul(&inner).mul(&phi.int_like(4))
}

/// Roots of the cubic as companion-matrix eigenvalues, Newton-polished.
pub fn cubic_roots(phi: Complex64) -> [Complex64; 3] {
    let t = phi.powi(5);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    // companion matrix of x^3 - x^2 + t x + t
    let m = Matrix3::new(zero, zero, -t, one, zero, -t, zero, one, one);
    let ev = Schur::new(m).eigenvalues().expect("complex Schur form is triangular");
    let f = |x: Complex64| ((x - 1.0) * x + t) * x + t;
    let df = |x: Complex64| (3.0 * x - 2.0) * x + t;
    std::array::from_fn(|i| {
        let mut x = ev[i];
        for _ in 0..2 {
            let d = df(x);
            if d.norm() > 0.0 {
                let step = f(x) / d;
                if step.re.is_finite() && step.im.is_finite() {
                    x -= step;
                }
            }
        }
        x
    })
}

/// Permutation `perm` with `roots[perm[i]]` nearest to `targets[i]`, chosen to
/// minimize the total distance over all six assignments.
pub fn assign_nearest(roots: &[Complex64; 3], targets: &[Complex64; 3]) -> [usize; 3] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let cost = |p: &[usize; 3]| (0..3).map(|i| (roots[p[i]] - targets[i]).norm()).sum::<f64>();
    *PERMS.iter().min_by(|a, b| cost(a).total_cmp(&cost(b))).unwrap()
}

/// `phi^5 (1 - 11 phi^5 - phi^10) = 0` under the domain zero test.
pub fn is_singular<F: CoefficientDomain>(phi: &F) -> bool {
    let t = phi.powu(5);
    let terms = [t.powu(3).neg(), t.square().mul(&phi.int_like(-11)), t.clone()];
    let sum = terms[0].add(&terms[1]).add(&terms[2]);
    sum.is_zero() || cancels(&sum, &terms) || phi.is_zero()
}

/// `(phi^3 + phi^3/g : phi : g : g : phi)` for a root `g` of the cubic.
pub fn two_torsion_point<F: CoefficientDomain>(phi: &F, g: &F) -> Result<P4Point<F>, CurveError> {
    let phi3 = phi.powu(3);
    let x0 = phi3.add(&phi3.div(g).ok_or(CurveError::DivisionByZero)?);
    Ok(P4Point { x: [x0, phi.clone(), g.clone(), g.clone(), phi.clone()] })
}

/// The three nontrivial 2-torsion points at a numeric `phi`.
pub fn two_torsion_points(phi: Complex64) -> Result<[P4Point<Complex64>; 3], CurveError> {
    if is_singular(&phi) {
        return Err(CurveError::SingularCurve);
    }
    let g = cubic_roots(phi);
    Ok([two_torsion_point(&phi, &g[0])?, two_torsion_point(&phi, &g[1])?, two_torsion_point(&phi, &g[2])?])
}

/// The three 2-torsion points with `phi = phi(tau)` and `g_i(tau)` as exact series.
pub fn two_torsion_points_series(order: Rational64) -> Result<[P4Point<PuiseuxSeries>; 3], CurveError> {
    let phi = modular::phi_series(order);
    let g = [1, 2, 3].map(|i| modular::gi_series(i, order));
    Ok([two_torsion_point(&phi, &g[0])?, two_torsion_point(&phi, &g[1])?, two_torsion_point(&phi, &g[2])?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point::{add, double, negate, relative_quadric_residual};

    #[test]
    fn twist_of_neutral() {
        let phi = Complex64::new(0.3, 0.1);
        let z = zeta5();
        let p = zeta_twist(&neutral(&phi), 1);
        let expected = [Complex64::new(0.0, 0.0), z.powi(-1) * phi, -z.powi(-2), z.powi(-3), -z.powi(-4) * phi];
        for k in 0..5 {
            assert!((p.x[k] - expected[k]).norm() < 1e-15);
        }
        assert!(relative_quadric_residual(&p, &phi).unwrap() < 1e-12);
    }

    #[test]
    fn five_torsion_have_one_zero_coordinate() {
        let phi = Complex64::new(0.25, -0.05);
        for p in five_torsion_points(phi) {
            assert_eq!(p.x.iter().filter(|c| c.norm() < 1e-14).count(), 1);
            assert!(relative_quadric_residual(&p, &phi).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cubic_roots_symmetric_functions() {
        let phi = Complex64::new(0.31, 0.07);
        let t = phi.powi(5);
        let g = cubic_roots(phi);
        assert!((g[0] + g[1] + g[2] - 1.0).norm() < 1e-12);
        assert!((g[0] * g[1] + g[1] * g[2] + g[2] * g[0] - t).norm() < 1e-12);
        assert!((g[0] * g[1] * g[2] + t).norm() < 1e-12);
        let disc = ((g[0] - g[1]) * (g[1] - g[2]) * (g[2] - g[0])).powi(2);
        assert!((disc - cubic_discriminant(&phi)).norm() < 1e-12);
    }

    #[test]
    fn two_torsion_numeric() {
        let phi = Complex64::new(0.28, 0.0);
        for p in two_torsion_points(phi).unwrap() {
            assert!(relative_quadric_residual(&p, &phi).unwrap() < 1e-12);
            assert!(negate(&p).projective_distance(&p) < 1e-14);
            let d = double(&p).unwrap();
            assert!(d.projective_distance(&neutral(&phi)) < 1e-12);
            let s = add(&p, &p).unwrap();
            assert!(s.projective_distance(&neutral(&phi)) < 1e-12);
        }
    }

    #[test]
    fn singular_fiber_rejected() {
        // phi^2 + phi - 1 = 0 is a factor of the discriminant
        let phi = Complex64::new((5f64.sqrt() - 1.0) / 2.0, 0.0);
        assert!(matches!(two_torsion_points(phi), Err(CurveError::SingularCurve)));
        assert!(matches!(two_torsion_points(Complex64::new(0.0, 0.0)), Err(CurveError::SingularCurve)));
    }

    #[test]
    fn nearest_assignment() {
        let roots = [Complex64::new(3.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let targets = [Complex64::new(1.1, 0.0), Complex64::new(2.1, 0.0), Complex64::new(2.9, 0.0)];
        assert_eq!(assign_nearest(&roots, &targets), [1, 2, 0]);
    }
}

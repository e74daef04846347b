use crate::exact::{rat, QPoly};

use super::domain::{cancels, CoefficientDomain};
use super::point::P4Point;
use super::CurveError;

/// Plane curves attached to the pencil and to its 2-torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneModel {
    /// `(x0 : x1 : x2)`: `phi^6 x0^5 + phi x1^5 + phi^6 x2^5 + phi^4 (phi^5+3) x0^2 x1 x2^2 - (2 phi^5+1) x0 x2 x1^3`.
    Quintic,
    /// `(x0 : x1 : x2)`: `x0^4 x1 x2 - x0^2 x1^2 x2^2 - x0 x1^5 - x0 x2^5 + 2 x1^3 x2^3`.
    HulekCraig,
    /// `(x1 : x2)`: `phi^4 x1^2 x2 + phi^3 x1^3 + phi x2^3 - x1 x2^2`.
    Bring2,
    /// `(xi)`: `xi^3 - xi^2 + phi^5 xi + phi^5`.
    Kk,
    /// `(x, y)`: `y^5 (x - 1) - (x + 1) x^2`.
    Weber,
}

impl PlaneModel {
    pub fn arity(self) -> usize {
        match self {
            PlaneModel::Quintic | PlaneModel::HulekCraig => 3,
            PlaneModel::Bring2 | PlaneModel::Weber => 2,
            PlaneModel::Kk => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlaneModel::Quintic => "quintic",
            PlaneModel::HulekCraig => "hulek_craig",
            PlaneModel::Bring2 => "bring2",
            PlaneModel::Kk => "kk",
            PlaneModel::Weber => "weber",
        }
    }
}

/// Signed terms of the model polynomial; their sum is the residual.
pub fn plane_model_terms<F: CoefficientDomain>(model: PlaneModel, c: &[F], phi: &F) -> Result<Vec<F>, CurveError> {
    if c.len() != model.arity() {
        return Err(CurveError::Arity { expected: model.arity(), got: c.len() });
    }
    let k = |n: i64| phi.int_like(n);
    let t = phi.powu(5);
    Ok(match model {
        PlaneModel::Quintic => {
            let (x0, x1, x2) = (&c[0], &c[1], &c[2]);
            let phi6 = phi.powu(6);
            vec![
                phi6.mul(&x0.powu(5)),
                phi.mul(&x1.powu(5)),
                phi6.mul(&x2.powu(5)),
                phi.powu(4).mul(&t.add(&k(3))).mul(&x0.square()).mul(x1).mul(&x2.square()),
                t.mul(&k(2)).add(&k(1)).mul(x0).mul(x2).mul(&x1.powu(3)).neg(),
            ]
        }
        PlaneModel::HulekCraig => {
            let (x0, x1, x2) = (&c[0], &c[1], &c[2]);
            vec![
                x0.powu(4).mul(x1).mul(x2),
                x0.square().mul(&x1.square()).mul(&x2.square()).neg(),
                x0.mul(&x1.powu(5)).neg(),
                x0.mul(&x2.powu(5)).neg(),
                x1.powu(3).mul(&x2.powu(3)).mul(&k(2)),
            ]
        }
        PlaneModel::Bring2 => {
            let (x1, x2) = (&c[0], &c[1]);
            vec![
                phi.powu(4).mul(&x1.square()).mul(x2),
                phi.powu(3).mul(&x1.powu(3)),
                phi.mul(&x2.powu(3)),
                x1.mul(&x2.square()).neg(),
            ]
        }
        PlaneModel::Kk => {
            let xi = &c[0];
            vec![xi.powu(3), xi.square().neg(), t.mul(xi), t]
        }
        PlaneModel::Weber => {
            let (x, y) = (&c[0], &c[1]);
            let y5 = y.powu(5);
            vec![y5.mul(x), y5.neg(), x.powu(3).neg(), x.square().neg()]
        }
    })
}

/// The model polynomial at the given coordinates; zero iff on the model.
pub fn plane_model_residual<F: CoefficientDomain>(model: PlaneModel, c: &[F], phi: &F) -> Result<F, CurveError> {
    let terms = plane_model_terms(model, c, phi)?;
    Ok(terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add(t)))
}

/// `|residual| / max |term|`, the scale-free form for numeric use.
pub fn plane_model_relative<F: CoefficientDomain>(model: PlaneModel, c: &[F], phi: &F) -> Result<f64, CurveError> {
    let terms = plane_model_terms(model, c, phi)?;
    let sum = terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add(t));
    let scale = terms.iter().map(F::magnitude).fold(0.0, f64::max);
    Ok(if scale == 0.0 { sum.magnitude() } else { sum.magnitude() / scale })
}

/// `phi^20 - 228 phi^15 + 494 phi^10 + 228 phi^5 + 1`.
pub fn p20() -> QPoly {
    QPoly::from_terms(&[(20, 1), (15, -228), (10, 494), (5, 228), (0, 1)])
}

/// `phi^30 + 522 phi^25 - 10005 phi^20 - 10005 phi^10 - 522 phi^5 + 1`.
pub fn p30() -> QPoly {
    QPoly::from_terms(&[(30, 1), (25, 522), (20, -10005), (10, -10005), (5, -522), (0, 1)])
}

/// `A = -P20/48`.
pub fn weierstrass_a() -> QPoly {
    p20().scale(&rat(-1, 48))
}

/// `B = P30/864`.
pub fn weierstrass_b() -> QPoly {
    p30().scale(&rat(1, 864))
}

/// `phi^5 (1 - 11 phi^5 - phi^10)^5`, sharing its roots with the discriminant
/// of the 2-torsion cubic.
pub fn discriminant_rhs() -> QPoly {
    let inner = QPoly::from_terms(&[(10, -1), (5, -11), (0, 1)]);
    &QPoly::from_terms(&[(5, 1)]) * &inner.pow(5)
}

/// `phi^5 (phi^10 - 11 phi^5 + 1)^5`, with the signs of the inner factor flipped; it is not equal
/// to `(P20^3 - P30^2)/1728`.
pub fn discriminant_rhs_flipped() -> QPoly {
    let inner = QPoly::from_terms(&[(10, 1), (5, -11), (0, 1)]);
    &QPoly::from_terms(&[(5, 1)]) * &inner.pow(5)
}

/// `(P20^3 - P30^2) / 1728` for arbitrary `P20`, `P30`.
pub fn discriminant_lhs(p20: &QPoly, p30: &QPoly) -> QPoly {
    (&p20.pow(3) - &p30.pow(2)).scale(&rat(1, 1728))
}

/// Exact equality `(P20^3 - P30^2)/1728 = phi^5 (1 - 11 phi^5 - phi^10)^5`.
pub fn discriminant_check() -> bool {
    discriminant_check_with(&p20(), &p30())
}

pub fn discriminant_check_with(p20: &QPoly, p30: &QPoly) -> bool {
    discriminant_lhs(p20, p30) == discriminant_rhs()
}

/// Discriminant of `x^3 + b x^2 + c x + d` with `b = -1`, `c = d = phi^5`, as a
/// polynomial in `phi`, from the general cubic formula.
pub fn cubic_discriminant_poly() -> QPoly {
    let b = QPoly::from_terms(&[(0, -1)]);
    let c = QPoly::from_terms(&[(5, 1)]);
    let d = c.clone();
    let k = |n: i64| QPoly::from_terms(&[(0, n)]);
    let t1 = &(&(&k(18) * &b) * &c) * &d;
    let t2 = &(&k(-4) * &b.pow(3)) * &d;
    let t3 = &b.pow(2) * &c.pow(2);
    let t4 = &k(-4) * &c.pow(3);
    let t5 = &k(-27) * &d.pow(2);
    &(&(&(&t1 + &t2) + &t3) + &t4) + &t5
}

/// `4 phi^5 (1 - 11 phi^5 - phi^10)`.
pub fn cubic_discriminant_closed() -> QPoly {
    QPoly::from_terms(&[(5, 4), (10, -44), (15, -4)])
}

/// `-4 phi^5 (phi^2 + phi - 1)(phi^4 - 3 phi^3 + 4 phi^2 - 2 phi + 1)(phi^4 + 2 phi^3 + 4 phi^2 + 3 phi + 1)`.
pub fn cubic_discriminant_factored() -> QPoly {
    let f1 = QPoly::from_terms(&[(2, 1), (1, 1), (0, -1)]);
    let f2 = QPoly::from_terms(&[(4, 1), (3, -3), (2, 4), (1, -2), (0, 1)]);
    let f3 = QPoly::from_terms(&[(4, 1), (3, 2), (2, 4), (1, 3), (0, 1)]);
    &(&(&QPoly::from_terms(&[(5, -4)]) * &f1) * &f2) * &f3
}

/// Image of a curve point on `Y^2 = X^3 + A X + B`, with both expressions for `Y`.
#[derive(Clone, Debug)]
pub struct WeierstrassData<F> {
    pub a: QPoly,
    pub b: QPoly,
    pub x: F,
    pub y_a: F,
    pub y_b: F,
}

fn sum<F: CoefficientDomain>(terms: &[F]) -> F {
    terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add(t))
}

// denominator as a sum of terms, rejected when it cancels to zero
fn denominator<F: CoefficientDomain>(terms: &[F], which: &'static str) -> Result<F, CurveError> {
    let d = sum(terms);
    if d.is_zero() || cancels(&d, terms) {
        return Err(CurveError::DenominatorVanishes(which));
    }
    Ok(d)
}

/// `X` coordinate of the birational map to Weierstrass form.
pub fn weierstrass_x<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<F, CurveError> {
    let [x0, x1, x2, x3, x4] = &p.x;
    if x0.is_zero() || x0.magnitude() <= 1e-12 * p.max_magnitude() {
        return Err(CurveError::DenominatorVanishes("x0"));
    }
    let k = |n: i64| phi.int_like(n);
    let t = phi.powu(5);
    let inv0 = x0.inv().ok_or(CurveError::DenominatorVanishes("x0"))?;
    let inv00 = inv0.square();
    let head = t.square().add(&t.mul(&k(30))).add(&k(1)).mul(&phi.ratio_like(1, 12));
    let s14 = x1.add(x4);
    let s23 = x2.add(x3);
    let inner = x1.sub(&phi.mul(x2)).add(&phi.mul(x3)).sub(x4);
    let terms = [
        head,
        phi.square().mul(&t.mul(&k(2)).add(&k(1))).mul(&s14).mul(&inv0).neg(),
        phi.powu(3).mul(&t.sub(&k(2))).mul(&s23).mul(&inv0).neg(),
        phi.powu(3).mul(&k(5)).mul(x2).mul(&inv0).neg(),
        phi.powu(4).mul(&k(5)).mul(x1).mul(&inner).mul(&inv00),
        t.mul(&k(5)).mul(x2).mul(x4).mul(&inv00),
    ];
    Ok(sum(&terms))
}

// (phi^11 + 11 phi^6 - phi)^2
fn y_numerator<F: CoefficientDomain>(phi: &F, eleven: i64) -> F {
    let t = phi.powu(5);
    phi.mul(&t.square().add(&t.mul(&phi.int_like(eleven))).sub(&phi.one_like())).square()
}

/// `Y = N (x2 - x3) / (2 phi [(7 - phi^5) phi^3 x0 + (7 phi^5 + 1)(x1 + x4) + (3 - 4 phi^5) phi (x2 + x3)])`
/// with `N = (phi^11 + 11 phi^6 - phi)^2`.
pub fn weierstrass_y_a<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<F, CurveError> {
    y_a_generic(p, phi, 11, (2, 1))
}

/// `Y = N (x1 - x4) / (2 [(7 phi^5 + 1) x0 + (3 phi^5 + 4) phi^2 (x1 + x4) - (phi^5 - 7) phi^3 (x2 + x3)])`.
pub fn weierstrass_y_b<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<F, CurveError> {
    y_b_generic(p, phi, 11)
}

// y_a with numerator coefficient `eleven`; x0 coefficient (7 - c phi^5) phi^3 and prefactor 1/(p phi)
fn y_a_generic<F: CoefficientDomain>(
    p: &P4Point<F>,
    phi: &F,
    eleven: i64,
    (pre, c): (i64, i64),
) -> Result<F, CurveError> {
    let [x0, x1, x2, x3, x4] = &p.x;
    let k = |n: i64| phi.int_like(n);
    let t = phi.powu(5);
    let den = denominator(
        &[
            k(7).sub(&t.mul(&k(c))).mul(&phi.powu(3)).mul(x0),
            t.mul(&k(7)).add(&k(1)).mul(&x1.add(x4)),
            k(3).sub(&t.mul(&k(4))).mul(phi).mul(&x2.add(x3)),
        ],
        "Y_a",
    )?;
    let den = den.mul(phi).mul(&k(pre));
    let num = y_numerator(phi, eleven).mul(&x2.sub(x3));
    num.div(&den).ok_or(CurveError::DenominatorVanishes("Y_a"))
}

fn y_b_generic<F: CoefficientDomain>(p: &P4Point<F>, phi: &F, eleven: i64) -> Result<F, CurveError> {
    let [x0, x1, x2, x3, x4] = &p.x;
    let k = |n: i64| phi.int_like(n);
    let t = phi.powu(5);
    let den = denominator(
        &[
            t.mul(&k(7)).add(&k(1)).mul(x0),
            t.mul(&k(3)).add(&k(4)).mul(&phi.square()).mul(&x1.add(x4)),
            t.sub(&k(7)).mul(&phi.powu(3)).mul(&x2.add(x3)).neg(),
        ],
        "Y_b",
    )?;
    let den = den.mul(&k(2));
    let num = y_numerator(phi, eleven).mul(&x1.sub(x4));
    num.div(&den).ok_or(CurveError::DenominatorVanishes("Y_b"))
}

/// A variant of the two `Y` expressions: numerator
/// `(phi^11 + phi^6 - phi)^2`, `Y_a` prefactor `1/phi` and `x0` coefficient
/// `(7 - 2 phi^5) phi^3`. They do not satisfy the Weierstrass equation and are
/// kept for comparison.
pub fn weierstrass_y_variant<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<(F, F), CurveError> {
    Ok((y_a_generic(p, phi, 1, (1, 2))?, y_b_generic(p, phi, 1)?))
}

/// `X`, both `Y` and the coefficients `A`, `B` for a point with `x0 != 0`.
pub fn weierstrass_map<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<WeierstrassData<F>, CurveError> {
    Ok(WeierstrassData {
        a: weierstrass_a(),
        b: weierstrass_b(),
        x: weierstrass_x(p, phi)?,
        y_a: weierstrass_y_a(p, phi)?,
        y_b: weierstrass_y_b(p, phi)?,
    })
}

/// `(Y^2, X^3, A X, B)`; the residual of the Weierstrass equation is
/// `Y^2 - X^3 - A X - B`.
pub fn weierstrass_terms<F: CoefficientDomain>(x: &F, y: &F, phi: &F) -> [F; 4] {
    let a = phi.eval_poly(&weierstrass_a());
    let b = phi.eval_poly(&weierstrass_b());
    [y.square(), x.powu(3), a.mul(x), b]
}

/// `|Y^2 - X^3 - A X - B| / max |term|`.
pub fn weierstrass_relative_residual<F: CoefficientDomain>(x: &F, y: &F, phi: &F) -> f64 {
    let [y2, x3, ax, b] = weierstrass_terms(x, y, phi);
    let r = y2.sub(&x3).sub(&ax).sub(&b);
    let scale = [&y2, &x3, &ax, &b].iter().map(|t| t.magnitude()).fold(0.0, f64::max);
    if scale == 0.0 {
        r.magnitude()
    } else {
        r.magnitude() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use num_complex::Complex64;

    #[test]
    fn neutral_image_on_quintic() {
        let phi = Complex64::new(0.27, 0.13);
        let one = Complex64::new(1.0, 0.0);
        let r = plane_model_relative(PlaneModel::Quintic, &[phi, -one, one], &phi).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn arity_checked() {
        let phi = Complex64::new(0.3, 0.0);
        assert!(matches!(
            plane_model_residual(PlaneModel::Kk, &[phi, phi], &phi),
            Err(CurveError::Arity { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn coefficients_are_scaled_polynomials() {
        assert!((&weierstrass_a().scale(&int(48)) + &p20()).is_zero());
        assert!((&weierstrass_b().scale(&int(864)) - &p30()).is_zero());
    }

    #[test]
    fn discriminant_identity() {
        assert!(discriminant_check());
        let mut bumped = p20().coeffs().to_vec();
        bumped[15] += int(1);
        assert!(!discriminant_check_with(&QPoly::new(bumped), &p30()));
    }

    #[test]
    fn flipped_right_side_differs() {
        assert_ne!(discriminant_lhs(&p20(), &p30()), discriminant_rhs_flipped());
        assert_eq!(discriminant_rhs_flipped().coeff(55), int(1));
    }

    #[test]
    fn discriminant_rhs_extremes() {
        // (1 - 11 phi^5 - phi^10)^5 by repeated multiplication
        let inner = QPoly::from_terms(&[(10, -1), (5, -11), (0, 1)]);
        let mut acc = QPoly::one();
        for _ in 0..5 {
            acc = &acc * &inner;
        }
        let rhs = discriminant_rhs();
        assert_eq!(rhs, &QPoly::from_terms(&[(5, 1)]) * &acc);
        assert_eq!(rhs.low_degree(), Some(5));
        assert_eq!(rhs.degree(), Some(55));
        assert_eq!(rhs.coeff(5), int(1));
        assert_eq!(rhs.coeff(55), int(-1));
    }

    #[test]
    fn cubic_discriminant_forms_agree() {
        assert_eq!(cubic_discriminant_poly(), cubic_discriminant_closed());
        assert_eq!(cubic_discriminant_closed(), cubic_discriminant_factored());
    }

    fn theta_point(z: Complex64, tau: Complex64) -> (P4Point<Complex64>, Complex64) {
        let p = P4Point { x: crate::theta::theta_vector(z, tau).unwrap() };
        (p, crate::theta::phi_numeric(tau).unwrap())
    }

    #[test]
    fn weierstrass_map_on_theta_points() {
        for (z, tau) in [
            (Complex64::new(0.13, 0.21), Complex64::new(0.1, 1.2)),
            (Complex64::new(-0.31, 0.05), Complex64::new(-0.4, 0.9)),
            (Complex64::new(0.42, -0.33), Complex64::new(0.25, 1.7)),
        ] {
            let (p, phi) = theta_point(z, tau);
            let w = weierstrass_map(&p, &phi).unwrap();
            assert!((w.y_a - w.y_b).norm() / w.y_b.norm() < 1e-9);
            assert!(weierstrass_relative_residual(&w.x, &w.y_b, &phi) < 1e-9);
            let (ya, yb) = weierstrass_y_variant(&p, &phi).unwrap();
            assert!(weierstrass_relative_residual(&w.x, &ya, &phi) > 1e-4);
            assert!(weierstrass_relative_residual(&w.x, &yb, &phi) > 1e-4);
        }
    }

    #[test]
    fn quintic_on_theta_points() {
        let (p, phi) = theta_point(Complex64::new(0.2, 0.1), Complex64::new(0.05, 1.1));
        let r = plane_model_relative(PlaneModel::Quintic, &p.x[..3], &phi).unwrap();
        assert!(r < 1e-9, "{r}");
    }

    #[test]
    fn exceptional_locus_reported() {
        let phi = Complex64::new(0.3, 0.02);
        let o = crate::curve::neutral(&phi);
        assert!(matches!(weierstrass_x(&o, &phi), Err(CurveError::DenominatorVanishes("x0"))));
    }
}

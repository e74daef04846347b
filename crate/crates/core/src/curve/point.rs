use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::domain::CoefficientDomain;
use super::CurveError;

/// Point `(x0 : x1 : x2 : x3 : x4)` of projective 4-space.
#[derive(Clone, Debug)]
pub struct P4Point<F> {
    pub x: [F; 5],
}

impl<F: CoefficientDomain> P4Point<F> {
    /// Rejects the zero vector.
    pub fn new(x: [F; 5]) -> Result<Self, CurveError> {
        if x.iter().all(|c| c.is_zero()) {
            return Err(CurveError::ZeroVector);
        }
        Ok(P4Point { x })
    }

    /// Coordinate with index taken mod 5.
    pub fn at(&self, k: i64) -> &F {
        &self.x[k.rem_euclid(5) as usize]
    }

    pub fn max_magnitude(&self) -> f64 {
        self.x.iter().map(F::magnitude).fold(0.0, f64::max)
    }

    /// Exact projective equality: all 2x2 minors pass the domain zero test,
    /// relative to the size of the products involved.
    pub fn projective_eq(&self, other: &Self) -> bool {
        let scale = self.max_magnitude() * other.max_magnitude();
        (0..5).all(|i| {
            (i + 1..5).all(|j| {
                let m = self.x[i].mul(&other.x[j]).sub(&self.x[j].mul(&other.x[i]));
                m.magnitude() <= 1e-12 * scale
            })
        })
    }

    /// `(x_{k+s})_k`, the cyclic relabeling that preserves the curve.
    pub fn shifted(&self, s: i64) -> Self {
        P4Point { x: std::array::from_fn(|k| self.at(k as i64 + s).clone()) }
    }
}

/// The five values `x_k^2 + phi x_{k+2} x_{k-2} - phi^{-1} x_{k+1} x_{k-1}`.
pub fn quadric_residuals<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<[F; 5], CurveError> {
    let phi_inv = phi.inv().ok_or(CurveError::DivisionByZero)?;
    Ok(std::array::from_fn(|k| {
        let k = k as i64;
        p.at(k).square().add(&phi.mul(&p.at(k + 2).mul(p.at(k - 2)))).sub(&phi_inv.mul(&p.at(k + 1).mul(p.at(k - 1))))
    }))
}

/// Largest quadric residual relative to `max |x|^2`; 0 for exact zero residuals.
pub fn relative_quadric_residual<F: CoefficientDomain>(p: &P4Point<F>, phi: &F) -> Result<f64, CurveError> {
    let r = quadric_residuals(p, phi)?;
    let scale = p.max_magnitude().powi(2);
    let worst = r.iter().map(F::magnitude).fold(0.0, f64::max);
    Ok(if scale == 0.0 { worst } else { worst / scale })
}

pub fn is_on_curve<F: CoefficientDomain>(p: &P4Point<F>, phi: &F, tol: f64) -> Result<bool, CurveError> {
    Ok(relative_quadric_residual(p, phi)? <= tol)
}

/// `O = (0 : phi : -1 : 1 : -phi)`.
pub fn neutral<F: CoefficientDomain>(phi: &F) -> P4Point<F> {
    let one = phi.one_like();
    P4Point { x: [phi.zero_like(), phi.clone(), one.neg(), one, phi.neg()] }
}

/// `[-1]: (x0 : x1 : x2 : x3 : x4) -> (x0 : x4 : x3 : x2 : x1)`.
pub fn negate<F: CoefficientDomain>(p: &P4Point<F>) -> P4Point<F> {
    let x = &p.x;
    P4Point { x: [x[0].clone(), x[4].clone(), x[3].clone(), x[2].clone(), x[1].clone()] }
}

fn degenerate<F: CoefficientDomain>(z: &[F; 5], sx: f64, sy: f64) -> bool {
    let worst = z.iter().map(F::magnitude).fold(0.0, f64::max);
    worst <= 1e-12 * sx * sx * sy * sy
}

// x_a x_b y_c^2 - x_d^2 y_e y_f
fn quartic<F: CoefficientDomain>(x: &[F; 5], y: &[F; 5], t: [usize; 6]) -> F {
    let [a, b, c, d, e, f] = t;
    x[a].mul(&x[b]).mul(&y[c].square()).sub(&x[d].square().mul(&y[e]).mul(&y[f]))
}

const A1: [[usize; 6]; 5] =
    [[2, 3, 0, 0, 2, 3], [0, 1, 3, 3, 0, 1], [3, 4, 1, 1, 3, 4], [1, 2, 4, 4, 1, 2], [4, 0, 2, 2, 4, 0]];

const A2: [[usize; 6]; 5] =
    [[1, 0, 2, 3, 0, 4], [4, 3, 0, 1, 3, 2], [2, 1, 3, 4, 1, 0], [0, 4, 1, 2, 4, 3], [3, 2, 4, 0, 2, 1]];

/// First addition formula; `None` when every coordinate of the output vanishes.
pub fn add_a1<F: CoefficientDomain>(p: &P4Point<F>, q: &P4Point<F>) -> Option<P4Point<F>> {
    let z = A1.map(|t| quartic(&p.x, &q.x, t));
    (!degenerate(&z, p.max_magnitude(), q.max_magnitude())).then_some(P4Point { x: z })
}

/// Second addition formula, valid where the first one degenerates.
pub fn add_a2<F: CoefficientDomain>(p: &P4Point<F>, q: &P4Point<F>) -> Option<P4Point<F>> {
    let z = A2.map(|t| quartic(&p.x, &q.x, t));
    (!degenerate(&z, p.max_magnitude(), q.max_magnitude())).then_some(P4Point { x: z })
}

/// `P + Q`, trying the first formula and falling back to the second.
pub fn add<F: CoefficientDomain>(p: &P4Point<F>, q: &P4Point<F>) -> Result<P4Point<F>, CurveError> {
    add_a1(p, q).or_else(|| add_a2(p, q)).ok_or(CurveError::BothFormulasDegenerate)
}

/// `[2]P` via `z_k = x_{3k} x_{3k+1} x_{3k+2}^2 - x_{3k} x_{3k-1} x_{3k-2}^2`.
pub fn double<F: CoefficientDomain>(p: &P4Point<F>) -> Result<P4Point<F>, CurveError> {
    let z: [F; 5] = std::array::from_fn(|k| {
        let k = 3 * k as i64;
        let a = p.at(k).mul(p.at(k + 1)).mul(&p.at(k + 2).square());
        let b = p.at(k).mul(p.at(k - 1)).mul(&p.at(k - 2).square());
        a.sub(&b)
    });
    let s = p.max_magnitude();
    if degenerate(&z, s, s) {
        return Err(CurveError::DegenerateResult);
    }
    Ok(P4Point { x: z })
}

/// `[2]P` via `z_k = x_{3k+2} x_{3k+1}^3 - x_{3k-1}^3 x_{3k-2}`.
pub fn double_cubic<F: CoefficientDomain>(p: &P4Point<F>) -> Result<P4Point<F>, CurveError> {
    let z: [F; 5] = std::array::from_fn(|k| {
        let k = 3 * k as i64;
        let a = p.at(k + 2).mul(&p.at(k + 1).powu(3));
        let b = p.at(k - 1).powu(3).mul(p.at(k - 2));
        a.sub(&b)
    });
    let s = p.max_magnitude();
    if degenerate(&z, s, s) {
        return Err(CurveError::DegenerateResult);
    }
    Ok(P4Point { x: z })
}

/// `[n]P` by repeated addition; `[0]P = O`.
pub fn multiple<F: CoefficientDomain>(p: &P4Point<F>, n: u32, phi: &F) -> Result<P4Point<F>, CurveError> {
    let mut acc = neutral(phi);
    for _ in 0..n {
        acc = normalize_like(&add(&acc, p)?);
    }
    Ok(acc)
}

// keeps repeated numeric additions away from overflow; series pass through
fn normalize_like<F: CoefficientDomain>(p: &P4Point<F>) -> P4Point<F> {
    let s = p.max_magnitude();
    if s == 0.0 || s == 1.0 {
        return p.clone();
    }
    let k = (0..5).max_by(|&i, &j| p.x[i].magnitude().total_cmp(&p.x[j].magnitude())).unwrap();
    match p.x[k].inv() {
        Some(i) => P4Point { x: p.x.clone().map(|c| c.mul(&i)) },
        None => p.clone(),
    }
}

impl P4Point<Complex64> {
    /// Scaled so the largest coordinate equals 1.
    pub fn normalized(&self) -> Self {
        let k = (0..5).max_by(|&i, &j| self.x[i].norm().total_cmp(&self.x[j].norm())).unwrap();
        let s = self.x[k];
        P4Point { x: self.x.map(|c| c / s) }
    }

    /// `1 - |<P,Q>|^2 / (|P|^2 |Q|^2)`, evaluated as `|P - proj_Q P|^2 / |P|^2`
    /// so that nearby points do not cancel to zero.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let a = self.normalized();
        let b = other.normalized();
        let na: f64 = a.x.iter().map(|c| c.norm_sqr()).sum();
        let nb: f64 = b.x.iter().map(|c| c.norm_sqr()).sum();
        let dot: Complex64 = b.x.iter().zip(&a.x).map(|(u, v)| u.conj() * v).sum();
        let k = dot / nb;
        let rest: f64 = a.x.iter().zip(&b.x).map(|(u, v)| (u - k * v).norm_sqr()).sum();
        (rest / na).min(1.0)
    }
}

/// JSON form `[[re, im], ...]` used by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson(pub [[f64; 2]; 5]);

impl From<&P4Point<Complex64>> for PointJson {
    fn from(p: &P4Point<Complex64>) -> Self {
        PointJson(p.x.map(|c| [c.re, c.im]))
    }
}

impl TryFrom<PointJson> for P4Point<Complex64> {
    type Error = CurveError;
    fn try_from(j: PointJson) -> Result<Self, CurveError> {
        let x = j.0.map(|[re, im]| Complex64::new(re, im));
        if x.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(CurveError::NonFinite);
        }
        P4Point::new(x)
    }
}

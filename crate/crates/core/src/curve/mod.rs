//! The Bianchi quintic `E_phi` in projective 4-space: membership, group law,
//! torsion, plane models and the map to Weierstrass form.
//!
//! Every operation is generic over [`CoefficientDomain`], so the same code runs on
//! complex floating-point points and on exact Puiseux-series points.

mod domain;
mod models;
mod point;
mod torsion;

pub use domain::CoefficientDomain;
pub use models::{
    cubic_discriminant_closed, cubic_discriminant_factored, cubic_discriminant_poly, discriminant_check,
    discriminant_check_with, discriminant_lhs, discriminant_rhs, discriminant_rhs_flipped, p20, p30,
    plane_model_relative, plane_model_residual, plane_model_terms, weierstrass_a, weierstrass_b, weierstrass_map,
    weierstrass_relative_residual, weierstrass_terms, weierstrass_x, weierstrass_y_a, weierstrass_y_b,
    weierstrass_y_variant, PlaneModel, WeierstrassData,
};
pub use point::{
    add, add_a1, add_a2, double, double_cubic, is_on_curve, multiple, negate, neutral, quadric_residuals,
    relative_quadric_residual, P4Point, PointJson,
};
pub use torsion::{
    assign_nearest, cubic_coefficients, cubic_discriminant, cubic_roots, five_torsion_points, is_singular,
    two_torsion_point, two_torsion_points, two_torsion_points_series, zeta5, zeta_twist,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("phi fails the zero test; phi^-1 is undefined")]
    DivisionByZero,
    #[error("both addition formulas degenerate; inputs are off the curve or numerically invalid")]
    BothFormulasDegenerate,
    #[error("all coordinates of the result vanish")]
    DegenerateResult,
    #[error("the curve is singular at this phi")]
    SingularCurve,
    #[error("denominator of {0} vanishes; the point is in the exceptional locus")]
    DenominatorVanishes(&'static str),
    #[error("all five coordinates are zero")]
    ZeroVector,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("model expects {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
}

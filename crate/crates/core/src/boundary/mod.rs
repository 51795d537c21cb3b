//! Boundary data, boundary quadrature, Steklov coefficients and the corner reduction.

mod coefficients;
pub mod expr;
mod function;
mod integrate;
mod reduction;

pub(crate) use coefficients::partial_sum_modes;
pub use coefficients::{
    boundary_partial_sum, steklov_coefficients, steklov_coefficients_on, SteklovCoefficients,
};
pub use function::{
    eval_boundary, f1, f2, f3, BoundaryFunction, BoundarySpec, Builtin, SideFn, SideMap, SideSpec,
};
pub use integrate::{
    integrate_boundary, integrate_boundary_xy, BoundaryIntegral, MAX_PANELS_PER_SIDE,
};
pub use reduction::{corner_bilinear_reduction, corner_values, Bilinear, CORNER_TOL};

pub use crate::geometry::{BoundaryPoint, Side};

/// Parses an expression in `x` and `y` into data applied on all four sides.
pub fn parse_expression(src: &str) -> crate::Result<BoundaryFunction> {
    BoundaryFunction::parse(src)
}

//! Harmonic Steklov eigenfunction expansions for Laplace boundary value problems on the
//! rectangle `(-1, 1) × (-h, h)`.

// NaN must fail validation, so bounds are checked as `!(x <= limit)`
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod boundary;
pub mod error;
pub mod geometry;
pub mod hyperbolic;
mod par;
pub mod quadrature;
pub mod solvers;
pub mod spectrum;
pub mod tables;

pub use error::{Error, Result};
pub use geometry::{BoundaryPoint, Rectangle, Side};

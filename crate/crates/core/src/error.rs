use thiserror::Error;

use crate::boundary::Side;
use crate::spectrum::Family;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rectangle: {0}")]
    InvalidGeometry(String),

    #[error(
        "root finder did not converge for {family} on branch {branch} in bracket [{lo}, {hi}]"
    )]
    RootNotConverged {
        family: Family,
        branch: usize,
        lo: f64,
        hi: f64,
    },

    #[error("point ({x}, {y}) lies outside the closed rectangle")]
    OutsideDomain { x: f64, y: f64 },

    #[error("parameter t = {t} is outside the interval of side {side}")]
    OutsideSide { side: Side, t: f64 },

    #[error("normal derivative is undefined at the corner ({x}, {y})")]
    CornerNormal { x: f64, y: f64 },

    #[error("quadrature on {side} exhausted its panel budget: partial value {partial}, worst panel [{worst_lo}, {worst_hi}]")]
    Quadrature {
        side: Side,
        partial: f64,
        worst_lo: f64,
        worst_hi: f64,
    },

    #[error("coefficient for mode {mode} failed: {source}")]
    Coefficient {
        mode: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("function `{name}` takes {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("Neumann data is incompatible: boundary mean {mean:e} exceeds tolerance {tol:e}")]
    IncompatibleNeumann { mean: f64, tol: f64 },

    #[error("corner ({x}, {y}) has conflicting values {first} and {second} on its two sides")]
    CornerConflict {
        x: f64,
        y: f64,
        first: f64,
        second: f64,
    },

    #[error("spectrum holds {have} nonconstant modes, {need} required")]
    InsufficientSpectrum { have: usize, need: usize },

    #[error("spectrum cache rejected: {0}")]
    Cache(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

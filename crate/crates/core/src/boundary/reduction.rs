use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::function::{BoundaryFunction, SideMap};
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};

/// Two adjoining sides must agree this closely at a shared corner.
pub const CORNER_TOL: f64 = 1e-9;

/// The harmonic bilinear `a0 + a1 x + a2 y + a3 x y`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bilinear {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Bilinear {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.a0 + self.a1 * x + self.a2 * y + self.a3 * x * y
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a1 + self.a3 * y, self.a2 + self.a3 * x)
    }

    /// Interpolant of the values at `(1, h)`, `(-1, h)`, `(-1, -h)`, `(1, -h)`.
    pub fn from_corners(h: f64, [a, b, c, d]: [f64; 4]) -> Self {
        Self {
            a0: (a + b + c + d) / 4.0,
            a1: (a - b - c + d) / 4.0,
            a2: (a + b - c - d) / (4.0 * h),
            a3: (a - b + c - d) / (4.0 * h),
        }
    }
}

/// For each corner, counterclockwise from `(1, h)`: the two sides meeting there and their parameters.
fn corner_sides(rect: &Rectangle) -> [((Side, f64), (Side, f64)); 4] {
    let h = rect.h();
    [
        ((Side::Right, h), (Side::Top, -1.0)),
        ((Side::Top, 1.0), (Side::Left, -h)),
        ((Side::Left, h), (Side::Bottom, -1.0)),
        ((Side::Bottom, 1.0), (Side::Right, -h)),
    ]
}

/// Corner values of `g`, failing when the two sides disagree.
pub fn corner_values(g: &BoundaryFunction, rect: &Rectangle) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (i, ((s1, t1), (s2, t2))) in corner_sides(rect).into_iter().enumerate() {
        let (v1, v2) = (g.value(rect, s1, t1), g.value(rect, s2, t2));
        if !((v1 - v2).abs() <= CORNER_TOL * v1.abs().max(v2.abs()).max(1.0)) {
            let (x, y) = rect.corners()[i];
            return Err(Error::CornerConflict {
                x,
                y,
                first: v1,
                second: v2,
            });
        }
        out[i] = 0.5 * (v1 + v2);
    }
    Ok(out)
}

/// Splits `g = g₀ + g₁` with `g₀` the bilinear corner interpolant, so that `g₁` vanishes at the corners.
pub fn corner_bilinear_reduction(
    g: &BoundaryFunction,
    rect: &Rectangle,
) -> Result<(Bilinear, BoundaryFunction)> {
    let lift = Bilinear::from_corners(rect.h(), corner_values(g, rect)?);
    let sides: [SideMap; 4] = std::array::from_fn(|i| {
        let side = Side::ALL[i];
        let inner = g.side(side).clone();
        SideMap::Func(Arc::new(move |x, y, t| {
            inner.eval(x, y, t) - lift.value(x, y)
        }))
    });
    Ok((
        lift,
        BoundaryFunction::from_sides(format!("{} - bilinear", g.name), sides),
    ))
}

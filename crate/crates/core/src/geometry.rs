use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used when deciding whether a point lies on the closed rectangle.
pub const GEOMETRY_EPS: f64 = 1e-12;

/// The rectangle `(-1, 1) × (-h, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    h: f64,
}

impl Rectangle {
    /// Accepts `0 < h ≤ 1`. Taller rectangles must be transposed by the caller.
    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "aspect ratio must be positive, got {h}"
            )));
        }
        if h > 1.0 {
            return Err(Error::InvalidGeometry(format!(
                "aspect ratio {h} > 1; transpose the problem so that the long side is along x"
            )));
        }
        Ok(Self { h })
    }

    pub fn unit_square() -> Self {
        Self { h: 1.0 }
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn perimeter(&self) -> f64 {
        4.0 * (1.0 + self.h)
    }

    pub fn is_square(&self) -> bool {
        self.h == 1.0
    }

    /// Corners counterclockwise from `(1, h)`.
    pub fn corners(&self) -> [(f64, f64); 4] {
        let h = self.h;
        [(1.0, h), (-1.0, h), (-1.0, -h), (1.0, -h)]
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x.abs() <= 1.0 + GEOMETRY_EPS && y.abs() <= self.h + GEOMETRY_EPS
    }

    pub fn check_contains(&self, x: f64, y: f64) -> Result<()> {
        if self.contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutsideDomain { x, y })
        }
    }

    /// Sides the point lies on (two at a corner, none in the interior).
    pub fn sides_at(&self, x: f64, y: f64) -> Vec<Side> {
        let mut out = Vec::with_capacity(2);
        if (x - 1.0).abs() <= GEOMETRY_EPS && y.abs() <= self.h + GEOMETRY_EPS {
            out.push(Side::Right);
        }
        if (y - self.h).abs() <= GEOMETRY_EPS && x.abs() <= 1.0 + GEOMETRY_EPS {
            out.push(Side::Top);
        }
        if (x + 1.0).abs() <= GEOMETRY_EPS && y.abs() <= self.h + GEOMETRY_EPS {
            out.push(Side::Left);
        }
        if (y + self.h).abs() <= GEOMETRY_EPS && x.abs() <= 1.0 + GEOMETRY_EPS {
            out.push(Side::Bottom);
        }
        out
    }

    pub fn is_corner(&self, x: f64, y: f64) -> bool {
        self.sides_at(x, y).len() > 1
    }
}

/// The four sides, traversed counterclockwise.
///
/// | side     | points        | parameter       |
/// |----------|---------------|-----------------|
/// | `Right`  | `(1, t)`      | `t ∈ [-h, h]`   |
/// | `Top`    | `(-t, h)`     | `t ∈ [-1, 1]`   |
/// | `Left`   | `(-1, -t)`    | `t ∈ [-h, h]`   |
/// | `Bottom` | `(t, -h)`     | `t ∈ [-1, 1]`   |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "G1")]
    Right,
    #[serde(rename = "G2")]
    Top,
    #[serde(rename = "G3")]
    Left,
    #[serde(rename = "G4")]
    Bottom,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Right, Side::Top, Side::Left, Side::Bottom];

    pub fn label(&self) -> &'static str {
        match self {
            Side::Right => "G1",
            Side::Top => "G2",
            Side::Left => "G3",
            Side::Bottom => "G4",
        }
    }

    pub fn from_label(label: &str) -> Option<Side> {
        Side::ALL
            .into_iter()
            .find(|s| s.label().eq_ignore_ascii_case(label))
    }

    pub fn half_length(&self, rect: &Rectangle) -> f64 {
        match self {
            Side::Right | Side::Left => rect.h(),
            Side::Top | Side::Bottom => 1.0,
        }
    }

    pub fn interval(&self, rect: &Rectangle) -> (f64, f64) {
        let a = self.half_length(rect);
        (-a, a)
    }

    pub fn point(&self, rect: &Rectangle, t: f64) -> (f64, f64) {
        let h = rect.h();
        match self {
            Side::Right => (1.0, t),
            Side::Top => (-t, h),
            Side::Left => (-1.0, -t),
            Side::Bottom => (t, -h),
        }
    }

    /// Parameter of a point known to lie on this side.
    pub fn parameter(&self, x: f64, y: f64) -> f64 {
        match self {
            Side::Right => y,
            Side::Top => -x,
            Side::Left => -y,
            Side::Bottom => x,
        }
    }

    pub fn outward_normal(&self) -> (f64, f64) {
        match self {
            Side::Right => (1.0, 0.0),
            Side::Top => (0.0, 1.0),
            Side::Left => (-1.0, 0.0),
            Side::Bottom => (0.0, -1.0),
        }
    }

    pub fn check_parameter(&self, rect: &Rectangle, t: f64) -> Result<()> {
        let a = self.half_length(rect);
        if t.is_finite() && t.abs() <= a + GEOMETRY_EPS {
            Ok(())
        } else {
            Err(Error::OutsideSide { side: *self, t })
        }
    }

    pub fn is_endpoint(&self, rect: &Rectangle, t: f64) -> bool {
        (t.abs() - self.half_length(rect)).abs() <= GEOMETRY_EPS
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A point on one side, addressed by its side parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub side: Side,
    pub t: f64,
}

impl BoundaryPoint {
    pub fn new(side: Side, t: f64) -> Self {
        Self { side, t }
    }

    pub fn xy(&self, rect: &Rectangle) -> (f64, f64) {
        self.side.point(rect, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_aspect_ratios() {
        assert!(Rectangle::new(0.0).is_err());
        assert!(Rectangle::new(-1.0).is_err());
        assert!(Rectangle::new(1.5).is_err());
        assert!(Rectangle::new(f64::NAN).is_err());
        assert_eq!(Rectangle::new(0.5).unwrap().perimeter(), 6.0);
    }

    #[test]
    fn side_lengths_sum_to_perimeter() {
        let r = Rectangle::new(0.8).unwrap();
        let total: f64 = Side::ALL.iter().map(|s| 2.0 * s.half_length(&r)).sum();
        assert_eq!(total, r.perimeter());
    }

    #[test]
    fn parametrization_round_trips_and_is_counterclockwise() {
        let r = Rectangle::new(0.5).unwrap();
        for side in Side::ALL {
            let (lo, hi) = side.interval(&r);
            let start = side.point(&r, lo);
            let end = side.point(&r, hi);
            for t in [lo, 0.1, hi] {
                let (x, y) = side.point(&r, t);
                assert_eq!(side.parameter(x, y), t);
                assert!(r.sides_at(x, y).contains(&side));
            }
            // each side ends where the next one starts
            let next = Side::ALL[(Side::ALL.iter().position(|s| *s == side).unwrap() + 1) % 4];
            assert_eq!(end, next.point(&r, next.interval(&r).0));
            assert_ne!(start, end);
        }
        assert!(r.is_corner(1.0, 0.5));
        assert!(!r.is_corner(1.0, 0.2));
    }
}

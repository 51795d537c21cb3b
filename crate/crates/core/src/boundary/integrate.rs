use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};
use crate::quadrature::{integrate, Tolerance};

/// Panel budget for one side.
pub const MAX_PANELS_PER_SIDE: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryIntegral {
    pub value: f64,
    pub error: f64,
}

/// `∫_∂Ω f dσ` as the sum of four adaptive side integrals.
///
/// The integrand receives the side and its parameter, so data with jumps at corners is
/// never integrated across a jump.
pub fn integrate_boundary<F>(rect: &Rectangle, f: F, tol: Tolerance) -> Result<BoundaryIntegral>
where
    F: Fn(Side, f64) -> f64,
{
    let mut total = BoundaryIntegral {
        value: 0.0,
        error: 0.0,
    };
    for side in Side::ALL {
        let (lo, hi) = side.interval(rect);
        match integrate(|t| f(side, t), lo, hi, tol, MAX_PANELS_PER_SIDE) {
            Ok(r) => {
                total.value += r.value;
                total.error += r.error;
            }
            Err(e) => {
                return Err(Error::Quadrature {
                    side,
                    partial: e.partial,
                    worst_lo: e.worst.0,
                    worst_hi: e.worst.1,
                })
            }
        }
    }
    Ok(total)
}

/// Same as [`integrate_boundary`] for an integrand in `(x, y)`.
pub fn integrate_boundary_xy<F>(rect: &Rectangle, f: F, tol: Tolerance) -> Result<BoundaryIntegral>
where
    F: Fn(f64, f64) -> f64,
{
    integrate_boundary(
        rect,
        |side, t| {
            let (x, y) = side.point(rect, t);
            f(x, y)
        },
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perimeter_and_polynomials() {
        let r = Rectangle::unit_square();
        let one = integrate_boundary_xy(&r, |_, _| 1.0, Tolerance::default()).unwrap();
        assert!((one.value - 8.0).abs() < 1e-12);
        let x2 = integrate_boundary_xy(&r, |x, _| x * x, Tolerance::default()).unwrap();
        assert!((x2.value - (4.0 + 4.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn polynomials_up_to_degree_eight_per_side() {
        let r = Rectangle::new(0.6).unwrap();
        let h: f64 = 0.6;
        for p in 0..=8 {
            for q in 0..=(8 - p) {
                let v =
                    integrate_boundary_xy(&r, |x, y| x.powi(p) * y.powi(q), Tolerance::default())
                        .unwrap()
                        .value;
                // ∫ over x = ±1 of y^q, plus ∫ over y = ±h of x^p
                let m = |k: i32, a: f64| {
                    if k % 2 == 1 {
                        0.0
                    } else {
                        2.0 * a.powi(k + 1) / (k + 1) as f64
                    }
                };
                let exact =
                    (1.0 + (-1f64).powi(p)) * m(q, h) + (h.powi(q) + (-h).powi(q)) * m(p, 1.0);
                assert!((v - exact).abs() < 1e-10, "x^{p} y^{q}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn budget_failure_names_the_side() {
        let r = Rectangle::unit_square();
        let err = integrate_boundary(
            &r,
            |s, t| {
                if s == Side::Top {
                    1.0 / (t - 0.123_456).abs().sqrt()
                } else {
                    0.0
                }
            },
            Tolerance::new(1e-15, 1e-15),
        )
        .unwrap_err();
        assert!(
            matches!(
                err,
                Error::Quadrature {
                    side: Side::Top,
                    ..
                }
            ),
            "{err}"
        );
    }
}

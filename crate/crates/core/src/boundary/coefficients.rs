use super::function::BoundaryFunction;
use super::integrate::integrate_boundary;
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};
use crate::quadrature::Tolerance;
use crate::spectrum::{Spectrum, SteklovMode};

/// Weighted boundary inner products `⟨g, s̃_j⟩ = |∂Ω|⁻¹ ∫ g s̃_j dσ` for every mode of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SteklovCoefficients {
    /// Boundary mean `ḡ`, equal to `values[0]`.
    pub gbar: f64,
    /// One entry per mode of the spectrum, aligned with `Spectrum::modes`.
    pub values: Vec<f64>,
    /// Quadrature error estimates, on the same weighted scale.
    pub errors: Vec<f64>,
    /// `|∂Ω|⁻¹ ∫ g² dσ`.
    pub norm_sq: f64,
}

impl SteklovCoefficients {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first `n + 1` entries (constant plus `n` modes).
    pub fn prefix(&self, n: usize) -> Self {
        let k = (n + 1).min(self.values.len());
        Self {
            gbar: self.gbar,
            values: self.values[..k].to_vec(),
            errors: self.errors[..k].to_vec(),
            norm_sq: self.norm_sq,
        }
    }

    /// `ḡ² + Σ ĝ_j²`, the weighted squared norm of the partial sum.
    pub fn partial_norm_sq(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum()
    }

    /// `‖g − g_M‖²` on the weighted scale, by Parseval.
    pub fn tail_norm_sq(&self) -> f64 {
        (self.norm_sq - self.partial_norm_sq()).max(0.0)
    }

    /// Partial sum at `(x, y)`.
    pub fn partial_sum(&self, spec: &Spectrum, x: f64, y: f64) -> f64 {
        partial_sum_modes(&self.values, spec.modes(), x, y)
    }
}

pub(crate) fn partial_sum_modes(weights: &[f64], modes: &[SteklovMode], x: f64, y: f64) -> f64 {
    weights
        .iter()
        .zip(modes)
        .map(|(w, m)| w * m.value(x, y))
        .sum()
}

fn check_rect(spec: &Spectrum, rect: &Rectangle) -> Result<()> {
    if spec.rect() != rect {
        return Err(Error::InvalidInput(format!(
            "spectrum is built for h = {}, data for h = {}",
            spec.h(),
            rect.h()
        )));
    }
    Ok(())
}

/// Coefficients of `g` against every mode of `spec`, each integral to tolerance `tol`.
pub fn steklov_coefficients(
    g: &BoundaryFunction,
    spec: &Spectrum,
    tol: Tolerance,
) -> Result<SteklovCoefficients> {
    let rect = *spec.rect();
    let p = rect.perimeter();
    let modes = spec.modes();
    let one = |j: usize| -> Result<(f64, f64)> {
        let m = &modes[j];
        let r = integrate_boundary(
            &rect,
            |side: Side, t| {
                let (x, y) = side.point(&rect, t);
                g.value(&rect, side, t) * m.value(x, y)
            },
            tol,
        )
        .map_err(|e| Error::Coefficient {
            mode: j,
            source: Box::new(e),
        })?;
        Ok((r.value / p, r.error / p))
    };
    let results = crate::par::try_map(modes.len(), one)?;
    let norm = integrate_boundary(
        &rect,
        |side, t| {
            let v = g.value(&rect, side, t);
            v * v
        },
        tol,
    )?;
    let (values, errors): (Vec<f64>, Vec<f64>) = results.into_iter().unzip();
    Ok(SteklovCoefficients {
        gbar: values[0],
        values,
        errors,
        norm_sq: norm.value / p,
    })
}

/// `g_M = ḡ + Σ ĝ_j s̃_j` at parameter `t` of `side`.
pub fn boundary_partial_sum(
    c: &SteklovCoefficients,
    spec: &Spectrum,
    side: Side,
    t: f64,
) -> Result<f64> {
    let rect = spec.rect();
    side.check_parameter(rect, t)?;
    let (x, y) = side.point(rect, t);
    Ok(c.partial_sum(spec, x, y))
}

/// Coefficients of `g` checked against a rectangle first.
pub fn steklov_coefficients_on(
    g: &BoundaryFunction,
    rect: &Rectangle,
    spec: &Spectrum,
    tol: Tolerance,
) -> Result<SteklovCoefficients> {
    check_rect(spec, rect)?;
    steklov_coefficients(g, spec, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::function::Builtin;
    use crate::boundary::integrate::integrate_boundary_xy;
    use crate::spectrum::{build_spectrum, SelectionPolicy};

    const TIGHT: Tolerance = Tolerance::new(1e-13, 1e-12);

    #[test]
    fn constant_data() {
        let spec =
            build_spectrum(&Rectangle::new(0.8).unwrap(), SelectionPolicy::PerFamily(2)).unwrap();
        let c = steklov_coefficients(
            &BoundaryFunction::constant(2.5),
            &spec,
            Tolerance::default(),
        )
        .unwrap();
        assert!((c.gbar - 2.5).abs() < 1e-12);
        assert!(c.values[1..].iter().all(|v| v.abs() < 1e-9));
        assert!((boundary_partial_sum(&c, &spec, Side::Top, 0.3).unwrap() - 2.5).abs() < 1e-8);
    }

    #[test]
    fn trace_of_a_mode_picks_out_that_mode() {
        let spec =
            build_spectrum(&Rectangle::unit_square(), SelectionPolicy::PerFamily(2)).unwrap();
        for k in [1, 5, 16] {
            let m = spec.modes()[k].clone();
            let g = BoundaryFunction::from_fn("trace", move |x, y| m.value(x, y));
            let c = steklov_coefficients(&g, &spec, TIGHT).unwrap();
            for (j, v) in c.values.iter().enumerate() {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-8, "mode {k}, coefficient {j}: {v}");
            }
        }
    }

    #[test]
    fn mean_of_f1_on_the_square() {
        let r = Rectangle::unit_square();
        let spec = build_spectrum(&r, SelectionPolicy::PerFamily(1)).unwrap();
        let c = steklov_coefficients(&Builtin::F1.function(&r, 1.0), &spec, Tolerance::default())
            .unwrap();
        assert!((c.gbar + 0.8).abs() < 1e-12);
    }

    #[test]
    fn bessel_and_pythagoras() {
        let r = Rectangle::unit_square();
        let spec = build_spectrum(&r, SelectionPolicy::PerFamily(3)).unwrap();
        let g = Builtin::F2.function(&r, 1.0);
        let c = steklov_coefficients(&g, &spec, TIGHT).unwrap();
        assert!(c.partial_norm_sq() <= c.norm_sq + 1e-8);
        let direct = integrate_boundary_xy(
            &r,
            |x, y| {
                let d = super::super::function::f2(x, y) - c.partial_sum(&spec, x, y);
                d * d
            },
            TIGHT,
        )
        .unwrap()
        .value
            / r.perimeter();
        assert!(
            (direct - c.tail_norm_sq()).abs() <= 1e-6 * direct,
            "{direct} vs {}",
            c.tail_norm_sq()
        );
    }

    #[test]
    fn projection_is_idempotent() {
        let r = Rectangle::new(0.5).unwrap();
        let spec = build_spectrum(&r, SelectionPolicy::Global(20)).unwrap();
        let c = steklov_coefficients(&Builtin::F3.function(&r, 1.0), &spec, TIGHT).unwrap();
        let spec2 = spec.clone();
        let c2 = c.clone();
        let gm = BoundaryFunction::from_fn("g_M", move |x, y| c2.partial_sum(&spec2, x, y));
        let again = steklov_coefficients(&gm, &spec, TIGHT).unwrap();
        for (a, b) in c.values.iter().zip(&again.values) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn mismatched_rectangle_is_rejected() {
        let spec =
            build_spectrum(&Rectangle::unit_square(), SelectionPolicy::PerFamily(1)).unwrap();
        let r = Rectangle::new(0.5).unwrap();
        assert!(steklov_coefficients_on(
            &BoundaryFunction::zero(),
            &r,
            &spec,
            Tolerance::default()
        )
        .is_err());
    }
}

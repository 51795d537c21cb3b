//! Dirichlet, Robin and Neumann solvers built on Steklov expansions.

mod grid;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use grid::{format_g, Grid};

use crate::boundary::{
    corner_bilinear_reduction, steklov_coefficients, Bilinear, BoundaryFunction,
    SteklovCoefficients,
};
use crate::error::{Error, Result};
use crate::geometry::Side;
use crate::quadrature::Tolerance;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemKind {
    Dirichlet,
    Robin { b: f64 },
    Neumann,
}

impl ProblemKind {
    pub fn robin(b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "Robin coefficient must be positive, got {b}"
            )));
        }
        Ok(ProblemKind::Robin { b })
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemKind::Dirichlet => f.write_str("dirichlet"),
            ProblemKind::Robin { b } => write!(f, "robin(b={b})"),
            ProblemKind::Neumann => f.write_str("neumann"),
        }
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    /// `dirichlet`, `neumann`, `robin` (b = 1) or `robin:B`.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(ProblemKind::Dirichlet),
            "neumann" => Ok(ProblemKind::Neumann),
            "robin" => ProblemKind::robin(1.0),
            other => match other.strip_prefix("robin:").map(str::parse::<f64>) {
                Some(Ok(b)) => ProblemKind::robin(b),
                _ => Err(Error::InvalidInput(format!("unknown problem kind `{s}`"))),
            },
        }
    }
}

/// Gradient of an approximation; `one_sided` marks points on the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    pub dx: f64,
    pub dy: f64,
    pub one_sided: bool,
}

/// `u_M = constant + lift + Σ w_j s̃_j`, immutable once built.
#[derive(Debug, Clone)]
pub struct SteklovApproximation {
    pub kind: ProblemKind,
    spectrum: Spectrum,
    /// Coefficients of the expanded data (of `g₁` when a lift is present).
    pub coefficients: SteklovCoefficients,
    /// One weight per mode; `weights[0]` is the constant term.
    pub weights: Vec<f64>,
    pub lift: Option<Bilinear>,
}

impl SteklovApproximation {
    /// Applies the weight rule of `kind` to precomputed coefficients.
    pub fn from_coefficients(
        kind: ProblemKind,
        spectrum: &Spectrum,
        coefficients: SteklovCoefficients,
        lift: Option<Bilinear>,
    ) -> Result<Self> {
        if coefficients.len() != spectrum.len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a spectrum of {} modes",
                coefficients.len(),
                spectrum.len()
            )));
        }
        if lift.is_some() && kind != ProblemKind::Dirichlet {
            return Err(Error::InvalidInput(
                "a bilinear lift only applies to Dirichlet data".into(),
            ));
        }
        let weights = coefficients
            .values
            .iter()
            .zip(spectrum.modes())
            .map(|(c, m)| match kind {
                ProblemKind::Dirichlet => *c,
                ProblemKind::Robin { b } => c / (b + m.delta),
                ProblemKind::Neumann if m.delta == 0.0 => 0.0,
                ProblemKind::Neumann => c / m.delta,
            })
            .collect();
        Ok(Self {
            kind,
            spectrum: spectrum.clone(),
            coefficients,
            weights,
            lift,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn constant_term(&self) -> f64 {
        self.weights[0]
    }

    /// Same data on the constant plus the first `n` modes of a globally ordered spectrum.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        let spec = self.spectrum.truncated(n)?;
        Self::from_coefficients(self.kind, &spec, self.coefficients.prefix(n), self.lift)
    }

    /// Value at `(x, y)` without a domain check.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let lift = self.lift.map_or(0.0, |l| l.value(x, y));
        lift + crate::boundary::partial_sum_modes(&self.weights, self.spectrum.modes(), x, y)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.spectrum.rect().check_contains(x, y)?;
        Ok(self.value(x, y))
    }

    /// Term-by-term gradient without a domain check.
    pub fn gradient_unchecked(&self, x: f64, y: f64) -> (f64, f64) {
        let (mut gx, mut gy) = self.lift.map_or((0.0, 0.0), |l| l.gradient(x, y));
        for (w, m) in self.weights.iter().zip(self.spectrum.modes()) {
            let (a, b) = m.gradient(x, y);
            gx += w * a;
            gy += w * b;
        }
        (gx, gy)
    }

    pub fn eval_gradient(&self, x: f64, y: f64) -> Result<Gradient> {
        let rect = self.spectrum.rect();
        rect.check_contains(x, y)?;
        let (dx, dy) = self.gradient_unchecked(x, y);
        Ok(Gradient {
            dx,
            dy,
            one_sided: !rect.sides_at(x, y).is_empty(),
        })
    }

    /// Outward normal derivative at parameter `t` of `side`.
    pub fn normal_derivative(&self, side: Side, t: f64) -> f64 {
        let (x, y) = side.point(self.spectrum.rect(), t);
        let (gx, gy) = self.gradient_unchecked(x, y);
        let (nx, ny) = side.outward_normal();
        gx * nx + gy * ny
    }

    /// Values on an `nx × ny` equispaced grid over the closed rectangle, x fastest.
    pub fn eval_grid(&self, nx: usize, ny: usize) -> Result<Grid> {
        Grid::sample(self.spectrum.rect(), nx, ny, |x, y| self.value(x, y))
    }
}

/// Harmonic extension of `g`; with `corner_reduction` the bilinear corner interpolant is
/// split off first and only the remainder is expanded.
pub fn solve_dirichlet(
    g: &BoundaryFunction,
    spec: &Spectrum,
    corner_reduction: bool,
    tol: Tolerance,
) -> Result<SteklovApproximation> {
    if corner_reduction {
        let (lift, g1) = corner_bilinear_reduction(g, spec.rect())?;
        let c = steklov_coefficients(&g1, spec, tol)?;
        SteklovApproximation::from_coefficients(ProblemKind::Dirichlet, spec, c, Some(lift))
    } else {
        let c = steklov_coefficients(g, spec, tol)?;
        SteklovApproximation::from_coefficients(ProblemKind::Dirichlet, spec, c, None)
    }
}

/// Galerkin solution of `D_ν u + b u = g`.
pub fn solve_robin(
    g: &BoundaryFunction,
    b: f64,
    spec: &Spectrum,
    tol: Tolerance,
) -> Result<SteklovApproximation> {
    let kind = ProblemKind::robin(b)?;
    let c = steklov_coefficients(g, spec, tol)?;
    SteklovApproximation::from_coefficients(kind, spec, c, None)
}

/// Default compatibility tolerance: `1e-8` times the RMS of the data.
pub fn default_mean_tol(c: &SteklovCoefficients) -> f64 {
    1e-8 * c.norm_sq.sqrt()
}

/// Fails unless the data has (numerically) zero boundary mean.
pub fn check_neumann_compatible(c: &SteklovCoefficients, mean_tol: Option<f64>) -> Result<()> {
    let tol = mean_tol.unwrap_or_else(|| default_mean_tol(c));
    if c.gbar.abs() > tol {
        return Err(Error::IncompatibleNeumann { mean: c.gbar, tol });
    }
    Ok(())
}

/// Minimum-norm solution of `D_ν u = g`, normalized to zero boundary mean.
pub fn solve_neumann(
    g: &BoundaryFunction,
    spec: &Spectrum,
    mean_tol: Option<f64>,
    tol: Tolerance,
) -> Result<SteklovApproximation> {
    let c = steklov_coefficients(g, spec, tol)?;
    check_neumann_compatible(&c, mean_tol)?;
    SteklovApproximation::from_coefficients(ProblemKind::Neumann, spec, c, None)
}

/// Dispatches on `kind`; corner reduction is only honored for Dirichlet problems.
pub fn solve(
    kind: ProblemKind,
    g: &BoundaryFunction,
    spec: &Spectrum,
    corner_reduction: bool,
    mean_tol: Option<f64>,
    tol: Tolerance,
) -> Result<SteklovApproximation> {
    match kind {
        ProblemKind::Dirichlet => solve_dirichlet(g, spec, corner_reduction, tol),
        ProblemKind::Robin { b } => solve_robin(g, b, spec, tol),
        ProblemKind::Neumann => solve_neumann(g, spec, mean_tol, tol),
    }
}

//! Error norms, error reports, a-priori bounds and convergence studies.

mod exact;
mod invariants;

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use exact::ExactSolution;
pub use invariants::{invariant_suite, CheckResult, InvariantReport, TolProfile};

use crate::boundary::{
    corner_bilinear_reduction, integrate_boundary, integrate_boundary_xy, steklov_coefficients,
    BoundaryFunction, SteklovCoefficients,
};
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};
use crate::quadrature::{gauss_legendre, Tolerance};
use crate::solvers::{check_neumann_compatible, ProblemKind, SteklovApproximation};
use crate::spectrum::{
    build_spectrum, eigenvalue_of, find_roots, Family, SelectionPolicy, Spectrum, ROOT_TOL,
};

/// The five evaluation points used by the pointwise tables.
pub const TABLE_POINTS: [(f64, f64); 5] =
    [(0.9, 0.9), (0.9, 0.1), (0.8, 0.6), (0.3, 0.9), (0.5, 0.5)];

/// Tolerance for integrals of squared errors, which are small.
pub const ERROR_TOL: Tolerance = Tolerance::new(1e-15, 1e-10);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    /// `(|∂Ω|⁻¹ ∫ f² dσ)^½`
    BoundaryL2Weighted,
    /// `(∫ f² dσ)^½`
    BoundaryL2,
    /// Largest `|f|` over boundary samples.
    BoundarySup,
    /// `(∫_Ω f²)^½`
    InteriorL2,
    /// Largest `|f|` over a grid on the closed rectangle.
    InteriorSup,
    /// `|∂Ω|⁻¹ (∫_Ω |∇f|² + ∫ f² dσ)`, squared.
    DNormSq,
    /// `Σ δ_j ĝ_j²`.
    SpectralSeminorm,
}

/// Boundary error of an approximation against a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryErrors {
    /// `(∫ (ref − approx)² dσ)^½`
    pub l2: f64,
    /// Sampled sup of `|ref − approx|`.
    pub sup: f64,
    pub reference_l2: f64,
    pub reference_sup: f64,
}

impl BoundaryErrors {
    pub fn rerr_inf(&self) -> f64 {
        self.sup / self.reference_sup
    }

    pub fn rerr_2(&self) -> f64 {
        self.l2 / self.reference_l2
    }
}

/// `n` points per side at the midpoints of `n` equal cells, so corners are never sampled.
pub fn boundary_samples(rect: &Rectangle, n: usize) -> Vec<(Side, f64)> {
    let mut out = Vec::with_capacity(4 * n);
    for side in Side::ALL {
        let (lo, hi) = side.interval(rect);
        let step = (hi - lo) / n as f64;
        out.extend((0..n).map(|i| (side, lo + (i as f64 + 0.5) * step)));
    }
    out
}

/// L² error by adaptive quadrature and sup error by sampling, with the matching norms of the reference.
pub fn boundary_error<R, A>(
    rect: &Rectangle,
    reference: R,
    approx: A,
    samples_per_side: usize,
    tol: Tolerance,
) -> Result<BoundaryErrors>
where
    R: Fn(Side, f64) -> f64,
    A: Fn(f64, f64) -> f64,
{
    if samples_per_side < 16 {
        return Err(Error::InvalidInput(format!(
            "need at least 16 samples per side, got {samples_per_side}"
        )));
    }
    let err_sq = integrate_boundary(
        rect,
        |side, t| {
            let (x, y) = side.point(rect, t);
            let d = reference(side, t) - approx(x, y);
            d * d
        },
        tol,
    )?;
    let ref_sq = integrate_boundary(rect, |side, t| reference(side, t).powi(2), tol)?;
    let (mut sup, mut reference_sup) = (0.0_f64, 0.0_f64);
    for (side, t) in boundary_samples(rect, samples_per_side) {
        let (x, y) = side.point(rect, t);
        let r = reference(side, t);
        sup = sup.max((r - approx(x, y)).abs());
        reference_sup = reference_sup.max(r.abs());
    }
    Ok(BoundaryErrors {
        l2: err_sq.value.max(0.0).sqrt(),
        sup,
        reference_l2: ref_sq.value.sqrt(),
        reference_sup,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorErrors {
    /// Sup over the full grid.
    pub sup: f64,
    /// Sup over grid points in the centered half-size rectangle.
    pub sup_center: f64,
    /// `(∫_Ω e²)^½` by tensor Gauss–Legendre.
    pub l2: f64,
}

pub fn interior_error<E, A>(
    rect: &Rectangle,
    exact: E,
    approx: A,
    grid: usize,
    gl_nodes: usize,
) -> Result<InteriorErrors>
where
    E: Fn(f64, f64) -> f64 + Sync,
    A: Fn(f64, f64) -> f64 + Sync,
{
    let h = rect.h();
    let g = crate::solvers::Grid::sample(rect, grid, grid, |x, y| exact(x, y) - approx(x, y))?;
    let mut sup = 0.0_f64;
    let mut sup_center = 0.0_f64;
    for (x, y, e) in g.points() {
        sup = sup.max(e.abs());
        if x.abs() <= 0.5 + 1e-12 && y.abs() <= 0.5 * h + 1e-12 {
            sup_center = sup_center.max(e.abs());
        }
    }
    let l2 = crate::quadrature::tensor_gauss_legendre(
        |x, y| (exact(x, y) - approx(x, y)).powi(2),
        (-1.0, 1.0),
        (-h, h),
        gl_nodes,
    )
    .max(0.0)
    .sqrt();
    Ok(InteriorErrors {
        sup,
        sup_center,
        l2,
    })
}

/// `∫_Ω |∇f|²` by tensor Gauss–Legendre.
pub fn gradient_energy<G>(rect: &Rectangle, gradient: G, gl_nodes: usize) -> f64
where
    G: Fn(f64, f64) -> (f64, f64),
{
    let h = rect.h();
    let (nodes, weights) = gauss_legendre(gl_nodes);
    let mut total = 0.0;
    for (xi, wi) in nodes.iter().zip(&weights) {
        for (yj, wj) in nodes.iter().zip(&weights) {
            let (gx, gy) = gradient(*xi, h * yj);
            total += wi * wj * (gx * gx + gy * gy);
        }
    }
    total * h
}

/// Weighted squared ∂-norm `|∂Ω|⁻¹ (∫_Ω |∇f|² + ∫ f² dσ)`.
pub fn d_norm_sq<F, G>(
    rect: &Rectangle,
    value: F,
    gradient: G,
    gl_nodes: usize,
    tol: Tolerance,
) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
    G: Fn(f64, f64) -> (f64, f64),
{
    let trace = integrate_boundary_xy(rect, |x, y| value(x, y).powi(2), tol)?.value;
    Ok((gradient_energy(rect, gradient, gl_nodes) + trace) / rect.perimeter())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointRow {
    pub x: f64,
    pub y: f64,
    pub approx: f64,
    pub exact: f64,
    pub abs_err: f64,
}

pub fn pointwise_table<E: Fn(f64, f64) -> f64>(
    exact: E,
    approx: &SteklovApproximation,
    points: &[(f64, f64)],
) -> Result<Vec<PointRow>> {
    points
        .iter()
        .map(|&(x, y)| {
            let a = approx.eval(x, y)?;
            let e = exact(x, y);
            Ok(PointRow {
                x,
                y,
                approx: a,
                exact: e,
                abs_err: (e - a).abs(),
            })
        })
        .collect()
}

/// `(1 + δ)/(b + δ)² · tail`.
pub fn robin_bound_value(delta_next: f64, b: f64, tail: f64) -> f64 {
    (1.0 + delta_next) / (b + delta_next).powi(2) * tail
}

fn bound_from_prefix(
    coeffs: &SteklovCoefficients,
    spec: &Spectrum,
    b: f64,
    m: usize,
) -> Result<f64> {
    if spec.len() < m + 2 || coeffs.len() < m + 1 {
        return Err(Error::InsufficientSpectrum {
            have: spec.len().saturating_sub(1),
            need: m + 1,
        });
    }
    let tail = (coeffs.norm_sq - coeffs.prefix(m).partial_norm_sq()).max(0.0);
    Ok(robin_bound_value(spec.modes()[m + 1].delta, b, tail))
}

/// Bound on the weighted ∂-norm² error of the Robin solution on the first `m` nonconstant modes of a
/// δ-ordered spectrum; `spec` must hold mode `m + 1`.
pub fn robin_bound(coeffs: &SteklovCoefficients, spec: &Spectrum, b: f64, m: usize) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::InvalidInput(format!(
            "Robin coefficient must be positive, got {b}"
        )));
    }
    bound_from_prefix(coeffs, spec, b, m)
}

/// The Neumann analogue, `(1 + δ)/δ² · tail`.
pub fn neumann_bound(coeffs: &SteklovCoefficients, spec: &Spectrum, m: usize) -> Result<f64> {
    bound_from_prefix(coeffs, spec, 0.0, m)
}

/// Smallest eigenvalue among modes not in `retained`.
pub fn next_excluded_delta(retained: &Spectrum) -> Result<f64> {
    let rect = retained.rect();
    let mut best = f64::INFINITY;
    if rect.is_square() && !retained.modes().iter().any(|m| m.family == Family::XY) {
        best = 1.0;
    }
    for f in Family::SEPARABLE {
        let have = retained.modes().iter().filter(|m| m.family == f).count();
        let roots = find_roots(f, rect, have + 1, ROOT_TOL)?;
        best = best.min(eigenvalue_of(f, roots[have], rect));
    }
    Ok(best)
}

/// One row of a convergence study. Boundary norms are unweighted; `spectral_tail` is
/// `∫_Ω |∇(u − u_M)|²` computed from coefficients of a deeper expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub rerr_inf: f64,
    pub rerr_2: f64,
    #[serde(rename = "err_L2_boundary")]
    pub err_l2_boundary: f64,
    pub err_sup_boundary: f64,
    #[serde(rename = "err_L2_interior")]
    pub err_l2_interior: Option<f64>,
    pub err_sup_interior: Option<f64>,
    pub spectral_tail: Option<f64>,
    pub robin_bound: Option<f64>,
}

pub fn reports_to_json(reports: &[ErrorReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

pub fn reports_to_csv(reports: &[ErrorReport]) -> String {
    let opt = |v: Option<f64>| v.map(|v| format!("{v:.10e}")).unwrap_or_default();
    let mut out = String::from(
        "M,rerr_inf,rerr_2,err_L2_boundary,err_sup_boundary,err_L2_interior,err_sup_interior,spectral_tail,robin_bound\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{:.10e},{:.10e},{:.10e},{:.10e},{},{},{},{}",
            r.m,
            r.rerr_inf,
            r.rerr_2,
            r.err_l2_boundary,
            r.err_sup_boundary,
            opt(r.err_l2_interior),
            opt(r.err_sup_interior),
            opt(r.spectral_tail),
            opt(r.robin_bound)
        );
    }
    out
}

/// How the mode set grows with `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// `M` roots of each family.
    PerFamily,
    /// `8M` modes of smallest eigenvalue counting the constant; the Neumann expansion has
    /// no constant term, so there all `8M` are nonconstant.
    Global,
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selection::PerFamily => "per-family",
            Selection::Global => "global",
        })
    }
}

impl Selection {
    pub fn policy(self, m: usize, kind: ProblemKind) -> SelectionPolicy {
        match (self, kind) {
            (Selection::PerFamily, _) => SelectionPolicy::PerFamily(m),
            (Selection::Global, ProblemKind::Neumann) => SelectionPolicy::Global(8 * m),
            (Selection::Global, _) => SelectionPolicy::Global((8 * m).saturating_sub(1)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StudyProblem {
    pub kind: ProblemKind,
    pub data: BoundaryFunction,
    pub rect: Rectangle,
    pub exact: Option<ExactSolution>,
}

#[derive(Debug, Clone, Copy)]
pub struct StudyOptions {
    pub tol: Tolerance,
    pub samples_per_side: usize,
    /// Points per axis of the interior sup grid.
    pub grid: usize,
    pub gl_nodes: usize,
    /// Roots per family of the reference expansion behind `spectral_tail` (Dirichlet only).
    pub tail_reference: Option<usize>,
    pub bounds: bool,
    pub corner_reduction: bool,
    pub mean_tol: Option<f64>,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            samples_per_side: 1000,
            grid: 101,
            gl_nodes: 64,
            tail_reference: None,
            bounds: true,
            corner_reduction: false,
            mean_tol: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StudyRun {
    pub report: ErrorReport,
    pub approximation: SteklovApproximation,
    pub interior: Option<InteriorErrors>,
}

#[derive(Debug, Clone)]
pub struct Study {
    pub runs: Vec<StudyRun>,
    /// Boundary L² error never increases along the M list.
    pub monotone: bool,
}

impl Study {
    pub fn reports(&self) -> Vec<ErrorReport> {
        self.runs.iter().map(|r| r.report.clone()).collect()
    }
}

fn mode_key(m: &crate::spectrum::SteklovMode) -> (Family, usize) {
    (m.family, m.root)
}

/// Solves for each `M` and measures the errors.
///
/// The boundary reference is the exact solution when one is given (shifted to zero boundary
/// mean for Neumann problems), otherwise the data itself compared with the partial sum `g_M`.
pub fn convergence_study(
    problem: &StudyProblem,
    selection: Selection,
    ms: &[usize],
    opts: &StudyOptions,
) -> Result<Study> {
    if ms.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("M list must be increasing".into()));
    }
    let rect = problem.rect;
    let reduction = opts.corner_reduction && problem.kind == ProblemKind::Dirichlet;
    let (lift, expanded) = if reduction {
        let (l, g1) = corner_bilinear_reduction(&problem.data, &rect)?;
        (Some(l), g1)
    } else {
        (None, problem.data.clone())
    };

    let exact_shift = match (problem.exact, problem.kind) {
        (Some(e), ProblemKind::Neumann) => {
            integrate_boundary_xy(&rect, |x, y| e.value(x, y), ERROR_TOL)?.value / rect.perimeter()
        }
        _ => 0.0,
    };
    let exact_fn = problem
        .exact
        .map(|e| move |x: f64, y: f64| e.value(x, y) - exact_shift);

    let tail_ref = match (opts.tail_reference, problem.kind) {
        (Some(k), ProblemKind::Dirichlet) => {
            let deep = build_spectrum(&rect, SelectionPolicy::PerFamily(k))?;
            let c = steklov_coefficients(&expanded, &deep, opts.tol)?;
            Some((deep, c))
        }
        _ => None,
    };

    let mut runs = Vec::with_capacity(ms.len());
    for &m in ms {
        let spec = build_spectrum(&rect, selection.policy(m, problem.kind))?;
        let coeffs = steklov_coefficients(&expanded, &spec, opts.tol)?;
        if problem.kind == ProblemKind::Neumann {
            check_neumann_compatible(&coeffs, opts.mean_tol)?;
        }
        let approx = SteklovApproximation::from_coefficients(problem.kind, &spec, coeffs, lift)?;

        let be = match &exact_fn {
            Some(u) => boundary_error(
                &rect,
                |side, t| {
                    let (x, y) = side.point(&rect, t);
                    u(x, y)
                },
                |x, y| approx.value(x, y),
                opts.samples_per_side,
                ERROR_TOL,
            )?,
            None if problem.kind == ProblemKind::Dirichlet => boundary_error(
                &rect,
                |side, t| problem.data.value(&rect, side, t),
                |x, y| approx.value(x, y),
                opts.samples_per_side,
                ERROR_TOL,
            )?,
            None => boundary_error(
                &rect,
                |side, t| expanded.value(&rect, side, t),
                |x, y| approx.coefficients.partial_sum(&spec, x, y),
                opts.samples_per_side,
                ERROR_TOL,
            )?,
        };

        let interior = match &exact_fn {
            Some(u) => Some(interior_error(
                &rect,
                u,
                |x, y| approx.value(x, y),
                opts.grid,
                opts.gl_nodes,
            )?),
            None => None,
        };

        let spectral_tail = tail_ref.as_ref().map(|(deep, c)| {
            let kept: HashSet<_> = spec.modes().iter().map(mode_key).collect();
            rect.perimeter()
                * deep
                    .modes()
                    .iter()
                    .zip(&c.values)
                    .filter(|(mode, _)| !kept.contains(&mode_key(mode)))
                    .map(|(mode, v)| mode.delta * v * v)
                    .sum::<f64>()
        });

        let robin_bound = match problem.kind {
            _ if !opts.bounds => None,
            ProblemKind::Dirichlet => None,
            ProblemKind::Robin { b } => Some(robin_bound_value(
                next_excluded_delta(&spec)?,
                b,
                approx.coefficients.tail_norm_sq(),
            )),
            ProblemKind::Neumann => Some(robin_bound_value(
                next_excluded_delta(&spec)?,
                0.0,
                approx.coefficients.tail_norm_sq(),
            )),
        };

        runs.push(StudyRun {
            report: ErrorReport {
                m,
                rerr_inf: be.rerr_inf(),
                rerr_2: be.rerr_2(),
                err_l2_boundary: be.l2,
                err_sup_boundary: be.sup,
                err_l2_interior: interior.map(|i| i.l2),
                err_sup_interior: interior.map(|i| i.sup),
                spectral_tail,
                robin_bound,
            },
            approximation: approx,
            interior,
        });
    }
    let monotone = runs
        .windows(2)
        .all(|w| w[1].report.err_l2_boundary <= w[0].report.err_l2_boundary * (1.0 + 1e-12));
    Ok(Study { runs, monotone })
}

/// Weighted ∂-norm² of `u − u_M` for a closed-form `u`.
pub fn measured_d_norm_error(
    approx: &SteklovApproximation,
    exact: ExactSolution,
    gl_nodes: usize,
) -> Result<f64> {
    let rect = *approx.spectrum().rect();
    d_norm_sq(
        &rect,
        |x, y| exact.value(x, y) - approx.value(x, y),
        |x, y| {
            let (a, b) = exact.gradient(x, y);
            let (c, d) = approx.gradient_unchecked(x, y);
            (a - c, b - d)
        },
        gl_nodes,
        ERROR_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Builtin;
    use crate::solvers::solve_dirichlet;

    #[test]
    fn self_comparison_is_zero() {
        let r = Rectangle::unit_square();
        let spec = build_spectrum(&r, SelectionPolicy::PerFamily(2)).unwrap();
        let u = solve_dirichlet(
            &Builtin::F2.function(&r, 1.0),
            &spec,
            false,
            Tolerance::default(),
        )
        .unwrap();
        let e = boundary_error(
            &r,
            |s, t| {
                let (x, y) = s.point(&r, t);
                u.value(x, y)
            },
            |x, y| u.value(x, y),
            64,
            ERROR_TOL,
        )
        .unwrap();
        assert!(e.l2 < 1e-9 && e.sup < 1e-9);
        assert!(boundary_error(&r, |_, _| 0.0, |_, _| 0.0, 8, ERROR_TOL).is_err());
    }

    #[test]
    fn samples_avoid_corners() {
        let r = Rectangle::new(0.5).unwrap();
        let s = boundary_samples(&r, 20);
        assert_eq!(s.len(), 80);
        assert!(s.iter().all(|(side, t)| !side.is_endpoint(&r, *t)));
    }

    #[test]
    fn f1_rerr_on_the_square() {
        let p = StudyProblem {
            kind: ProblemKind::Dirichlet,
            data: Builtin::F1.function(&Rectangle::unit_square(), 1.0),
            rect: Rectangle::unit_square(),
            exact: None,
        };
        let s = convergence_study(
            &p,
            Selection::PerFamily,
            &[2, 3, 5],
            &StudyOptions::default(),
        )
        .unwrap();
        let r = s.reports();
        let rel = |a: f64, b: f64| (a - b).abs() / b;
        assert!(rel(r[0].rerr_inf, 6.59553e-3) < 0.01, "{}", r[0].rerr_inf);
        for (rep, want) in r.iter().zip([5.22051e-3, 1.57535e-3, 3.1167e-4]) {
            assert!(rel(rep.rerr_2, want) < 0.01, "{} vs {want}", rep.rerr_2);
        }
        assert!(s.monotone);
    }

    #[test]
    fn bound_vanishes_for_finite_expansions_and_needs_depth() {
        let r = Rectangle::new(0.5).unwrap();
        let spec = build_spectrum(&r, SelectionPolicy::Global(10)).unwrap();
        let m = spec.modes()[3].clone();
        let g = BoundaryFunction::from_fn("mode", move |x, y| m.value(x, y));
        let c = steklov_coefficients(&g, &spec, Tolerance::new(1e-13, 1e-12)).unwrap();
        assert!(robin_bound(&c, &spec, 1.0, 5).unwrap() < 1e-12);
        assert!(matches!(
            robin_bound(&c, &spec, 1.0, 10),
            Err(Error::InsufficientSpectrum { .. })
        ));
        assert!(neumann_bound(&c, &spec, 5).unwrap() < 1e-12);
    }

    #[test]
    fn next_excluded() {
        let r = Rectangle::unit_square();
        let s = build_spectrum(&r, SelectionPolicy::Global(2)).unwrap();
        // F5, F8 retained; xy is next
        assert_eq!(next_excluded_delta(&s).unwrap(), 1.0);
        let s = build_spectrum(&r, SelectionPolicy::Global(3)).unwrap();
        let deeper = build_spectrum(&r, SelectionPolicy::Global(4)).unwrap();
        assert!((next_excluded_delta(&s).unwrap() - deeper.modes()[4].delta).abs() < 1e-14);
    }

    #[test]
    fn report_serialization_names() {
        let r = ErrorReport {
            m: 5,
            rerr_inf: 1.0,
            rerr_2: 2.0,
            err_l2_boundary: 3.0,
            err_sup_boundary: 4.0,
            err_l2_interior: None,
            err_sup_interior: Some(5.0),
            spectral_tail: None,
            robin_bound: None,
        };
        let v: serde_json::Value =
            serde_json::from_str(&reports_to_json(std::slice::from_ref(&r)).unwrap()).unwrap();
        for k in [
            "M",
            "rerr_inf",
            "rerr_2",
            "err_L2_boundary",
            "err_sup_boundary",
            "err_L2_interior",
            "err_sup_interior",
            "spectral_tail",
            "robin_bound",
        ] {
            assert!(v[0].get(k).is_some(), "{k}");
        }
        let csv = reports_to_csv(&[r]);
        assert!(csv.starts_with("M,rerr_inf,rerr_2,err_L2_boundary"));
        assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 9);
    }

    #[test]
    fn rerr_is_scale_invariant() {
        let r = Rectangle::new(0.8).unwrap();
        let g = Builtin::F3.function(&r, 1.0);
        let mut out = Vec::new();
        for data in [g.clone(), g.scaled(10.0)] {
            let p = StudyProblem {
                kind: ProblemKind::Dirichlet,
                data,
                rect: r,
                exact: None,
            };
            let opts = StudyOptions {
                tol: Tolerance::new(1e-13, 1e-12),
                ..StudyOptions::default()
            };
            out.push(
                convergence_study(&p, Selection::Global, &[2], &opts)
                    .unwrap()
                    .reports()[0]
                    .clone(),
            );
        }
        assert!((out[0].rerr_inf - out[1].rerr_inf).abs() < 1e-10);
        assert!((out[0].rerr_2 - out[1].rerr_2).abs() < 1e-10);
    }
}

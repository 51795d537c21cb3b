//! Self-checks of a spectrum: normalization, orthogonality, the Steklov condition, harmonicity,
//! root residuals, eigenvalue ordering and dilation scaling.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::geometry::{Rectangle, Side};
use crate::quadrature::gauss_legendre;
use crate::spectrum::{
    eigenvalue_of, scale_mode, Family, SelectionPolicy, Spectrum, SteklovMode, ROOT_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolProfile {
    pub normalization: f64,
    pub orthogonality: f64,
    /// Relative tolerance on `∂ₙs̃ − δ s̃` at boundary samples.
    pub steklov: f64,
    /// Relative size of the 5-point Laplacian.
    pub harmonic: f64,
    pub delta_rule: f64,
    pub scaling: f64,
    pub d_norm: f64,
    /// Random points per mode for pointwise checks.
    pub samples: usize,
}

impl Default for TolProfile {
    fn default() -> Self {
        Self {
            normalization: 1e-8,
            orthogonality: 1e-8,
            steklov: 1e-8,
            harmonic: 1e-5,
            delta_rule: 1e-12,
            scaling: 1e-12,
            d_norm: 1e-6,
            samples: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation seen (zero when nothing was checked).
    pub worst: f64,
    pub tol: f64,
    /// Mode index of the worst violation.
    pub worst_mode: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub h: f64,
    pub modes: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Worst {
    value: f64,
    mode: Option<usize>,
}

impl Worst {
    fn see(&mut self, v: f64, mode: usize) {
        // NaN counts as a violation
        if !(v <= self.value) {
            self.value = if v.is_nan() { f64::INFINITY } else { v };
            self.mode = Some(mode);
        }
    }

    fn result(self, name: &'static str, tol: f64) -> CheckResult {
        CheckResult {
            name,
            passed: self.value <= tol,
            worst: self.value,
            tol,
            worst_mode: self.mode,
        }
    }
}

// Gauss–Legendre samples of every mode on every side, weighted so that dot products give |∂Ω|⁻¹ ∫ s_i s_j dσ.
struct BoundaryTable {
    weights: Vec<f64>,
    values: Vec<Vec<f64>>,
}

fn boundary_table(spec: &Spectrum) -> BoundaryTable {
    let rect = spec.rect();
    let nu_max = spec.modes().iter().map(|m| m.nu).fold(0.0, f64::max);
    let n = ((3.0 * nu_max).ceil() as usize + 64).min(2000);
    let (nodes, w) = gauss_legendre(n);
    let mut points = Vec::with_capacity(4 * n);
    let mut weights = Vec::with_capacity(4 * n);
    for side in Side::ALL {
        let a = side.half_length(rect);
        for (t, wt) in nodes.iter().zip(&w) {
            points.push(side.point(rect, a * t));
            weights.push(a * wt / rect.perimeter());
        }
    }
    let values = spec
        .modes()
        .iter()
        .map(|m| points.iter().map(|&(x, y)| m.value(x, y)).collect())
        .collect();
    BoundaryTable { weights, values }
}

fn random_boundary_point(rect: &Rectangle, rng: &mut StdRng) -> (Side, f64) {
    let side = Side::ALL[rng.gen_range(0..4)];
    let a = side.half_length(rect);
    // stay off the corners, where the normal is undefined
    (side, rng.gen_range(-a * (1.0 - 1e-9)..a * (1.0 - 1e-9)))
}

fn steklov_defect(m: &SteklovMode, side: Side, t: f64, rect: &Rectangle) -> f64 {
    let (x, y) = side.point(rect, t);
    let s = m.value(x, y);
    let dn = m.normal_derivative_unchecked(side, t);
    (dn - m.delta * s).abs() / ((1.0 + m.delta) * m.sup_bound().max(1.0))
}

fn gradient_energy_of(m: &SteklovMode, rect: &Rectangle) -> f64 {
    let n = ((3.0 * m.nu).ceil() as usize + 48).min(600);
    let (nodes, w) = gauss_legendre(n);
    let h = rect.h();
    let mut total = 0.0;
    for (xi, wi) in nodes.iter().zip(&w) {
        for (yj, wj) in nodes.iter().zip(&w) {
            let (gx, gy) = m.gradient(*xi, h * yj);
            total += wi * wj * (gx * gx + gy * gy);
        }
    }
    total * h
}

/// Runs every check on `spec`; random points come from `seed`.
pub fn invariant_suite(spec: &Spectrum, profile: &TolProfile, seed: u64) -> InvariantReport {
    let rect = *spec.rect();
    let modes = spec.modes();
    let mut rng = StdRng::seed_from_u64(seed);
    let table = boundary_table(spec);
    let mut checks = Vec::new();

    let gram = |i: usize, j: usize| -> f64 {
        table
            .weights
            .iter()
            .zip(&table.values[i])
            .zip(&table.values[j])
            .map(|((w, a), b)| w * a * b)
            .sum()
    };

    let mut norm = Worst::default();
    let mut orth = Worst::default();
    for i in 0..modes.len() {
        norm.see((gram(i, i) - 1.0).abs(), i);
        for j in 0..i {
            orth.see(gram(i, j).abs(), i);
        }
    }
    checks.push(norm.result("normalization", profile.normalization));
    checks.push(orth.result("orthogonality", profile.orthogonality));

    let mut stek = Worst::default();
    for (i, m) in modes.iter().enumerate() {
        for _ in 0..profile.samples {
            let (side, t) = random_boundary_point(&rect, &mut rng);
            stek.see(steklov_defect(m, side, t, &rect), i);
        }
    }
    checks.push(stek.result("steklov_residual", profile.steklov));

    let mut harm = Worst::default();
    for (i, m) in modes.iter().enumerate() {
        let scale = m.nu.max(1.0);
        let eta = 1e-3 / scale;
        for _ in 0..profile.samples.min(20) {
            let x = rng.gen_range(-0.9..0.9);
            let y = rng.gen_range(-0.9..0.9) * rect.h();
            let lap = (m.value(x + eta, y)
                + m.value(x - eta, y)
                + m.value(x, y + eta)
                + m.value(x, y - eta)
                - 4.0 * m.value(x, y))
                / (eta * eta);
            harm.see(lap.abs() / (scale * scale * m.sup_bound().max(1e-300)), i);
        }
    }
    checks.push(harm.result("harmonicity", profile.harmonic));

    let mut root = Worst::default();
    let mut rule = Worst::default();
    for (i, m) in modes.iter().enumerate() {
        match m.family {
            Family::Const => rule.see(m.delta.abs(), i),
            Family::XY => rule.see((m.delta - 1.0).abs(), i),
            f => {
                let limit = 10.0 * ROOT_TOL * f.derivative_scale(&rect) + 8.0 * f64::EPSILON;
                root.see(f.residual(m.nu, &rect).abs() / limit, i);
                let d = eigenvalue_of(f, m.nu, &rect);
                rule.see((d - m.delta).abs() / d.max(1.0), i);
            }
        }
    }
    checks.push(root.result("root_residual", 1.0));
    checks.push(rule.result("delta_rule", profile.delta_rule));

    // ν increases along each family, and δ along the whole list for globally selected spectra
    let mut mono = Worst::default();
    for f in Family::SEPARABLE {
        let nus: Vec<(usize, f64)> = modes
            .iter()
            .filter(|m| m.family == f)
            .map(|m| (m.index, m.nu))
            .collect();
        for w in nus.windows(2) {
            mono.see(
                (w[0].1 - w[1].1).max(0.0) + if w[1].1 == w[0].1 { 1.0 } else { 0.0 },
                w[1].0,
            );
        }
    }
    if matches!(spec.selection(), SelectionPolicy::Global(_)) {
        for w in modes.windows(2) {
            mono.see((w[0].delta - w[1].delta).max(0.0), w[1].index);
        }
    }
    checks.push(mono.result("delta_monotone", 0.0));

    let mut scal = Worst::default();
    for (i, m) in modes.iter().enumerate() {
        for l in [0.5, 2.0, 3.0] {
            let sm = scale_mode(m, l).expect("positive dilation");
            scal.see((sm.delta * l - m.delta).abs() / m.delta.max(1.0), i);
            for _ in 0..8 {
                let (side, t) = random_boundary_point(&rect, &mut rng);
                let (x, y) = side.point(&rect, t);
                let base = m.normal_derivative_unchecked(side, t);
                let scaled = sm.normal_derivative(side, l * t);
                let defect = (l * scaled - base).abs() / base.abs().max(1.0);
                let value =
                    (sm.value(l * x, l * y) - m.value(x, y)).abs() / m.value(x, y).abs().max(1.0);
                scal.see(defect.max(value), i);
            }
        }
    }
    checks.push(scal.result("dilation_scaling", profile.scaling));

    let mut dn = Worst::default();
    for (i, m) in modes.iter().enumerate() {
        let weighted =
            (gradient_energy_of(m, &rect) / rect.perimeter() + gram(i, i)) / (1.0 + m.delta);
        dn.see((weighted - 1.0).abs(), i);
    }
    checks.push(dn.result("d_norm", profile.d_norm));

    InvariantReport {
        h: rect.h(),
        modes: modes.len(),
        seed,
        checks,
    }
}

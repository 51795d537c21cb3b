//! One-dimensional quadrature: globally adaptive Gauss–Kronrod (7/15) and
//! Gauss–Legendre node generation for the tensor rules used on the interior.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae on [0, 1], Gauss nodes at odd positions.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abstol: f64,
    pub reltol: f64,
}

impl Tolerance {
    pub const fn new(abstol: f64, reltol: f64) -> Self {
        Self { abstol, reltol }
    }

    /// Error target for an integral of the given magnitude.
    pub fn target(&self, value: f64) -> f64 {
        self.abstol.max(self.reltol * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-10, 1e-6)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct BudgetExhausted {
    pub partial: f64,
    pub error: f64,
    pub worst: (f64, f64),
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Globally adaptive G7/K15 quadrature of `f` over `[lo, hi]`.
///
/// The interval starts as `initial_panels` equal panels; the panel with the
/// largest error estimate is bisected until the summed estimate meets
/// `tol.target(value)` or `max_panels` is reached.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
    max_panels: usize,
) -> Result<Integral, BudgetExhausted> {
    if hi == lo {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let initial_panels = 10;
    let width = (hi - lo) / initial_panels as f64;
    let mut heap = BinaryHeap::with_capacity(2 * initial_panels);
    for i in 0..initial_panels {
        let a = lo + i as f64 * width;
        let b = if i + 1 == initial_panels {
            hi
        } else {
            a + width
        };
        heap.push(kronrod15(&f, a, b));
    }
    let mut evaluations = 15 * initial_panels;
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= tol.target(value) {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        let worst = *heap.peek().expect("at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if heap.len() >= max_panels || mid <= worst.lo || mid >= worst.hi {
            return Err(BudgetExhausted {
                partial: value,
                error,
                worst: (worst.lo, worst.hi),
            });
        }
        heap.pop();
        heap.push(kronrod15(&f, worst.lo, mid));
        heap.push(kronrod15(&f, mid, worst.hi));
        evaluations += 30;
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor Gauss–Legendre rule on `[x0, x1] × [y0, y1]`.
pub fn tensor_gauss_legendre<F: Fn(f64, f64) -> f64>(
    f: F,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    n: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let (cx, hx) = (0.5 * (x0 + x1), 0.5 * (x1 - x0));
    let (cy, hy) = (0.5 * (y0 + y1), 0.5 * (y1 - y0));
    let mut total = 0.0;
    for (xi, wi) in nodes.iter().zip(&weights) {
        let x = cx + hx * xi;
        let mut row = 0.0;
        for (yj, wj) in nodes.iter().zip(&weights) {
            row += wj * f(x, cy + hy * yj);
        }
        total += wi * row;
    }
    total * hx * hy
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomials_are_exact() {
        for deg in 0..=8 {
            let r = integrate(
                |x| x.powi(deg),
                -1.0,
                2.0,
                Tolerance::new(1e-13, 1e-13),
                1000,
            )
            .unwrap();
            let exact = (2.0_f64.powi(deg + 1) - (-1.0_f64).powi(deg + 1)) / (deg + 1) as f64;
            assert!((r.value - exact).abs() < 1e-12, "degree {deg}");
        }
    }

    #[test]
    fn oscillatory_integrand() {
        let nu = 120.0;
        let r = integrate(
            |t| (nu * t).cos().powi(2),
            -1.0,
            1.0,
            Tolerance::new(1e-12, 1e-12),
            2000,
        )
        .unwrap();
        assert_relative_eq!(
            r.value,
            1.0 + (2.0 * nu).sin() / (2.0 * nu),
            max_relative = 1e-12
        );
    }

    #[test]
    fn zero_integral_terminates_on_abstol() {
        let r = integrate(|t| t.sin(), -1.0, 1.0, Tolerance::default(), 100).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn budget_is_reported() {
        let err = integrate(
            |t| 1.0 / t.abs().sqrt(),
            -1.0,
            1.0,
            Tolerance::new(1e-15, 1e-15),
            12,
        )
        .unwrap_err();
        assert!(err.partial.is_finite());
        assert!(err.worst.0 >= -1.0 && err.worst.1 <= 1.0 && err.worst.0 < err.worst.1);
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        let (x, w) = gauss_legendre(64);
        assert_relative_eq!(w.iter().sum::<f64>(), 2.0, max_relative = 1e-14);
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(126)).sum();
        assert_relative_eq!(i, 2.0 / 127.0, max_relative = 1e-12);
        let (x5, _) = gauss_legendre(5);
        assert!(x5[2].abs() < 1e-15);
    }

    #[test]
    fn tensor_rule() {
        let v = tensor_gauss_legendre(|x, y| x * x * y.powi(4), (-1.0, 1.0), (-0.5, 0.5), 8);
        assert_relative_eq!(
            v,
            (2.0 / 3.0) * (2.0 * 0.5_f64.powi(5) / 5.0),
            max_relative = 1e-13
        );
    }
}

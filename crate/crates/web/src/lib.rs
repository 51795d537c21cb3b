//! Browser bindings: eigenvalue listing, solution heat map and boundary trace.

use wasm_bindgen::prelude::*;

use steklov::boundary::{BoundaryFunction, BoundarySpec};
use steklov::quadrature::Tolerance;
use steklov::solvers::{solve, ProblemKind, SteklovApproximation};
use steklov::spectrum::{build_spectrum, SelectionPolicy};
use steklov::{Rectangle, Side};

fn js(e: steklov::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `family, nu, delta` rows of the `count` smallest nonconstant eigenvalues, one per line.
#[wasm_bindgen]
pub fn eigenvalues(h: f64, count: usize) -> Result<String, JsError> {
    let rect = Rectangle::new(h).map_err(js)?;
    let spec = build_spectrum(&rect, SelectionPolicy::Global(count)).map_err(js)?;
    Ok(spec
        .modes()
        .iter()
        .skip(1)
        .map(|m| format!("{},{},{}\n", m.family, m.nu, m.delta))
        .collect())
}

#[wasm_bindgen]
pub struct Solution {
    rect: Rectangle,
    data: BoundaryFunction,
    approx: SteklovApproximation,
}

#[wasm_bindgen]
impl Solution {
    /// `kind` is dirichlet, robin or neumann; `data` takes the command-line forms
    /// (builtin:f1, expr:exp(x)*sin(y), or side JSON). `m` roots per family.
    #[wasm_bindgen(constructor)]
    pub fn new(kind: &str, data: &str, h: f64, m: usize, b: f64) -> Result<Solution, JsError> {
        let kind = match kind {
            "dirichlet" => ProblemKind::Dirichlet,
            "neumann" => ProblemKind::Neumann,
            "robin" => ProblemKind::robin(b).map_err(js)?,
            other => return Err(JsError::new(&format!("unknown problem kind `{other}`"))),
        };
        let rect = Rectangle::new(h).map_err(js)?;
        let data = BoundarySpec::from_cli(data)
            .and_then(|s| s.build(&rect, b))
            .map_err(js)?;
        let spec = build_spectrum(&rect, SelectionPolicy::PerFamily(m)).map_err(js)?;
        let approx = solve(kind, &data, &spec, false, None, Tolerance::default()).map_err(js)?;
        Ok(Solution { rect, data, approx })
    }

    pub fn modes(&self) -> usize {
        self.approx.spectrum().len()
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64, JsError> {
        self.approx.eval(x, y).map_err(js)
    }

    /// Row-major samples, x fastest, on an n x n grid over the closed rectangle.
    pub fn grid(&self, n: usize) -> Result<Vec<f64>, JsError> {
        Ok(self.approx.eval_grid(n, n).map_err(js)?.values)
    }

    /// Interleaved (data, approximation) pairs at `per_side` points on each of G1..G4.
    /// The approximation side is u, du/dn or du/dn + b u according to the problem kind.
    pub fn boundary_trace(&self, per_side: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(8 * per_side);
        for side in Side::ALL {
            let (lo, hi) = side.interval(&self.rect);
            for i in 0..per_side {
                let t = lo + (hi - lo) * (i as f64 + 0.5) / per_side as f64;
                let (x, y) = side.point(&self.rect, t);
                let u = self.approx.value(x, y);
                let bu = match self.approx.kind {
                    ProblemKind::Dirichlet => u,
                    ProblemKind::Neumann => self.approx.normal_derivative(side, t),
                    ProblemKind::Robin { b } => self.approx.normal_derivative(side, t) + b * u,
                };
                out.push(self.data.value(&self.rect, side, t));
                out.push(bu);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_trace_follows_the_data() {
        let s = Solution::new("dirichlet", "builtin:f3", 0.7, 6, 1.0)
            .ok()
            .unwrap();
        let trace = s.boundary_trace(16);
        assert_eq!(trace.len(), 128);
        let worst = trace
            .chunks(2)
            .fold(0.0_f64, |m, p| m.max((p[0] - p[1]).abs()));
        assert!(worst < 0.05, "{worst}");
        assert_eq!(s.grid(5).ok().unwrap().len(), 25);
    }

    #[test]
    fn robin_trace_uses_the_boundary_operator() {
        let s = Solution::new("robin", "builtin:bd3", 1.0, 5, 1.0)
            .ok()
            .unwrap();
        let trace = s.boundary_trace(10);
        let rms = (trace.chunks(2).map(|p| (p[0] - p[1]).powi(2)).sum::<f64>() / 40.0).sqrt();
        assert!(rms < 0.1, "{rms}");
    }

    #[test]
    fn eigenvalue_listing() {
        let text = eigenvalues(1.0, 3).ok().unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[2].starts_with("XY,0,1"));
    }
}

use std::fmt;

use crate::boundary::{f1, f2, f3, Builtin};

/// Harmonic functions with known closed forms, used as reference solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactSolution {
    F1,
    F2,
    F3,
    /// `x + y`
    Linear,
    /// `x² - y²`
    Saddle,
    /// `eˣ sin y`
    ExpSin,
}

impl ExactSolution {
    pub const ALL: [ExactSolution; 6] = [
        ExactSolution::F1,
        ExactSolution::F2,
        ExactSolution::F3,
        ExactSolution::Linear,
        ExactSolution::Saddle,
        ExactSolution::ExpSin,
    ];

    /// Solution of the boundary problem a builtin data set belongs to.
    pub fn for_builtin(b: Builtin) -> Self {
        match b {
            Builtin::F1 => ExactSolution::F1,
            Builtin::F2 => ExactSolution::F2,
            Builtin::F3 => ExactSolution::F3,
            Builtin::Bd1 => ExactSolution::Linear,
            Builtin::Bd2 => ExactSolution::Saddle,
            Builtin::Bd3 => ExactSolution::ExpSin,
        }
    }

    pub fn value(self, x: f64, y: f64) -> f64 {
        match self {
            ExactSolution::F1 => f1(x, y),
            ExactSolution::F2 => f2(x, y),
            ExactSolution::F3 => f3(x, y),
            ExactSolution::Linear => x + y,
            ExactSolution::Saddle => x * x - y * y,
            ExactSolution::ExpSin => x.exp() * y.sin(),
        }
    }

    pub fn gradient(self, x: f64, y: f64) -> (f64, f64) {
        match self {
            ExactSolution::F1 => (
                4.0 * x * x * x - 12.0 * x * y * y,
                4.0 * y * y * y - 12.0 * x * x * y,
            ),
            ExactSolution::F2 => {
                let a = 2.0 - x;
                let r2 = a * a + y * y;
                ((a * a - y * y) / (r2 * r2), -2.0 * a * y / (r2 * r2))
            }
            ExactSolution::F3 => {
                let (a, b) = (x - 3.0, y - 3.0);
                let r2 = a * a + b * b;
                (a / r2, b / r2)
            }
            ExactSolution::Linear => (1.0, 1.0),
            ExactSolution::Saddle => (2.0 * x, -2.0 * y),
            ExactSolution::ExpSin => (x.exp() * y.sin(), x.exp() * y.cos()),
        }
    }
}

impl fmt::Display for ExactSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactSolution::F1 => "x^4 - 6x^2y^2 + y^4",
            ExactSolution::F2 => "(2-x)/((2-x)^2+y^2)",
            ExactSolution::F3 => "ln|(x,y)-(3,3)|",
            ExactSolution::Linear => "x + y",
            ExactSolution::Saddle => "x^2 - y^2",
            ExactSolution::ExpSin => "exp(x) sin(y)",
        })
    }
}

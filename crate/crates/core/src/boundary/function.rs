use std::collections::HashMap;
use std::f64::consts::E;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::expr::{self, Expr};
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};

/// Signature of closure-backed side data: `(x, y, t) ↦ g`.
pub type SideFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// Data on a single side.
#[derive(Clone)]
pub enum SideMap {
    Const(f64),
    /// Coefficients of a polynomial in the side parameter, lowest degree first.
    Poly(Vec<f64>),
    Expr(Arc<Expr>),
    Func(Arc<SideFn>),
}

impl SideMap {
    pub fn eval(&self, x: f64, y: f64, t: f64) -> f64 {
        match self {
            SideMap::Const(c) => *c,
            SideMap::Poly(c) => c.iter().rev().fold(0.0, |acc, a| acc * t + a),
            SideMap::Expr(e) => e.eval(x, y),
            SideMap::Func(f) => f(x, y, t),
        }
    }

    pub fn func(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        SideMap::Func(Arc::new(move |x, y, _| f(x, y)))
    }
}

impl fmt::Debug for SideMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideMap::Const(c) => write!(f, "Const({c})"),
            SideMap::Poly(c) => write!(f, "Poly({c:?})"),
            SideMap::Expr(e) => write!(f, "Expr({e})"),
            SideMap::Func(_) => f.write_str("Func(..)"),
        }
    }
}

/// Scalar data on the boundary, given side by side; corners may carry two different values.
#[derive(Clone, Debug)]
pub struct BoundaryFunction {
    pub name: String,
    sides: [SideMap; 4],
}

fn slot(side: Side) -> usize {
    match side {
        Side::Right => 0,
        Side::Top => 1,
        Side::Left => 2,
        Side::Bottom => 3,
    }
}

impl BoundaryFunction {
    /// Sides in the order G1, G2, G3, G4.
    pub fn from_sides(name: impl Into<String>, sides: [SideMap; 4]) -> Self {
        Self {
            name: name.into(),
            sides,
        }
    }

    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let f: Arc<SideFn> = Arc::new(move |x, y, _| f(x, y));
        Self::from_sides(name, std::array::from_fn(|_| SideMap::Func(f.clone())))
    }

    pub fn constant(c: f64) -> Self {
        Self::from_sides(format!("{c}"), std::array::from_fn(|_| SideMap::Const(c)))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let e = Arc::new(expr::parse(src)?);
        Ok(Self::from_sides(
            src,
            std::array::from_fn(|_| SideMap::Expr(e.clone())),
        ))
    }

    pub fn side(&self, side: Side) -> &SideMap {
        &self.sides[slot(side)]
    }

    /// Value at parameter `t` of `side` with no range check.
    pub fn value(&self, rect: &Rectangle, side: Side, t: f64) -> f64 {
        let (x, y) = side.point(rect, t);
        self.sides[slot(side)].eval(x, y, t)
    }

    /// `α f + β g`, side by side.
    pub fn linear_combination(alpha: f64, f: &Self, beta: f64, g: &Self) -> Self {
        let sides = std::array::from_fn(|i| {
            let (a, b) = (f.sides[i].clone(), g.sides[i].clone());
            SideMap::Func(Arc::new(move |x, y, t| {
                alpha * a.eval(x, y, t) + beta * b.eval(x, y, t)
            }))
        });
        Self::from_sides(format!("{alpha}*({}) + {beta}*({})", f.name, g.name), sides)
    }

    /// `self + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = Self::linear_combination(1.0, self, 1.0, &Self::constant(c));
        out.name = format!("{}{:+}", self.name, c);
        out
    }

    /// `c · self`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = Self::linear_combination(c, self, 0.0, &Self::zero());
        out.name = format!("{c}*({})", self.name);
        out
    }
}

/// Boundary value at a side parameter, with the range checked.
pub fn eval_boundary(g: &BoundaryFunction, rect: &Rectangle, side: Side, t: f64) -> Result<f64> {
    side.check_parameter(rect, t)?;
    Ok(g.value(rect, side, t))
}

/// `x⁴ - 6x²y² + y⁴`.
pub fn f1(x: f64, y: f64) -> f64 {
    let (x2, y2) = (x * x, y * y);
    x2 * x2 - 6.0 * x2 * y2 + y2 * y2
}

/// `(2 - x) / ((2 - x)² + y²)`.
pub fn f2(x: f64, y: f64) -> f64 {
    let a = 2.0 - x;
    a / (a * a + y * y)
}

/// `ln √((x - 3)² + (y - 3)²)`.
pub fn f3(x: f64, y: f64) -> f64 {
    0.5 * ((x - 3.0).powi(2) + (y - 3.0).powi(2)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    F1,
    F2,
    F3,
    /// Outward flux of `x + y`.
    Bd1,
    /// Outward flux of `x² - y²`.
    Bd2,
    /// Robin data `D_ν u + b u` of `eˣ sin y`.
    Bd3,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::F1,
        Builtin::F2,
        Builtin::F3,
        Builtin::Bd1,
        Builtin::Bd2,
        Builtin::Bd3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::F1 => "f1",
            Builtin::F2 => "f2",
            Builtin::F3 => "f3",
            Builtin::Bd1 => "bd1",
            Builtin::Bd2 => "bd2",
            Builtin::Bd3 => "bd3",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidInput(format!("unknown builtin `{name}`")))
    }

    /// `b` is only read by `bd3`.
    pub fn function(self, rect: &Rectangle, b: f64) -> BoundaryFunction {
        let h = rect.h();
        let name = self.name();
        match self {
            Builtin::F1 => BoundaryFunction::from_fn(name, f1),
            Builtin::F2 => BoundaryFunction::from_fn(name, f2),
            Builtin::F3 => BoundaryFunction::from_fn(name, f3),
            Builtin::Bd1 => BoundaryFunction::from_sides(
                name,
                [
                    SideMap::Const(1.0),
                    SideMap::Const(1.0),
                    SideMap::Const(-1.0),
                    SideMap::Const(-1.0),
                ],
            ),
            Builtin::Bd2 => BoundaryFunction::from_sides(
                name,
                [
                    SideMap::Const(2.0),
                    SideMap::Const(-2.0 * h),
                    SideMap::Const(2.0),
                    SideMap::Const(-2.0 * h),
                ],
            ),
            Builtin::Bd3 => {
                let top = h.cos() + b * h.sin();
                BoundaryFunction::from_sides(
                    name,
                    [
                        SideMap::func(move |_, y| (1.0 + b) * E * y.sin()),
                        SideMap::func(move |x, _| x.exp() * top),
                        SideMap::func(move |_, y| (b - 1.0) * y.sin() / E),
                        SideMap::func(move |x, _| -x.exp() * top),
                    ],
                )
            }
        }
    }
}

/// Data for one side in a boundary specification: a number or an expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SideSpec {
    Const(f64),
    Poly { poly: Vec<f64> },
    Expr(String),
}

/// Serializable description of boundary data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundarySpec {
    Builtin { builtin: String },
    Expr { expr: String },
    Sides { sides: HashMap<String, SideSpec> },
}

impl BoundarySpec {
    /// Parses the command-line forms `builtin:NAME` and `expr:TEXT`, or a JSON object.
    pub fn from_cli(arg: &str) -> Result<Self> {
        if let Some(name) = arg.strip_prefix("builtin:") {
            Ok(BoundarySpec::Builtin {
                builtin: name.to_string(),
            })
        } else if let Some(src) = arg.strip_prefix("expr:") {
            Ok(BoundarySpec::Expr {
                expr: src.to_string(),
            })
        } else if arg.trim_start().starts_with('{') {
            Ok(serde_json::from_str(arg)?)
        } else {
            Err(Error::InvalidInput(format!(
                "boundary data `{arg}` is not builtin:NAME, expr:TEXT, file:PATH or a JSON object"
            )))
        }
    }

    /// Builds the data on `rect`; `b` is the Robin coefficient used by `bd3`.
    pub fn build(&self, rect: &Rectangle, b: f64) -> Result<BoundaryFunction> {
        match self {
            BoundarySpec::Builtin { builtin } => Ok(Builtin::from_name(builtin)?.function(rect, b)),
            BoundarySpec::Expr { expr } => BoundaryFunction::parse(expr),
            BoundarySpec::Sides { sides } => {
                for key in sides.keys() {
                    if Side::from_label(key).is_none() {
                        return Err(Error::InvalidInput(format!(
                            "unknown side `{key}`; expected G1..G4"
                        )));
                    }
                }
                let mut maps = Vec::with_capacity(4);
                let mut names = Vec::with_capacity(4);
                for side in Side::ALL {
                    let spec = sides
                        .iter()
                        .find(|(k, _)| Side::from_label(k) == Some(side))
                        .map(|(_, v)| v);
                    let map = match spec {
                        None => SideMap::Const(0.0),
                        Some(SideSpec::Const(c)) => SideMap::Const(*c),
                        Some(SideSpec::Poly { poly }) => SideMap::Poly(poly.clone()),
                        Some(SideSpec::Expr(src)) => SideMap::Expr(Arc::new(expr::parse(src)?)),
                    };
                    names.push(format!("{side}: {map:?}"));
                    maps.push(map);
                }
                let maps: [SideMap; 4] = maps.try_into().expect("four sides");
                Ok(BoundaryFunction::from_sides(names.join(", "), maps))
            }
        }
    }
}

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Rectangle;

/// Left end of the first bracket of the cot-type equations; the trivial root at ν = 0 is excluded.
const NU_MIN: f64 = 1e-6;
const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Const,
    XY,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

/// Parity class: I even/even, II odd/odd, III even in x and odd in y, IV odd in x and even in y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Cosh,
    Sinh,
    Cos,
    Sin,
}

impl Factor {
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Factor::Cosh | Factor::Sinh)
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::Cosh => "cosh",
            Factor::Sinh => "sinh",
            Factor::Cos => "cos",
            Factor::Sin => "sin",
        }
    }
}

/// Eigenvalue rules: (i) ν tanh ν, (ii) ν tanh νh, (iii) ν coth ν, (iv) ν coth νh.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenRule {
    I,
    II,
    III,
    IV,
}

impl EigenRule {
    pub fn apply(self, nu: f64, h: f64) -> f64 {
        match self {
            EigenRule::I => nu * nu.tanh(),
            EigenRule::II => nu * (nu * h).tanh(),
            EigenRule::III => nu / nu.tanh(),
            EigenRule::IV => nu / (nu * h).tanh(),
        }
    }
}

// tan θ = -(tanh|coth) φ: roots on branches [kπ - π/2, kπ], k ≥ 1.
// cot θ = (tanh|coth) φ: roots on branches [kπ, kπ + π/2], k ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Periodic {
    Tan,
    Cot,
}

impl Family {
    pub const SEPARABLE: [Family; 8] = [
        Family::F1,
        Family::F2,
        Family::F3,
        Family::F4,
        Family::F5,
        Family::F6,
        Family::F7,
        Family::F8,
    ];

    pub fn is_separable(self) -> bool {
        !matches!(self, Family::Const | Family::XY)
    }

    pub fn class(self) -> SymmetryClass {
        match self {
            Family::Const | Family::F1 | Family::F2 => SymmetryClass::I,
            Family::XY | Family::F3 | Family::F4 => SymmetryClass::II,
            Family::F5 | Family::F6 => SymmetryClass::III,
            Family::F7 | Family::F8 => SymmetryClass::IV,
        }
    }

    /// `(x factor, y factor)`; `None` for the two polynomial modes.
    pub fn shape(self) -> Option<(Factor, Factor)> {
        use Factor::*;
        Some(match self {
            Family::Const | Family::XY => return None,
            Family::F1 => (Cosh, Cos),
            Family::F2 => (Cos, Cosh),
            Family::F3 => (Sinh, Sin),
            Family::F4 => (Sin, Sinh),
            Family::F5 => (Cosh, Sin),
            Family::F6 => (Cos, Sinh),
            Family::F7 => (Sinh, Cos),
            Family::F8 => (Sin, Cosh),
        })
    }

    pub fn rule(self) -> Option<EigenRule> {
        Some(match self {
            Family::Const | Family::XY => return None,
            Family::F1 | Family::F5 => EigenRule::I,
            Family::F2 | Family::F8 => EigenRule::II,
            Family::F3 | Family::F7 => EigenRule::III,
            Family::F4 | Family::F6 => EigenRule::IV,
        })
    }

    /// Characteristic equation in its textbook form.
    pub fn equation(self) -> &'static str {
        match self {
            Family::Const => "nu = 0",
            Family::XY => "h = 1",
            Family::F1 => "tan(nu h) = -tanh(nu)",
            Family::F2 => "tan(nu) = -tanh(nu h)",
            Family::F3 => "cot(nu h) = coth(nu)",
            Family::F4 => "cot(nu) = coth(nu h)",
            Family::F5 => "cot(nu h) = tanh(nu)",
            Family::F6 => "tan(nu) = -coth(nu h)",
            Family::F7 => "tan(nu h) = -coth(nu)",
            Family::F8 => "cot(nu) = tanh(nu h)",
        }
    }

    // The periodic factor's argument is ν·theta_scale, the hyperbolic one ν·phi_scale.
    fn scales(self, h: f64) -> (f64, f64) {
        match self {
            Family::F1 | Family::F3 | Family::F5 | Family::F7 => (h, 1.0),
            _ => (1.0, h),
        }
    }

    fn periodic(self) -> Periodic {
        match self {
            Family::F1 | Family::F2 | Family::F6 | Family::F7 => Periodic::Tan,
            _ => Periodic::Cot,
        }
    }

    /// Characteristic equation multiplied through by `cos θ` or `sin θ` and divided by
    /// the hyperbolic cosine, so that it is bounded and smooth in ν.
    pub fn residual(self, nu: f64, rect: &Rectangle) -> f64 {
        let (ts, ps) = self.scales(rect.h());
        let theta = nu * ts;
        let t = (nu * ps).tanh();
        let (s, c) = theta.sin_cos();
        match self {
            Family::F1 | Family::F2 => s + t * c,
            Family::F3 | Family::F4 => t * c - s,
            Family::F5 | Family::F8 => c - t * s,
            Family::F6 | Family::F7 => t * s + c,
            Family::Const | Family::XY => 0.0,
        }
    }

    /// Bound on |d residual / dν|.
    pub fn derivative_scale(self, rect: &Rectangle) -> f64 {
        let (ts, ps) = self.scales(rect.h());
        ts + ps
    }

    fn branch(self, k: usize, h: f64) -> Option<(f64, f64)> {
        let (ts, _) = self.scales(h);
        let kf = k as f64;
        let (lo, hi) = match self.periodic() {
            Periodic::Tan if k == 0 => return None,
            Periodic::Tan => (kf * PI - FRAC_PI_2, kf * PI),
            Periodic::Cot => (kf * PI, kf * PI + FRAC_PI_2),
        };
        let lo = if lo == 0.0 { NU_MIN } else { lo / ts };
        Some((lo, hi / ts))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Const => "Const",
            Family::XY => "XY",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F4 => "F4",
            Family::F5 => "F5",
            Family::F6 => "F6",
            Family::F7 => "F7",
            Family::F8 => "F8",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CONST" => Ok(Family::Const),
            "XY" => Ok(Family::XY),
            "F1" => Ok(Family::F1),
            "F2" => Ok(Family::F2),
            "F3" => Ok(Family::F3),
            "F4" => Ok(Family::F4),
            "F5" => Ok(Family::F5),
            "F6" => Ok(Family::F6),
            "F7" => Ok(Family::F7),
            "F8" => Ok(Family::F8),
            _ => Err(Error::InvalidInput(format!("unknown family `{s}`"))),
        }
    }
}

/// A root together with the branch of the periodic factor it was found on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub nu: f64,
    pub branch: usize,
}

/// The `count` smallest positive roots of the family's characteristic equation.
pub fn find_roots(family: Family, rect: &Rectangle, count: usize, tol: f64) -> Result<Vec<f64>> {
    Ok(find_roots_with_branches(family, rect, count, tol)?
        .into_iter()
        .map(|r| r.nu)
        .collect())
}

pub fn find_roots_with_branches(
    family: Family,
    rect: &Rectangle,
    count: usize,
    tol: f64,
) -> Result<Vec<Root>> {
    if !family.is_separable() {
        return Err(Error::InvalidInput(format!(
            "{family} has no characteristic equation"
        )));
    }
    if !(tol >= 1e-14) {
        return Err(Error::InvalidInput(format!(
            "root tolerance {tol} is below 1e-14"
        )));
    }
    let mut roots = Vec::with_capacity(count);
    let mut k = 0;
    // each branch holds at most one root and at most one branch in a row can be empty
    while roots.len() < count {
        if let Some((lo, hi)) = family.branch(k, rect.h()) {
            if let Some(nu) = bisect(family, rect, k, lo, hi, tol)? {
                roots.push(Root { nu, branch: k });
            }
        }
        k += 1;
    }
    Ok(roots)
}

fn bisect(
    family: Family,
    rect: &Rectangle,
    branch: usize,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Option<f64>> {
    let f = |nu: f64| family.residual(nu, rect);
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Some(a));
    }
    if fb == 0.0 {
        return Ok(Some(b));
    }
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    for _ in 0..MAX_BISECTIONS {
        let m = 0.5 * (a + b);
        if b - a <= tol || m <= a || m >= b {
            let nu = if f(a).abs() <= f(b).abs() { a } else { b };
            let limit = 10.0 * tol * family.derivative_scale(rect) + 8.0 * f64::EPSILON;
            if f(nu).abs() > limit {
                break;
            }
            return Ok(Some(nu));
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(Some(m));
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::RootNotConverged {
        family,
        branch,
        lo,
        hi,
    })
}

/// Steklov eigenvalue belonging to the root `nu` of `family`.
pub fn eigenvalue_of(family: Family, nu: f64, rect: &Rectangle) -> f64 {
    match family {
        Family::Const => 0.0,
        Family::XY => 1.0,
        _ => family.rule().expect("separable").apply(nu, rect.h()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn square() -> Rectangle {
        Rectangle::unit_square()
    }

    // Independent oracle: scan the raw equation on a fine grid and refine sign changes by bisection.
    fn scan_roots(family: Family, h: f64, count: usize) -> Vec<f64> {
        let raw = |v: f64| -> f64 {
            let (th, ph) = match family {
                Family::F1 | Family::F3 | Family::F5 | Family::F7 => (v * h, v),
                _ => (v, v * h),
            };
            let (s, c, sh, ch) = (th.sin(), th.cos(), ph.sinh(), ph.cosh());
            let r = match family {
                Family::F1 | Family::F2 => s * ch + c * sh,
                Family::F3 | Family::F4 => c * sh - s * ch,
                Family::F5 | Family::F8 => c * ch - s * sh,
                _ => s * sh + c * ch,
            };
            r / ch
        };
        let mut out = Vec::new();
        let step = 1e-3;
        let mut v = 1e-6;
        let mut fv = raw(v);
        while out.len() < count {
            let w = v + step;
            let fw = raw(w);
            if fv * fw < 0.0 {
                let (mut a, mut b, fa) = (v, w, fv);
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if raw(m) * fa > 0.0 {
                        a = m
                    } else {
                        b = m
                    }
                }
                out.push(0.5 * (a + b));
            }
            v = w;
            fv = fw;
        }
        out
    }

    #[test]
    fn first_f1_roots_on_the_square() {
        let r = find_roots(Family::F1, &square(), 2, 1e-12).unwrap();
        assert!((r[0] - 2.3650).abs() < 1e-4);
        assert!((r[1] - 5.4978).abs() < 1e-4);
        // tan ν = -tanh ν
        assert!((r[0].tan() + r[0].tanh()).abs() < 1e-10);
        assert!((eigenvalue_of(Family::F1, r[0], &square()) - 2.3236).abs() < 1e-4);
    }

    #[test]
    fn zero_count_is_empty() {
        for f in Family::SEPARABLE {
            assert!(find_roots(f, &square(), 0, 1e-12).unwrap().is_empty());
        }
    }

    #[test]
    fn paired_families_coincide_on_the_square() {
        for (a, b) in [
            (Family::F1, Family::F2),
            (Family::F3, Family::F4),
            (Family::F5, Family::F8),
            (Family::F6, Family::F7),
        ] {
            let ra = find_roots(a, &square(), 6, 1e-14).unwrap();
            let rb = find_roots(b, &square(), 6, 1e-14).unwrap();
            for (x, y) in ra.iter().zip(&rb) {
                assert!((x - y).abs() < 1e-12, "{a} {b}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_scan() {
        for &h in &[1.0, 0.8, 0.5, 0.3] {
            let rect = Rectangle::new(h).unwrap();
            for f in Family::SEPARABLE {
                let ours = find_roots(f, &rect, 12, 1e-13).unwrap();
                let oracle = scan_roots(f, h, 12);
                for (k, (a, b)) in ours.iter().zip(&oracle).enumerate() {
                    assert!((a - b).abs() < 1e-9, "{f} h={h} root {k}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn known_roots_at_half_height() {
        let rect = Rectangle::new(0.5).unwrap();
        let expected = [
            (Family::F1, 4.71255),
            (Family::F2, 2.44289),
            (Family::F3, 1.46386),
            (Family::F4, 3.90689),
            (Family::F5, 1.64523),
            (Family::F6, 2.25132),
            (Family::F7, 4.71223),
            (Family::F8, 1.10518),
        ];
        for (f, nu) in expected {
            let r = find_roots(f, &rect, 1, 1e-12).unwrap()[0];
            assert!((r - nu).abs() < 1e-5, "{f}: {r}");
        }
    }

    #[test]
    fn eigenvalue_rules() {
        let rect = Rectangle::new(0.5).unwrap();
        let nu = 2.44289;
        assert_relative_eq!(eigenvalue_of(Family::F2, nu, &rect), nu * (0.5 * nu).tanh());
        // ν coth ν → 1 as ν → 0, the xy eigenvalue
        assert!((eigenvalue_of(Family::F3, 1e-6, &square()) - 1.0).abs() < 1e-10);
        assert_eq!(eigenvalue_of(Family::XY, 0.0, &square()), 1.0);
        assert_eq!(eigenvalue_of(Family::Const, 0.0, &square()), 0.0);
    }

    #[test]
    fn eigenvalues_increase_within_each_family() {
        for &h in &[1.0, 0.5] {
            let rect = Rectangle::new(h).unwrap();
            for f in Family::SEPARABLE {
                let d: Vec<f64> = find_roots(f, &rect, 30, 1e-12)
                    .unwrap()
                    .into_iter()
                    .map(|nu| eigenvalue_of(f, nu, &rect))
                    .collect();
                assert!(d.windows(2).all(|w| w[1] > w[0]), "{f} h={h}");
            }
        }
    }

    #[test]
    fn class_and_rule_tables() {
        use SymmetryClass::*;
        let classes = [I, I, II, II, III, III, IV, IV];
        let rules = [
            EigenRule::I,
            EigenRule::II,
            EigenRule::III,
            EigenRule::IV,
            EigenRule::I,
            EigenRule::IV,
            EigenRule::III,
            EigenRule::II,
        ];
        for (i, f) in Family::SEPARABLE.iter().enumerate() {
            assert_eq!(f.class(), classes[i]);
            assert_eq!(f.rule(), Some(rules[i]));
            assert_eq!(f.to_string().parse::<Family>().unwrap(), *f);
            let (a, b) = f.shape().unwrap();
            assert!(a.is_hyperbolic() != b.is_hyperbolic());
        }
    }

    #[test]
    fn rejects_tiny_tolerance() {
        assert!(find_roots(Family::F1, &square(), 1, 1e-16).is_err());
    }
}

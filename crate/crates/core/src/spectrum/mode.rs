use super::family::{eigenvalue_of, Factor, Family};
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Side};
use crate::hyperbolic::{
    cos_sq_integral, cosh_scaled, cosh_sq_integral_scaled, sin_sq_integral, sinh_scaled,
    sinh_sq_integral_scaled,
};

/// One boundary-normalized Steklov eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct SteklovMode {
    pub family: Family,
    pub nu: f64,
    pub delta: f64,
    /// `sqrt(|∂Ω| / ∫ s² dσ)`; underflows to zero for very large ν, evaluation uses `scaled_norm`.
    pub norm_const: f64,
    /// Position in the owning spectrum.
    pub index: usize,
    /// Zero-based root number within the family.
    pub root: usize,
    scaled_norm: f64,
    h: f64,
}

impl SteklovMode {
    pub fn constant(rect: &Rectangle) -> Self {
        Self {
            family: Family::Const,
            nu: 0.0,
            delta: 0.0,
            norm_const: 1.0,
            index: 0,
            root: 0,
            scaled_norm: 1.0,
            h: rect.h(),
        }
    }

    /// The `xy` mode; exists only on the square.
    pub fn xy(rect: &Rectangle) -> Result<Self> {
        if !rect.is_square() {
            return Err(Error::InvalidInput(
                "the xy mode is an eigenfunction only when h = 1".into(),
            ));
        }
        let c = boundary_norm_constant(Family::XY, 0.0, rect);
        Ok(Self {
            family: Family::XY,
            nu: 0.0,
            delta: 1.0,
            norm_const: c,
            index: 0,
            root: 0,
            scaled_norm: c,
            h: rect.h(),
        })
    }

    pub fn separable(family: Family, nu: f64, root: usize, rect: &Rectangle) -> Self {
        let scaled_norm = scaled_norm_constant(family, nu, rect);
        let a = hyperbolic_extent(family, rect.h());
        Self {
            family,
            nu,
            delta: eigenvalue_of(family, nu, rect),
            norm_const: scaled_norm * (-nu * a).exp(),
            index: 0,
            root,
            scaled_norm,
            h: rect.h(),
        }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Copy with the normalization multiplied by `factor`; used to build deliberately broken fixtures.
    pub fn rescaled(&self, factor: f64) -> Self {
        let mut m = self.clone();
        m.norm_const *= factor;
        m.scaled_norm *= factor;
        m
    }

    /// Value at `(x, y)` without a domain check.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        match self.family {
            Family::Const => 1.0,
            Family::XY => self.scaled_norm * x * y,
            f => {
                let (fx, fy) = f.shape().expect("separable");
                self.scaled_norm
                    * self.factor(fx, x, 1.0, false)
                    * self.factor(fy, y, self.h, false)
            }
        }
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        match self.family {
            Family::Const => (0.0, 0.0),
            Family::XY => (self.scaled_norm * y, self.scaled_norm * x),
            f => {
                let (fx, fy) = f.shape().expect("separable");
                let (vx, dx) = (
                    self.factor(fx, x, 1.0, false),
                    self.factor(fx, x, 1.0, true),
                );
                let (vy, dy) = (
                    self.factor(fy, y, self.h, false),
                    self.factor(fy, y, self.h, true),
                );
                (self.scaled_norm * dx * vy, self.scaled_norm * vx * dy)
            }
        }
    }

    // One factor (or its derivative), the hyperbolic one rescaled by exp(-ν a).
    fn factor(&self, kind: Factor, t: f64, a: f64, derivative: bool) -> f64 {
        let nu = self.nu;
        match (kind, derivative) {
            (Factor::Cosh, false) => cosh_scaled(nu, t, a),
            (Factor::Cosh, true) => nu * sinh_scaled(nu, t, a),
            (Factor::Sinh, false) => sinh_scaled(nu, t, a),
            (Factor::Sinh, true) => nu * cosh_scaled(nu, t, a),
            (Factor::Cos, false) => (nu * t).cos(),
            (Factor::Cos, true) => -nu * (nu * t).sin(),
            (Factor::Sin, false) => (nu * t).sin(),
            (Factor::Sin, true) => nu * (nu * t).cos(),
        }
    }

    /// Outward normal derivative at parameter `t` of `side`, without corner checks.
    pub fn normal_derivative_unchecked(&self, side: Side, t: f64) -> f64 {
        let rect = Rectangle::new(self.h).expect("valid h");
        let (x, y) = side.point(&rect, t);
        let (gx, gy) = self.gradient(x, y);
        let (nx, ny) = side.outward_normal();
        gx * nx + gy * ny
    }

    /// Upper bound on `|s̃|` over the closed rectangle.
    pub fn sup_bound(&self) -> f64 {
        match self.family {
            Family::Const => 1.0,
            Family::XY => self.scaled_norm * self.h,
            _ => self.scaled_norm,
        }
    }
}

/// Value of a mode at a point of the closed rectangle.
pub fn mode_value(mode: &SteklovMode, x: f64, y: f64) -> Result<f64> {
    Rectangle::new(mode.h)?.check_contains(x, y)?;
    Ok(mode.value(x, y))
}

/// Outward normal derivative at a non-corner boundary point.
pub fn mode_normal_derivative(mode: &SteklovMode, side: Side, t: f64) -> Result<f64> {
    let rect = Rectangle::new(mode.h)?;
    side.check_parameter(&rect, t)?;
    if side.is_endpoint(&rect, t) {
        let (x, y) = side.point(&rect, t);
        return Err(Error::CornerNormal { x, y });
    }
    Ok(mode.normal_derivative_unchecked(side, t))
}

fn hyperbolic_extent(family: Family, h: f64) -> f64 {
    match family.shape() {
        Some((fx, _)) if fx.is_hyperbolic() => 1.0,
        Some(_) => h,
        None => 0.0,
    }
}

// ∫_∂Ω s² dσ · exp(-2 ν a), with a the extent of the hyperbolic variable.
fn scaled_boundary_square_integral(family: Family, nu: f64, rect: &Rectangle) -> f64 {
    let h = rect.h();
    match family {
        Family::Const => rect.perimeter(),
        Family::XY => 4.0 * h * h * h / 3.0 + 4.0 * h * h / 3.0,
        f => {
            let (fx, fy) = f.shape().expect("separable");
            let end_sq = |kind: Factor, a: f64| match kind {
                Factor::Cosh => cosh_scaled(nu, a, a).powi(2),
                Factor::Sinh => sinh_scaled(nu, a, a).powi(2),
                Factor::Cos => (nu * a).cos().powi(2),
                Factor::Sin => (nu * a).sin().powi(2),
            };
            let int_sq = |kind: Factor, a: f64| match kind {
                Factor::Cosh => cosh_sq_integral_scaled(nu, a),
                Factor::Sinh => sinh_sq_integral_scaled(nu, a),
                Factor::Cos => cos_sq_integral(nu, a),
                Factor::Sin => sin_sq_integral(nu, a),
            };
            // sides x = ±1 carry X(±ν)² ∫ Y², sides y = ±h carry Y(±νh)² ∫ X²
            2.0 * end_sq(fx, 1.0) * int_sq(fy, h) + 2.0 * end_sq(fy, h) * int_sq(fx, 1.0)
        }
    }
}

fn scaled_norm_constant(family: Family, nu: f64, rect: &Rectangle) -> f64 {
    let integral = scaled_boundary_square_integral(family, nu, rect);
    assert!(
        integral > 0.0,
        "boundary integral of {family} at nu = {nu} is not positive"
    );
    (rect.perimeter() / integral).sqrt()
}

/// `sqrt(|∂Ω| / ∫_∂Ω s² dσ)` from closed-form antiderivatives.
pub fn boundary_norm_constant(family: Family, nu: f64, rect: &Rectangle) -> f64 {
    scaled_norm_constant(family, nu, rect) * (-nu * hyperbolic_extent(family, rect.h())).exp()
}

/// A mode on the rectangle dilated by `l`.
#[derive(Debug, Clone)]
pub struct ScaledMode {
    pub mode: SteklovMode,
    pub l: f64,
    pub delta: f64,
}

impl ScaledMode {
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.mode.value(x / self.l, y / self.l)
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let (gx, gy) = self.mode.gradient(x / self.l, y / self.l);
        (gx / self.l, gy / self.l)
    }

    /// Outward normal derivative on the dilated side at dilated parameter `t`.
    pub fn normal_derivative(&self, side: Side, t: f64) -> f64 {
        let rect = Rectangle::new(self.mode.h).expect("valid h");
        let (x, y) = side.point(&rect, t / self.l);
        let (gx, gy) = self.gradient(self.l * x, self.l * y);
        let (nx, ny) = side.outward_normal();
        gx * nx + gy * ny
    }
}

/// Dilation `p ↦ L p`: eigenvalue `δ / L`, eigenfunction `p ↦ s(p / L)`.
pub fn scale_mode(mode: &SteklovMode, l: f64) -> Result<ScaledMode> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "dilation factor must be positive, got {l}"
        )));
    }
    Ok(ScaledMode {
        mode: mode.clone(),
        l,
        delta: mode.delta / l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, Tolerance};
    use crate::spectrum::family::find_roots;
    use approx::assert_relative_eq;

    fn first(family: Family, rect: &Rectangle) -> SteklovMode {
        let nu = find_roots(family, rect, 1, 1e-14).unwrap()[0];
        SteklovMode::separable(family, nu, 0, rect)
    }

    fn quad_trace_square(m: &SteklovMode, rect: &Rectangle) -> f64 {
        Side::ALL
            .iter()
            .map(|s| {
                let (lo, hi) = s.interval(rect);
                integrate(
                    |t| {
                        let (x, y) = s.point(rect, t);
                        m.value(x, y).powi(2)
                    },
                    lo,
                    hi,
                    Tolerance::new(1e-14, 1e-13),
                    4000,
                )
                .unwrap()
                .value
            })
            .sum()
    }

    #[test]
    fn constant_and_xy() {
        let r = Rectangle::unit_square();
        let c = SteklovMode::constant(&r);
        assert_eq!(c.value(0.3, -0.2), 1.0);
        assert_eq!(boundary_norm_constant(Family::Const, 0.0, &r), 1.0);
        let xy = SteklovMode::xy(&r).unwrap();
        assert_relative_eq!(xy.norm_const, 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(xy.value(0.5, 0.5), 3f64.sqrt() * 0.25, max_relative = 1e-15);
        assert_relative_eq!(
            mode_normal_derivative(&xy, Side::Right, 0.5).unwrap(),
            3f64.sqrt() * 0.5,
            max_relative = 1e-15
        );
        assert!(SteklovMode::xy(&Rectangle::new(0.5).unwrap()).is_err());
    }

    #[test]
    fn cosh_ratio_of_first_f1_mode() {
        let r = Rectangle::unit_square();
        let m = first(Family::F1, &r);
        assert_relative_eq!(
            m.value(0.0, 0.0) / m.value(1.0, 0.0),
            1.0 / m.nu.cosh(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn closed_form_normalization_matches_quadrature() {
        for &h in &[1.0, 0.8, 0.5] {
            let r = Rectangle::new(h).unwrap();
            for f in Family::SEPARABLE {
                let m = first(f, &r);
                assert_relative_eq!(
                    quad_trace_square(&m, &r),
                    r.perimeter(),
                    max_relative = 1e-10
                );
            }
        }
    }

    #[test]
    fn steklov_condition_holds_on_every_side() {
        for &h in &[1.0, 0.7] {
            let r = Rectangle::new(h).unwrap();
            for f in Family::SEPARABLE {
                for (k, nu) in find_roots(f, &r, 5, 1e-14).unwrap().into_iter().enumerate() {
                    let m = SteklovMode::separable(f, nu, k, &r);
                    for side in Side::ALL {
                        let a = side.half_length(&r);
                        for i in 1..20 {
                            let t = -a + 2.0 * a * i as f64 / 20.0;
                            let dn = mode_normal_derivative(&m, side, t).unwrap();
                            let v = m.value(side.point(&r, t).0, side.point(&r, t).1);
                            assert!(
                                (dn - m.delta * v).abs() <= 1e-9 * (1.0 + m.delta) * m.sup_bound(),
                                "{f} root {k} side {side}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn large_frequency_is_finite_and_normalized() {
        let r = Rectangle::new(0.5).unwrap();
        let roots = find_roots(Family::F2, &r, 400, 1e-12).unwrap();
        let m = SteklovMode::separable(Family::F2, roots[399], 399, &r);
        assert!(m.nu > 1000.0);
        assert!(m.value(0.3, 0.5).is_finite());
        assert_relative_eq!(
            quad_trace_square(&m, &r),
            r.perimeter(),
            max_relative = 1e-8
        );
    }

    #[test]
    fn corner_normal_is_rejected() {
        let r = Rectangle::unit_square();
        let m = first(Family::F1, &r);
        assert!(matches!(
            mode_normal_derivative(&m, Side::Top, 1.0),
            Err(Error::CornerNormal { .. })
        ));
        assert!(mode_value(&m, 1.1, 0.0).is_err());
    }

    #[test]
    fn dilation() {
        let r = Rectangle::unit_square();
        let m = first(Family::F1, &r);
        let id = scale_mode(&m, 1.0).unwrap();
        assert_eq!(id.delta, m.delta);
        assert_eq!(id.value(0.2, 0.3), m.value(0.2, 0.3));
        let s = scale_mode(&m, 2.0).unwrap();
        assert_relative_eq!(s.delta, m.delta / 2.0, max_relative = 1e-15);
        for t in [-1.5, -0.2, 0.9] {
            let (x, y) = Side::Top.point(&r, t / 2.0);
            let v = s.value(2.0 * x, 2.0 * y);
            assert!(
                (s.normal_derivative(Side::Top, t) - s.delta * v).abs() < 1e-12 * m.sup_bound()
            );
        }
        assert_eq!(
            scale_mode(&SteklovMode::constant(&r), 3.0).unwrap().delta,
            0.0
        );
        assert!(scale_mode(&m, 0.0).is_err());
    }
}

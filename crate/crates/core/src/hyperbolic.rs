//! Exponentially rescaled hyperbolic functions.
//!
//! A separable mode has exactly one hyperbolic factor, `cosh(νt)` or
//! `sinh(νt)` with `|t| ≤ a`. Everything here is multiplied by `exp(-ν a)`
//! so values stay in `[-1, 1]` for any ν that keeps `exp(-ν a)` representable.

/// Below this argument the direct formulas cannot overflow.
const DIRECT_LIMIT: f64 = 40.0;

/// `cosh(ν t) · exp(-ν a)`.
pub fn cosh_scaled(nu: f64, t: f64, a: f64) -> f64 {
    if nu * a <= DIRECT_LIMIT {
        (nu * t).cosh() * (-nu * a).exp()
    } else {
        0.5 * ((nu * (t - a)).exp() + (-nu * (t + a)).exp())
    }
}

/// `sinh(ν t) · exp(-ν a)`.
pub fn sinh_scaled(nu: f64, t: f64, a: f64) -> f64 {
    if nu * a <= DIRECT_LIMIT {
        (nu * t).sinh() * (-nu * a).exp()
    } else {
        0.5 * ((nu * (t - a)).exp() - (-nu * (t + a)).exp())
    }
}

/// `sinh(z) - z` without cancellation for small `z`.
pub fn sinh_minus_id(z: f64) -> f64 {
    if z.abs() < 0.5 {
        series_odd(z, 1.0)
    } else {
        z.sinh() - z
    }
}

/// `z - sin(z)` without cancellation for small `z`.
pub fn id_minus_sin(z: f64) -> f64 {
    if z.abs() < 0.5 {
        series_odd(z, -1.0)
    } else {
        z - z.sin()
    }
}

// Σ_{k≥1} s^{k+1} z^{2k+1}/(2k+1)!, i.e. the tail of sinh (s = 1) or of -sin (s = -1) past z.
fn series_odd(z: f64, sign: f64) -> f64 {
    let z2 = z * z;
    let mut term = z * z2 / 6.0;
    let mut sum = term;
    let mut k = 2.0_f64;
    loop {
        term *= sign * z2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

/// `∫_{-a}^{a} cosh²(ν t) dt · exp(-2 ν a)`.
pub fn cosh_sq_integral_scaled(nu: f64, a: f64) -> f64 {
    let z = 2.0 * nu * a;
    if z <= DIRECT_LIMIT {
        (z.sinh() / (2.0 * nu) + a) * (-z).exp()
    } else {
        -(-2.0 * z).exp_m1() / (4.0 * nu) + a * (-z).exp()
    }
}

/// `∫_{-a}^{a} sinh²(ν t) dt · exp(-2 ν a)`.
pub fn sinh_sq_integral_scaled(nu: f64, a: f64) -> f64 {
    let z = 2.0 * nu * a;
    if z <= DIRECT_LIMIT {
        sinh_minus_id(z) / (2.0 * nu) * (-z).exp()
    } else {
        (-(-2.0 * z).exp_m1() / 2.0 - z * (-z).exp()) / (2.0 * nu)
    }
}

/// `∫_{-a}^{a} cos²(ν t) dt`.
pub fn cos_sq_integral(nu: f64, a: f64) -> f64 {
    let z = 2.0 * nu * a;
    a + z.sin() / (2.0 * nu)
}

/// `∫_{-a}^{a} sin²(ν t) dt`.
pub fn sin_sq_integral(nu: f64, a: f64) -> f64 {
    id_minus_sin(2.0 * nu * a) / (2.0 * nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn scaled_matches_direct_in_overlap() {
        for &nu in &[0.3_f64, 5.0, 39.0] {
            for &t in &[-1.0_f64, -0.3, 0.0, 0.7, 1.0] {
                let direct_c = (nu * t).cosh() * (-nu).exp();
                let direct_s = (nu * t).sinh() * (-nu).exp();
                let exp_c = 0.5 * ((nu * (t - 1.0)).exp() + (-nu * (t + 1.0)).exp());
                let exp_s = 0.5 * ((nu * (t - 1.0)).exp() - (-nu * (t + 1.0)).exp());
                assert_relative_eq!(cosh_scaled(nu, t, 1.0), direct_c, max_relative = 1e-14);
                assert_relative_eq!(exp_c, direct_c, max_relative = 1e-13);
                assert!((exp_s - direct_s).abs() < 1e-15);
                assert!((sinh_scaled(nu, t, 1.0) - direct_s).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        let v = cosh_scaled(650.0, 1.0, 1.0);
        assert_relative_eq!(v, 0.5, max_relative = 1e-14);
        assert!(sinh_scaled(650.0, 0.3, 1.0).is_finite());
        assert_relative_eq!(
            cosh_sq_integral_scaled(650.0, 1.0),
            1.0 / 2600.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn small_argument_series() {
        let z = 1e-3;
        assert_relative_eq!(
            sinh_minus_id(z),
            z.powi(3) / 6.0 + z.powi(5) / 120.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            id_minus_sin(z),
            z.powi(3) / 6.0 - z.powi(5) / 120.0,
            max_relative = 1e-14
        );
        // continuity across the switch
        assert_relative_eq!(
            sinh_minus_id(0.4999999),
            sinh_minus_id(0.5),
            max_relative = 1e-6
        );
        assert_relative_eq!(
            id_minus_sin(0.4999999),
            id_minus_sin(0.5),
            max_relative = 1e-6
        );
    }

    #[test]
    fn square_integrals_against_midpoint_rule() {
        let n = 200_000;
        for &(nu, a) in &[(0.7, 0.5), (2.3, 1.0), (8.0, 0.8)] {
            let dt = 2.0 * a / n as f64;
            let (mut c2, mut s2, mut co2, mut si2) = (0.0, 0.0, 0.0, 0.0);
            for i in 0..n {
                let t = -a + (i as f64 + 0.5) * dt;
                c2 += cosh_scaled(nu, t, a).powi(2) * dt;
                s2 += sinh_scaled(nu, t, a).powi(2) * dt;
                co2 += (nu * t).cos().powi(2) * dt;
                si2 += (nu * t).sin().powi(2) * dt;
            }
            assert_relative_eq!(cosh_sq_integral_scaled(nu, a), c2, max_relative = 1e-8);
            assert_relative_eq!(sinh_sq_integral_scaled(nu, a), s2, max_relative = 1e-8);
            assert_relative_eq!(cos_sq_integral(nu, a), co2, max_relative = 1e-8);
            assert_relative_eq!(sin_sq_integral(nu, a), si2, max_relative = 1e-8);
        }
    }
}

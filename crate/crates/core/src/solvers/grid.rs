use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::Rectangle;

/// Equispaced samples over the closed rectangle, stored row-major with x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

impl Grid {
    pub fn sample<F>(rect: &Rectangle, nx: usize, ny: usize, f: F) -> Result<Grid>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidInput(format!(
                "grid must be at least 2 x 2, got {nx} x {ny}"
            )));
        }
        let xs = linspace(-1.0, 1.0, nx);
        let ys = linspace(-rect.h(), rect.h(), ny);
        let values = sample_values(&xs, &ys, &f);
        Ok(Grid {
            nx,
            ny,
            xs,
            ys,
            values,
        })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.xs[k % self.nx], self.ys[k / self.nx], *v))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// CSV with header `x,y,u`, or `x,y,u,exact,error` when an exact solution is supplied.
    pub fn to_csv(&self, exact: Option<&dyn Fn(f64, f64) -> f64>, digits: usize) -> String {
        let mut out = String::new();
        match exact {
            None => {
                out.push_str("x,y,u\n");
                for (x, y, u) in self.points() {
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        format_g(x, digits),
                        format_g(y, digits),
                        format_g(u, digits)
                    );
                }
            }
            Some(e) => {
                out.push_str("x,y,u,exact,error\n");
                for (x, y, u) in self.points() {
                    let v = e(x, y);
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        format_g(x, digits),
                        format_g(y, digits),
                        format_g(u, digits),
                        format_g(v, digits),
                        format_g(v - u, digits)
                    );
                }
            }
        }
        out
    }
}

fn sample_values<F: Fn(f64, f64) -> f64 + Sync>(xs: &[f64], ys: &[f64], f: &F) -> Vec<f64> {
    let nx = xs.len();
    crate::par::map(xs.len() * ys.len(), |k| f(xs[k % nx], ys[k / nx]))
}

/// C-style `%.{digits}g`.
pub fn format_g(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_is_the_corners() {
        let r = Rectangle::new(0.5).unwrap();
        let g = Grid::sample(&r, 2, 2, |x, y| 10.0 * x + y).unwrap();
        assert_eq!(g.values, vec![-10.5, 9.5, -9.5, 10.5]);
        assert!(Grid::sample(&r, 1, 5, |_, _| 0.0).is_err());
    }

    #[test]
    fn row_major_x_fastest() {
        let r = Rectangle::unit_square();
        let g = Grid::sample(&r, 3, 2, |x, y| x + 100.0 * y).unwrap();
        let csv = g.to_csv(None, 6);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,u");
        assert_eq!(lines[1], "-1,-1,-101");
        assert_eq!(lines[2], "0,-1,-100");
        assert_eq!(lines[4], "-1,1,99");
        let with = g.to_csv(Some(&|x, y| x + 100.0 * y + 1.0), 6);
        assert!(with.lines().nth(1).unwrap().ends_with(",1"));
    }

    #[test]
    fn g_format() {
        assert_eq!(format_g(0.1, 6), "0.1");
        assert_eq!(format_g(123456.7, 6), "123457");
        assert_eq!(format_g(1234567.0, 6), "1.23457e+06");
        assert_eq!(format_g(-2.5e-7, 6), "-2.5e-07");
        assert_eq!(format_g(0.000123456789, 6), "0.000123457");
        assert_eq!(format_g(1.0 / 3.0, 17), "0.33333333333333331");
        assert_eq!(format_g(100.0, 6), "100");
        assert_eq!(format!("{}", format_g(9.999999, 6)), "10");
    }
}

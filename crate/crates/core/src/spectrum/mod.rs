//! Steklov eigenpairs of the rectangle `(-1, 1) × (-h, h)`.

mod cache;
mod family;
mod mode;

use std::fmt;
use std::str::FromStr;

pub use cache::{load_cache, read_cache, save_cache, write_cache};
pub use family::{
    eigenvalue_of, find_roots, find_roots_with_branches, EigenRule, Factor, Family, Root,
    SymmetryClass,
};
pub use mode::{
    boundary_norm_constant, mode_normal_derivative, mode_value, scale_mode, ScaledMode, SteklovMode,
};

use crate::error::{Error, Result};
pub use crate::geometry::Rectangle;

/// Root tolerance used when building spectra.
pub const ROOT_TOL: f64 = 1e-14;

/// Margin by which the last selected eigenvalue must undercut every uncomputed root.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionPolicy {
    /// The first `M` roots of every family; on the square `xy` takes the first F3 slot.
    PerFamily(usize),
    /// The `n` nonconstant modes of smallest eigenvalue across all families.
    Global(usize),
}

impl SelectionPolicy {
    /// Number of nonconstant modes the policy retains.
    pub fn nonconstant_count(&self) -> usize {
        match *self {
            SelectionPolicy::PerFamily(m) => 8 * m,
            SelectionPolicy::Global(n) => n,
        }
    }
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionPolicy::PerFamily(m) => write!(f, "per-family:{m}"),
            SelectionPolicy::Global(n) => write!(f, "global:{n}"),
        }
    }
}

impl FromStr for SelectionPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidInput(format!(
                "selection policy `{s}` is not per-family:M or global:N"
            ))
        };
        let (kind, count) = s.split_once(':').ok_or_else(bad)?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "per-family" => Ok(SelectionPolicy::PerFamily(count)),
            "global" => Ok(SelectionPolicy::Global(count)),
            _ => Err(bad()),
        }
    }
}

/// An immutable, δ-ordered list of modes starting with the constant.
#[derive(Debug, Clone)]
pub struct Spectrum {
    rect: Rectangle,
    modes: Vec<SteklovMode>,
    selection: SelectionPolicy,
}

impl Spectrum {
    /// Wraps modes as given after ordering them; no checks beyond that. Intended for fixtures and cache loading.
    pub fn from_modes(
        rect: Rectangle,
        mut modes: Vec<SteklovMode>,
        selection: SelectionPolicy,
    ) -> Self {
        sort_modes(&mut modes);
        for (i, m) in modes.iter_mut().enumerate() {
            m.index = i;
        }
        Self {
            rect,
            modes,
            selection,
        }
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn h(&self) -> f64 {
        self.rect.h()
    }

    pub fn modes(&self) -> &[SteklovMode] {
        &self.modes
    }

    pub fn selection(&self) -> SelectionPolicy {
        self.selection
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn nonconstant(&self) -> &[SteklovMode] {
        &self.modes[1..]
    }

    pub fn deltas(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.delta).collect()
    }

    /// Constant plus the first `n` nonconstant modes in eigenvalue order.
    pub fn truncated(&self, n: usize) -> Result<Spectrum> {
        if n + 1 > self.modes.len() {
            return Err(Error::InsufficientSpectrum {
                have: self.modes.len() - 1,
                need: n,
            });
        }
        Ok(Spectrum {
            rect: self.rect,
            modes: self.modes[..=n].to_vec(),
            selection: SelectionPolicy::Global(n),
        })
    }
}

fn sort_modes(modes: &mut [SteklovMode]) {
    // near-degenerate eigenvalues keep their computed order: the tiny gaps between tanh- and
    // coth-type families are real, not noise; exact ties go by family tag
    modes.sort_by(|a, b| {
        a.delta
            .total_cmp(&b.delta)
            .then(a.family.cmp(&b.family))
            .then(a.nu.total_cmp(&b.nu))
    });
}

fn family_modes(family: Family, rect: &Rectangle, count: usize) -> Result<Vec<SteklovMode>> {
    Ok(find_roots_with_branches(family, rect, count, ROOT_TOL)?
        .into_iter()
        .enumerate()
        .map(|(k, r)| SteklovMode::separable(family, r.nu, k, rect))
        .collect())
}

fn all_family_modes(rect: &Rectangle, counts: [usize; 8]) -> Result<Vec<Vec<SteklovMode>>> {
    crate::par::try_map(8, |i| family_modes(Family::SEPARABLE[i], rect, counts[i]))
}

/// Builds the constant mode plus the modes chosen by `selection`.
pub fn build_spectrum(rect: &Rectangle, selection: SelectionPolicy) -> Result<Spectrum> {
    let mut modes = vec![SteklovMode::constant(rect)];
    match selection {
        SelectionPolicy::PerFamily(m) => {
            let mut counts = [m; 8];
            let xy = rect.is_square() && m > 0;
            if xy {
                counts[2] = m - 1;
                modes.push(SteklovMode::xy(rect)?);
            }
            for fam in all_family_modes(rect, counts)? {
                modes.extend(fam);
            }
        }
        SelectionPolicy::Global(n) => {
            let mut candidates = Vec::new();
            if rect.is_square() {
                candidates.push(SteklovMode::xy(rect)?);
            }
            let mut per = n / 8 + 2;
            loop {
                let fams = all_family_modes(rect, [per; 8])?;
                // every unseen root has δ at least the largest computed δ of its family
                let horizon = fams
                    .iter()
                    .map(|f| f.last().map_or(f64::INFINITY, |m| m.delta))
                    .fold(f64::INFINITY, f64::min);
                let mut pool = candidates.clone();
                pool.extend(fams.into_iter().flatten());
                sort_modes(&mut pool);
                if n == 0 || (pool.len() >= n && pool[n - 1].delta + DEGENERACY_TOL < horizon) {
                    pool.truncate(n);
                    modes.extend(pool);
                    break;
                }
                per *= 2;
            }
        }
    }
    Ok(Spectrum::from_modes(*rect, modes, selection))
}

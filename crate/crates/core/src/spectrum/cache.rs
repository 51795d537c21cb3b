//! JSON cache of a built spectrum.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::family::Family;
use super::mode::SteklovMode;
use super::{Rectangle, SelectionPolicy, Spectrum, ROOT_TOL};
use crate::error::{Error, Result};

/// Roots read back from a cache must satisfy their equation this closely (times the derivative scale).
const CACHE_ROOT_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct CacheOut {
    h: Box<RawValue>,
    selection: String,
    modes: Vec<ModeOut>,
}

#[derive(Serialize)]
struct ModeOut {
    family: String,
    nu: Box<RawValue>,
    delta: Box<RawValue>,
    #[serde(rename = "normConst")]
    norm_const: Box<RawValue>,
}

#[derive(Deserialize)]
struct CacheIn {
    h: f64,
    selection: String,
    modes: Vec<ModeIn>,
}

#[derive(Deserialize)]
struct ModeIn {
    family: String,
    nu: f64,
    delta: f64,
    #[serde(rename = "normConst")]
    norm_const: f64,
}

fn digits17(v: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{v:.16e}")).expect("finite float is valid JSON")
}

pub fn write_cache(spec: &Spectrum) -> Result<String> {
    let out = CacheOut {
        h: digits17(spec.h()),
        selection: spec.selection().to_string(),
        modes: spec
            .modes()
            .iter()
            .map(|m| ModeOut {
                family: m.family.to_string(),
                nu: digits17(m.nu),
                delta: digits17(m.delta),
                norm_const: digits17(m.norm_const),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&out)?)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) || (a - b).abs() < f64::MIN_POSITIVE
}

/// Parses a cache and rebuilds every mode, rejecting roots, eigenvalues or normalizations that do not check out.
pub fn read_cache(text: &str) -> Result<Spectrum> {
    let raw: CacheIn = serde_json::from_str(text)?;
    let rect = Rectangle::new(raw.h)?;
    let selection: SelectionPolicy = raw.selection.parse()?;
    if raw.modes.first().map(|m| m.family.as_str()) != Some("Const") {
        return Err(Error::Cache("first mode must be Const".into()));
    }
    let mut modes = Vec::with_capacity(raw.modes.len());
    let mut roots = [0usize; 8];
    for (i, m) in raw.modes.iter().enumerate() {
        let family: Family = m.family.parse()?;
        let mode = match family {
            Family::Const if i == 0 => SteklovMode::constant(&rect),
            Family::Const => return Err(Error::Cache(format!("mode {i}: repeated constant mode"))),
            Family::XY => {
                SteklovMode::xy(&rect).map_err(|e| Error::Cache(format!("mode {i}: {e}")))?
            }
            f => {
                let res = f.residual(m.nu, &rect).abs();
                let limit = 10.0 * CACHE_ROOT_TOL.max(ROOT_TOL) * f.derivative_scale(&rect)
                    + 8.0 * f64::EPSILON;
                if !(m.nu > 0.0) || res > limit {
                    return Err(Error::Cache(format!(
                        "mode {i}: nu = {} is not a root of {} (residual {res:e})",
                        m.nu,
                        f.equation()
                    )));
                }
                let slot = Family::SEPARABLE
                    .iter()
                    .position(|g| *g == f)
                    .expect("separable");
                let mode = SteklovMode::separable(f, m.nu, roots[slot], &rect);
                roots[slot] += 1;
                mode
            }
        };
        if !close(mode.delta, m.delta, 1e-13) {
            return Err(Error::Cache(format!(
                "mode {i}: delta {} disagrees with {}",
                m.delta, mode.delta
            )));
        }
        if !close(mode.norm_const, m.norm_const, 1e-10) {
            return Err(Error::Cache(format!(
                "mode {i}: normConst {} disagrees with {}",
                m.norm_const, mode.norm_const
            )));
        }
        modes.push(mode);
    }
    Ok(Spectrum::from_modes(rect, modes, selection))
}

pub fn save_cache(spec: &Spectrum, path: &Path) -> Result<()> {
    fs::write(path, write_cache(spec)?)?;
    Ok(())
}

pub fn load_cache(path: &Path) -> Result<Spectrum> {
    read_cache(&fs::read_to_string(path)?)
}

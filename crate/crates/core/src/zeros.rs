//! Zeta-zero ordinate tables.
//!
//! Format: plain text, one positive ordinate per line in ascending order;
//! blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

const DUPLICATE_GAP: f64 = 1e-9;

/// Ordinates `γ_j > 0` of zeros `1/2 + iγ_j`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    ordinates: Vec<f64>,
    source: String,
    max_height: f64,
}

/// A nontrivial zero `β + iγ`; `γ` carries its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rho {
    pub beta: f64,
    pub gamma_ord: f64,
}

impl Rho {
    pub fn on_line(gamma_ord: f64) -> Self {
        Self {
            beta: 0.5,
            gamma_ord,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.beta, self.gamma_ord)
    }
}

impl ZeroSet {
    /// Builds a set from in-memory ordinates, applying the file checks.
    pub fn from_ordinates(ordinates: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        for (i, &g) in ordinates.iter().enumerate() {
            validate_entry(g, ordinates.get(i.wrapping_sub(1)).copied(), i + 1)?;
        }
        if let Some(&first) = ordinates.first() {
            check_first(first)?;
        }
        let max_height = ordinates.last().copied().unwrap_or(0.0);
        Ok(Self {
            ordinates,
            source: source.into(),
            max_height,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn max_height(&self) -> f64 {
        self.max_height
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Positive ordinates `≤ t`, after the height guard.
    pub fn ordinates_up_to(&self, t: f64) -> Result<&[f64]> {
        if t > self.max_height {
            return Err(Error::InsufficientData {
                requested: t,
                max_height: self.max_height,
            });
        }
        let end = self.ordinates.partition_point(|&g| g <= t);
        Ok(&self.ordinates[..end])
    }
}

fn validate_entry(g: f64, prev: Option<f64>, line: usize) -> Result<()> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::Format {
            line,
            message: format!("ordinate {g} is not a positive number"),
        });
    }
    if let Some(p) = prev {
        if g <= p {
            return Err(Error::Format {
                line,
                message: format!("ordinate {g} does not exceed the previous entry {p}"),
            });
        }
        if g - p < DUPLICATE_GAP {
            return Err(Error::Format {
                line,
                message: format!("ordinate {g} duplicates {p}"),
            });
        }
    }
    Ok(())
}

fn check_first(first: f64) -> Result<()> {
    if !(first > 14.0 && first < 14.2) {
        return Err(Error::Sanity(format!(
            "first ordinate {first} is not the first zeta zero (expected about 14.1347)"
        )));
    }
    Ok(())
}

/// Parses a zero table from text. `source` names it in the resulting set.
pub fn parse_zeros(text: &str, source: impl Into<String>) -> Result<ZeroSet> {
    let mut ordinates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g: f64 = line.parse().map_err(|e| Error::Format {
            line: idx + 1,
            message: format!("cannot parse {line:?}: {e}"),
        })?;
        validate_entry(g, ordinates.last().copied(), idx + 1)?;
        ordinates.push(g);
    }
    if let Some(&first) = ordinates.first() {
        check_first(first)?;
    }
    let max_height = ordinates.last().copied().unwrap_or(0.0);
    Ok(ZeroSet {
        ordinates,
        source: source.into(),
        max_height,
    })
}

/// Reads and validates a zero table file.
pub fn load_zeros(path: impl AsRef<Path>) -> Result<ZeroSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_zeros(&text, path.display().to_string())
}

/// Zeros `1/2 ± iγ` with `γ ≤ t`, each ordinate followed by its conjugate,
/// in ascending `|γ|`.
pub fn zeros_up_to(zs: &ZeroSet, t: f64) -> Result<Vec<Rho>> {
    let gs = zs.ordinates_up_to(t)?;
    Ok(gs
        .iter()
        .flat_map(|&g| [Rho::on_line(g), Rho::on_line(-g)])
        .collect())
}

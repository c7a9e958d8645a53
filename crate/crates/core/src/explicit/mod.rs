//! The explicit formula for `G_k(N)`.
//!
//! `G_k(N)` equals thirteen terms: main terms, the zero sums
//! `Σ_ρ Γ(ρ)Z_N(ρ+k)N^ρ` and `Σ_ρ Γ(ρ)T_N(ρ+k)N^ρ`, values of `Z_N` and
//! `T_N` at `k` and `k+1`, and three residue series over the trivial zeros
//!
//! * `Σ_Γ(N,k) = -Σ_ν Res_{w=-ν} ζ'/ζ(w)Γ(w) N^w/Γ(w+k+1)`,
//! * `Σ_Z(N,k) = -Σ_ν Res_{w=-ν} ζ'/ζ(w)Γ(w) Z_N(w+k)N^w`,
//! * `Σ_T(N,k) = -Σ_ν Res_{w=-ν} ζ'/ζ(w)Γ(w) T_N(w+k)N^w`.
//!
//! Residues are taken by contour integration ([`residue_numeric`]); the
//! Laurent-coefficient closed forms are kept as a cross-check.

mod laurent;
mod residue;
mod theorem;
mod zero_sums;

use num_complex::Complex64;

use crate::continuation::QuadratureConfig;
use crate::error::{invalid, Error, Result};

pub use laurent::{laurent_data, LaurentData, Parity};
pub use residue::{
    residue_numeric, sigma_cross_check, sigma_sums, SigmaCrossCheck, SigmaKind, SigmaSums,
    SigmaTerm, TailFit,
};
pub use theorem::{
    constant_c, theorem_eval, truncated_15, truncated_c, FormulaBreakdown, TruncatedFormula,
};
pub use zero_sums::{a_k_sum, b_k_double_sum, b_k_sum, TruncatedSum};

/// Where the zero sums and residue series are cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Zeros with `|γ| ≤ T` are summed.
    pub zero_height_t: f64,
    /// Residues at `w = -1, …, -M` are summed.
    pub residue_cutoff_m: u32,
    /// Radius of the circles around the poles `w = -ν`.
    pub delta_exclusion: f64,
    pub quad: QuadratureConfig,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            zero_height_t: 1000.0,
            residue_cutoff_m: 8,
            delta_exclusion: 0.25,
            quad: QuadratureConfig::default(),
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.zero_height_t > 0.0) {
            return Err(invalid(format!(
                "T must be positive, got {}",
                self.zero_height_t
            )));
        }
        if self.residue_cutoff_m < 2 {
            return Err(invalid(format!(
                "M must be at least 2, got {}",
                self.residue_cutoff_m
            )));
        }
        if !(self.delta_exclusion > 0.0 && self.delta_exclusion < 1.0) {
            return Err(invalid(format!(
                "delta_exclusion must lie in (0, 1), got {}",
                self.delta_exclusion
            )));
        }
        self.quad.validate()
    }
}

pub(crate) fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(invalid(format!("k must be positive, got {k}")));
    }
    Ok(())
}

/// Real part of a value that should be real, guarding the imaginary part.
pub(crate) fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Sanity(format!("{what} is not finite: {z}")));
    }
    if z.im.abs() > 1e-9 * z.re.abs() + 1e-14 {
        return Err(Error::Sanity(format!("{what} is not real: {z}")));
    }
    Ok(z.re)
}

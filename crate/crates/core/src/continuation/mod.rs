//! The entire functions `T_N(w)` and `Z_N(w)`.
//!
//! For `Re w > 0`,
//!
//! * `T_N(w) = -(1/2πi) ∫_{(-1/2)} ζ'/ζ(s) Γ(s)/Γ(s+w+1) N^s ds`,
//! * `Z_N(w) = Σ_ρ Γ(ρ)/Γ(ρ+w+1) N^ρ`.
//!
//! Both continue to all of `ℂ`. [`t_closed`] evaluates the closed
//! expression for `T_N` valid everywhere, [`z_continued`] the
//! continuation of `Z_N` through
//! `Σ_{n<N} Λ(n)(1-n/N)^w/Γ(w+1) = N/Γ(w+2) - Z_N(w) - ζ'/ζ(0)/Γ(w+1) + T_N(w)`.
//! The line integral and the zero sum serve as independent checks.

mod oracle;
mod tn;
mod zn;

use crate::error::{invalid, Result};
use crate::quad::{CircleOptions, QuadOptions};

pub use oracle::t_contour_oracle;
pub use tn::{
    h_coefficients, i_series, prime_sum_with_cutoff, t_closed, t_scaled, TNTermBreakdown,
};
pub use zn::{cauchy_derivative, z_continued, z_scaled, z_zero_sum, ZeroSum};

pub(crate) use zn::{check_lambda, window_tail, z_from_t, z_scaled_from_t};

/// Tolerances and contour geometry for every numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Height `H` of the vertical segment in line integrals.
    pub contour_height: f64,
    pub max_subdivisions: usize,
    /// Absolute cutoff for truncated power series.
    pub series_tail_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            contour_height: 100.0,
            max_subdivisions: 2000,
            series_tail_tol: 1e-14,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(v > 0.0 && v <= 1e-3) {
                return Err(invalid(format!("{name} must lie in (0, 1e-3], got {v}")));
            }
        }
        if !(self.contour_height >= 50.0) {
            return Err(invalid(format!(
                "contour_height must be at least 50, got {}",
                self.contour_height
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(invalid("max_subdivisions must be positive"));
        }
        if !(self.series_tail_tol > 0.0) {
            return Err(invalid("series_tail_tol must be positive"));
        }
        Ok(())
    }

    pub fn quad_options(&self) -> QuadOptions {
        QuadOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    pub fn circle_options(&self) -> CircleOptions {
        CircleOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            ..CircleOptions::default()
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(invalid(format!("N must be at least 4, got {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            abs_tol: 0.1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            contour_height: 10.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}

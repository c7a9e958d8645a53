//! Laurent data of `-ζ'/ζ` and `Γ` at the trivial zeros `w = -ν`.

use num_complex::Complex64;

use crate::continuation::QuadratureConfig;
use crate::error::{invalid, Result};
use crate::quad::circle_coefficients;
use crate::special::{
    c, digamma_unchecked, zeta_logderiv, zeta_logderiv_at_integer, zeta_logderiv_unchecked,
    EULER_GAMMA, LOG_TWO_PI,
};
use crate::sum::pairwise_sum_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(nu: u32) -> Self {
        if nu % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// Expansions at `w = -ν`:
/// `-ζ'/ζ(w) = r/(w+ν) + a_ν + …` and `Γ(w) = 1/(ν!(w+ν)) + b_ν/ν! + …`
/// for even `ν`; for odd `ν` only the value `-ζ'/ζ(-ν)` is needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentData {
    pub nu: u32,
    pub parity: Parity,
    /// Constant coefficient of `-ζ'/ζ` at `-ν`, by contour (even `ν`).
    pub a_nu: Option<f64>,
    /// The same constant from `ψ(ν+1) - log 2π + ζ'/ζ(ν+1)` (even `ν`).
    pub a_nu_closed: Option<f64>,
    /// `-(1/2πi)∮_{|w+ν|=1} (ζ'/ζ(w) + 1/(w+ν)) dw`, evaluated as written
    /// (even `ν`). It is not the constant coefficient.
    pub a_nu_as_displayed: Option<f64>,
    /// `-ζ'/ζ(-ν)` (odd `ν`).
    pub zeta_logderiv_value: Option<f64>,
    /// `b_ν = ψ(ν+1)` (even `ν`).
    pub b_nu: Option<f64>,
    /// `b_ν` from `-γ + 2/ν + Σ_{n≠ν}(1/n - 1/(n-ν))` (even `ν`).
    pub b_nu_series: Option<f64>,
    /// Coefficient `r` of `1/(w+ν)` in `-ζ'/ζ`, by contour (even `ν`).
    pub residue_of_zeta_term: Option<f64>,
}

impl LaurentData {
    /// `A_ν(N)`: `a_ν + b_ν + log N` for even `ν`, `-ζ'/ζ(-ν)` for odd `ν`.
    pub fn a_cap(&self, n: usize) -> f64 {
        match self.parity {
            Parity::Odd => self.zeta_logderiv_value.unwrap_or(f64::NAN),
            Parity::Even => {
                self.a_nu.unwrap_or(f64::NAN) + self.b_nu.unwrap_or(f64::NAN) + (n as f64).ln()
            }
        }
    }
}

const COEFF_RADIUS: f64 = 0.5;

/// `b_ν` by the series, cut at `L = 64ν` with the exact remainder
/// `-Σ_{j=L-ν+1}^{L} 1/j`.
fn b_series(nu: u32) -> f64 {
    let v = nu as i64;
    let l = 64 * v;
    let mut terms: Vec<f64> = (1..=l)
        .filter(|&n| n != v)
        .map(|n| 1.0 / n as f64 - 1.0 / (n - v) as f64)
        .collect();
    terms.extend((l - v + 1..=l).map(|j| -1.0 / j as f64));
    terms.push(2.0 / v as f64);
    terms.push(-EULER_GAMMA);
    pairwise_sum_real(&terms)
}

pub fn laurent_data(nu: u32, cfg: &QuadratureConfig) -> Result<LaurentData> {
    if nu == 0 {
        return Err(invalid("nu must be at least 1"));
    }
    let parity = Parity::of(nu);
    let centre = c(-(nu as f64), 0.0);
    let mut out = LaurentData {
        nu,
        parity,
        a_nu: None,
        a_nu_closed: None,
        a_nu_as_displayed: None,
        zeta_logderiv_value: None,
        b_nu: None,
        b_nu_series: None,
        residue_of_zeta_term: None,
    };
    match parity {
        Parity::Odd => {
            out.zeta_logderiv_value = Some(-zeta_logderiv(centre)?.re);
        }
        Parity::Even => {
            let opts = cfg.circle_options();
            let co = circle_coefficients(
                |w| Ok(-zeta_logderiv_unchecked(w)),
                centre,
                COEFF_RADIUS,
                &[-1, 0],
                &opts,
            )?;
            out.residue_of_zeta_term = Some(co[0].re);
            out.a_nu = Some(co[1].re);
            let displayed = circle_coefficients(
                |w| Ok(-(zeta_logderiv_unchecked(w) + 1.0 / (w - centre))),
                centre,
                1.0,
                &[-1],
                &opts,
            )?;
            out.a_nu_as_displayed = Some(displayed[0].re);
            let psi = digamma_unchecked(c(nu as f64 + 1.0, 0.0)).re;
            out.a_nu_closed = Some(psi - LOG_TWO_PI + zeta_logderiv_at_integer(nu as usize + 1));
            out.b_nu = Some(psi);
            out.b_nu_series = Some(b_series(nu));
        }
    }
    Ok(out)
}

/// The value `-ζ'/ζ(w)` near `-ν`, used by residue integrands.
pub(crate) fn neg_logderiv(w: Complex64) -> Complex64 {
    -zeta_logderiv_unchecked(w)
}

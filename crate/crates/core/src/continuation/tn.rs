//! Closed evaluation of `T_N(w)`, valid for every complex `w`.
//!
//! With `q = (1-1/N)^w`,
//!
//! ```text
//! Γ(w+1) T_N(w) = -P(w) + U(w) - (q-1) log(2π e^γ) - (q/2) log(1-1/N²)
//!                 - ∫_1^N ((1-1/ξ)^w - q) ξ dξ/(N²-ξ²)
//!                 + N ∫_N^∞ (q - (1-1/ξ)^w) dξ/(ξ²-N²),
//! ```
//!
//! where `P(w) = Σ Λ(n)/n ((1-1/(nN))^w - 1)` and
//! `U(w) = ∫_0^1 ((1-ξ/N)^w - 1) dξ/ξ`.
//! The piece `∫_1^2 (1-1/ξ)^w ξ dξ/(N²-ξ²)` has poles at `w = -1, -2, …`;
//! it is expanded as `S(w) = 2^{-(w+1)} Σ_m a_N(m) 2^{-m}/(w+1+m)` and
//! combined with `1/Γ(w+1)` into the entire `I(w)`.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::{check_n, QuadratureConfig};
use crate::arith::{sieve_lambda, LambdaTable};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::special::{
    c, cexpm1, digamma_unchecked, is_finite, pow_real, recip_gamma, zeta_logderiv_at_integer,
    EULER_GAMMA, LOG_TWO_PI,
};

/// The terms of the closed expression for `T_N(w)`.
///
/// `middle_integral` holds the part of the `[1, N]` integral that is
/// entire in `w` (the `[2, N]` piece and the `q`-part of `[1, 2]`), while
/// `middle_series` holds `I(w)`, already divided by `Γ(w+1)`. Hence
///
/// `total = prefactor·(-prime_sum + unit_interval_integral - log2pi_gamma_term
///          - half_log_term - middle_integral + outer_integral) - middle_series`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TNTermBreakdown {
    pub prime_sum: Complex64,
    pub unit_interval_integral: Complex64,
    pub log2pi_gamma_term: Complex64,
    pub half_log_term: Complex64,
    pub middle_integral: Complex64,
    pub middle_series: Complex64,
    pub outer_integral: Complex64,
    /// `1/Γ(w+1)`.
    pub prefactor: Complex64,
    pub total: Complex64,
    /// Set when `w` lies within 1/4 of one of `-1, -2, …`.
    pub near_integer: bool,
}

impl TNTermBreakdown {
    /// The bracket `-P + U - … + outer` before the prefactor.
    pub fn bracket(&self) -> Complex64 {
        -self.prime_sum + self.unit_interval_integral
            - self.log2pi_gamma_term
            - self.half_log_term
            - self.middle_integral
            + self.outer_integral
    }

    /// Recombines `total` from the stored parts.
    pub fn recombine(&self) -> Complex64 {
        self.prefactor * self.bracket() - self.middle_series
    }
}

const SIEVE_LIMIT: usize = 1 << 16;

fn shared_lambda() -> &'static LambdaTable {
    static TABLE: OnceLock<LambdaTable> = OnceLock::new();
    TABLE.get_or_init(|| sieve_lambda(SIEVE_LIMIT).expect("limit above 2"))
}

/// Number of leading binomial terms whose remainders `R_j` are formed by
/// subtraction from `ζ'/ζ(j+1)`; later ones are summed directly.
const SUBTRACTED_TERMS: usize = 5;
const DIRECT_SPAN: usize = 16;
const MAX_BINOMIAL_TERMS: usize = 400;

fn default_cutoff(w: Complex64, n: usize) -> usize {
    let want = (4.0 * (w.norm() + 2.0) / n as f64).ceil() as usize;
    want.max(64)
}

/// `P(w) = Σ_{n≥1} Λ(n)/n ((1-1/(nN))^w - 1)`.
///
/// Terms with `n ≤ cutoff` are summed directly. The rest is the convergent
/// expansion `Σ_j C(w,j)(-1/N)^j R_j` with `R_j = Σ_{n>cutoff} Λ(n) n^{-j-1}`,
/// which is exact, so the result does not depend on `cutoff` beyond
/// rounding. Requires `cutoff·N ≥ 2(|w|+2)`.
pub fn prime_sum_with_cutoff(w: Complex64, n: usize, cutoff: usize) -> Result<Complex64> {
    check_n(n)?;
    let nf = n as f64;
    if (cutoff as f64) * nf < 2.0 * (w.norm() + 2.0) {
        return Err(Error::InvalidArgument(format!(
            "prime-sum cutoff {cutoff} too small for |w| = {}",
            w.norm()
        )));
    }
    let span = cutoff * DIRECT_SPAN;
    let owned;
    let lambda = if span <= SIEVE_LIMIT {
        shared_lambda()
    } else {
        owned = sieve_lambda(span)?;
        &owned
    };
    let lv = lambda.values();

    let mut head = c(0.0, 0.0);
    for m in (2..=cutoff).rev() {
        let l = lv[m];
        if l != 0.0 {
            let mf = m as f64;
            head += cexpm1(w * (-1.0 / (mf * nf)).ln_1p()) * (l / mf);
        }
    }

    // Remainders R_j for j ≥ 1.
    let mut partial = [0.0; SUBTRACTED_TERMS + 1];
    for (m, &l) in lv.iter().enumerate().take(cutoff + 1).skip(2) {
        if l != 0.0 {
            let inv = 1.0 / m as f64;
            let mut p = l * inv;
            for slot in partial.iter_mut().skip(1) {
                p *= inv;
                *slot += p;
            }
        }
    }
    let mut direct = vec![0.0; MAX_BINOMIAL_TERMS + 1];
    let mut direct_ready = false;

    let bound_scale = 2.0 * ((cutoff + 1) as f64).ln();
    let mut binom = c(1.0, 0.0);
    let mut tail = c(0.0, 0.0);
    for j in 1..=MAX_BINOMIAL_TERMS {
        binom = binom * (w - (j as f64 - 1.0)) / (j as f64);
        let weight = binom * (-1.0 / nf).powi(j as i32);
        // majorant of the remaining terms: ratio ≤ 1/2 by the cutoff rule
        let majorant = weight.norm() * bound_scale * (cutoff as f64).powi(-(j as i32)) * 2.0;
        if j > 2 && majorant < 1e-19 * tail.norm().max(1e-3) {
            break;
        }
        let r_j = if j <= SUBTRACTED_TERMS {
            -zeta_logderiv_at_integer(j + 1) - partial[j]
        } else {
            if !direct_ready {
                fill_direct(lv, cutoff, span, &mut direct);
                direct_ready = true;
            }
            direct[j]
        };
        tail += weight * r_j;
    }
    Ok(head + tail)
}

fn fill_direct(lv: &[f64], cutoff: usize, span: usize, out: &mut [f64]) {
    for m in (cutoff + 1..=span).rev() {
        let l = lv[m];
        if l != 0.0 {
            let inv = 1.0 / m as f64;
            let mut p = l * inv;
            for slot in out.iter_mut().skip(1) {
                p *= inv;
                if p == 0.0 {
                    break;
                }
                *slot += p;
            }
        }
    }
}

/// Taylor coefficients `a_N(0..count)` of
/// `h_N(z) = 1/((1-z)(N²(1-z)²-1))`, from the partial fractions
/// `-1/(1-z) + ½/(1-1/N-z) + ½/(1+1/N-z)`.
pub fn h_coefficients(n: usize, count: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let lm = (-1.0 / n as f64).ln_1p();
    let lp = (1.0 / n as f64).ln_1p();
    Ok((0..count)
        .map(|m| {
            let e = (m + 1) as f64;
            0.5 * ((-e * lm).exp_m1() + (-e * lp).exp_m1())
        })
        .collect())
}

fn h_coefficient_cache(n: usize, count: usize) -> Vec<f64> {
    h_coefficients(n, count).expect("validated N")
}

const POLE_GAP: f64 = 1e-6;
const MAX_SERIES_TERMS: usize = 4000;

fn series_terms(w: Complex64, tol: f64) -> usize {
    // |a(m) 2^{-m}| ≤ 10 (3/4)^m; need the tail beyond the terms with
    // |w+1+m| small to fall below tol
    let start = (-(w.re + 1.0)).max(0.0).ceil() as usize + 2;
    let scale = 2f64.powf(-(w.re + 1.0)).max(1.0);
    let mut m = start;
    while m < MAX_SERIES_TERMS {
        let dist = (w + 1.0 + m as f64).norm().max(1.0);
        if 40.0 * scale * 0.75f64.powi(m as i32) / dist < tol {
            break;
        }
        m += 1;
    }
    m
}

/// Nearest `m ≥ 0` with `|w+1+m| < POLE_GAP`, if any.
fn near_series_pole(w: Complex64) -> Option<usize> {
    let m = -(w.re + 1.0);
    let mr = m.round();
    if mr >= 0.0 && (w + 1.0 + mr).norm() < POLE_GAP {
        Some(mr as usize)
    } else {
        None
    }
}

/// `S(w) = 2^{-(w+1)} Σ_m a_N(m) 2^{-m}/(w+1+m)` (poles at `w = -1-m`).
fn s_series(w: Complex64, coeffs: &[f64]) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for (m, &a) in coeffs.iter().enumerate().rev() {
        acc += a * 0.5f64.powi(m as i32) / (w + 1.0 + m as f64);
    }
    acc * pow_real(2.0, -(w + 1.0))
}

/// `I(w) = (1/Γ(w+1)) ∫_0^{1/2} x^w h_N(x) dx`, entire in `w`.
pub fn i_series(w: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    check_n(n)?;
    if !is_finite(w) {
        return Err(Error::NonFinite("i_series argument"));
    }
    let count = series_terms(w, cfg.series_tail_tol);
    let coeffs = h_coefficient_cache(n, count);
    Ok(i_series_with(w, &coeffs))
}

fn i_series_with(w: Complex64, coeffs: &[f64]) -> Complex64 {
    match near_series_pole(w) {
        None => recip_gamma(w + 1.0) * s_series(w, coeffs),
        Some(m0) => {
            let eps = w + 1.0 + m0 as f64;
            // 1/Γ(-m0+ε) = (-1)^{m0} m0! ε (1 - ψ(m0+1) ε + O(ε²))
            let fact: f64 = (1..=m0).map(|i| i as f64).product();
            let sign = if m0 % 2 == 0 { 1.0 } else { -1.0 };
            let psi = digamma_unchecked(c(m0 as f64 + 1.0, 0.0));
            let rg_over_eps = sign * fact * (1.0 - psi * eps);
            let two_pow = pow_real(2.0, -(w + 1.0));
            let mut rest = c(0.0, 0.0);
            for (m, &a) in coeffs.iter().enumerate().rev() {
                if m != m0 {
                    rest += a * 0.5f64.powi(m as i32) / (w + 1.0 + m as f64);
                }
            }
            let singular = rg_over_eps * coeffs[m0] * 0.5f64.powi(m0 as i32);
            two_pow * (singular + rg_over_eps * eps * rest)
        }
    }
}

struct Brackets {
    prime: Complex64,
    unit: Complex64,
    l2p: Complex64,
    half: Complex64,
    middle: Complex64,
    outer: Complex64,
    coeffs: Vec<f64>,
}

fn brackets(w: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<Brackets> {
    check_n(n)?;
    if !is_finite(w) {
        return Err(Error::NonFinite("T_N argument"));
    }
    let nf = n as f64;
    let opts = cfg.quad_options();
    let ln_q = (-1.0 / nf).ln_1p();
    let q = (w * ln_q).exp();

    let prime = prime_sum_with_cutoff(w, n, default_cutoff(w, n))?;

    let unit = integrate(
        |xi| Ok(cexpm1(w * (-xi / nf).ln_1p()) / xi),
        0.0,
        1.0,
        &opts,
    )?
    .value;

    let l2p = cexpm1(w * ln_q) * (LOG_TWO_PI + EULER_GAMMA);
    let half = 0.5 * q * (-1.0 / (nf * nf)).ln_1p();

    // ∫_2^N ((1-1/ξ)^w - q) ξ/(N²-ξ²) dξ, written so the removable
    // singularity at ξ = N cancels analytically
    let reg = integrate(
        |xi| {
            let d = (xi - nf) / (xi * (nf - 1.0));
            let e = cexpm1(w * d.ln_1p());
            Ok(e * (xi / ((nf - xi) * (nf + xi))))
        },
        2.0,
        nf,
        &opts,
    )?
    .value;
    let q_part = 0.5 * ((nf * nf - 1.0) / (nf * nf - 4.0)).ln();
    let middle = q * (reg - q_part);

    // N∫_N^∞ (q - (1-1/ξ)^w) dξ/(ξ²-N²) after ξ = N/τ
    let outer = integrate(
        |tau| {
            let d = (1.0 - tau) / (nf - 1.0);
            Ok(cexpm1(w * d.ln_1p()) / ((1.0 - tau) * (1.0 + tau)))
        },
        0.0,
        1.0,
        &opts,
    )?
    .value;
    let outer = -q * outer;

    let count = series_terms(w, cfg.series_tail_tol);
    let coeffs = h_coefficient_cache(n, count);
    Ok(Brackets {
        prime,
        unit,
        l2p,
        half,
        middle,
        outer,
        coeffs,
    })
}

/// Term-by-term evaluation of `T_N(w)` for any complex `w`.
pub fn t_closed(w: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<TNTermBreakdown> {
    let b = brackets(w, n, cfg)?;
    let prefactor = recip_gamma(w + 1.0);
    let middle_series = i_series_with(w, &b.coeffs);
    let mut out = TNTermBreakdown {
        prime_sum: b.prime,
        unit_interval_integral: b.unit,
        log2pi_gamma_term: b.l2p,
        half_log_term: b.half,
        middle_integral: b.middle,
        middle_series,
        outer_integral: b.outer,
        prefactor,
        total: c(0.0, 0.0),
        near_integer: {
            let m = (-w.re).round();
            m >= 1.0 && (w + m).norm() <= 0.25
        },
    };
    out.total = out.recombine();
    if !is_finite(out.total) {
        return Err(Error::NonFinite("T_N total"));
    }
    Ok(out)
}

/// `Γ(w+1)·T_N(w)`; finite away from `w = -1, -2, …` and free of the
/// overflow of `1/Γ(w+1)` at large `|Im w|`.
pub fn t_scaled(w: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    let b = brackets(w, n, cfg)?;
    if near_series_pole(w).is_some() {
        return Err(Error::Pole { at: w });
    }
    let bracket = -b.prime + b.unit - b.l2p - b.half - b.middle + b.outer;
    Ok(bracket - s_series(w, &b.coeffs))
}

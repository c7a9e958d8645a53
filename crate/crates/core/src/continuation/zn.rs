//! `Z_N(w)`: the truncated zero sum and its continuation to all `w`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::tn::{t_closed, t_scaled};
use super::{check_n, QuadratureConfig};
use crate::arith::{weighted_lambda_sum, LambdaTable};
use crate::error::{invalid, Error, Result};
use crate::quad::{circle_coefficients, CircleOptions};
use crate::special::{c, constants, gamma_ratio, pow_real, recip_gamma};
use crate::sum::pairwise_sum;
use crate::zeros::ZeroSet;

/// A zero sum truncated at height `T` with a heuristic size of the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSum {
    pub value: Complex64,
    /// Heuristic estimate of `|Σ_{|γ|>T}|`; not a proven bound.
    pub tail_estimate: f64,
    /// Number of conjugate pairs summed.
    pub pairs: usize,
}

/// `f(ρ) + f(conj ρ)` for every ordinate, in ascending order.
pub(crate) fn pair_terms<F>(ordinates: &[f64], f: F) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    ordinates
        .par_iter()
        .map(|&g| {
            let rho = c(0.5, g);
            Ok(f(rho)? + f(rho.conj())?)
        })
        .collect()
}

const MIN_WINDOW: usize = 8;

/// Tail of a zero sum whose terms decay like `γ^{-decay-1}` (up to logs):
/// the absolute mass in `(T/2, T]` divided by `2^decay - 1`, which is the
/// sum of the dyadic blocks beyond `T` under that decay. `None` if the
/// window holds too few zeros to be meaningful.
pub(crate) fn window_tail(
    ordinates: &[f64],
    terms: &[Complex64],
    t: f64,
    decay: f64,
) -> Option<f64> {
    let lo = ordinates.partition_point(|&g| g <= 0.5 * t);
    let hi = ordinates.partition_point(|&g| g <= t);
    if hi - lo < MIN_WINDOW || decay <= 0.0 {
        return None;
    }
    let mass: f64 = terms[lo..hi].iter().map(|z| z.norm()).sum();
    Some(mass / (2f64.powf(decay) - 1.0))
}

fn analytic_tail(w: Complex64, n: usize, t: f64) -> f64 {
    let u = w.re;
    let tt = t.max(14.0);
    (n as f64).sqrt()
        * (0.5 * PI * w.im.abs()).exp()
        * tt.powf(-u)
        * ((tt / (2.0 * PI)).ln() + 1.0 / u)
        / (PI * u)
}

/// `Σ_{|γ|≤T} Γ(ρ)/Γ(ρ+w+1) N^ρ` over `ρ = 1/2 ± iγ`, pairs combined
/// before accumulation, for `Re w > 0`.
pub fn z_zero_sum(w: Complex64, n: usize, zs: &ZeroSet, t: f64) -> Result<ZeroSum> {
    check_n(n)?;
    if !(w.re > 0.0) {
        return Err(Error::UnsupportedDomain {
            at: w,
            reason: "the zero sum for Z_N converges only for Re w > 0",
        });
    }
    let ords = zs.ordinates_up_to(t)?;
    let nf = n as f64;
    let terms = pair_terms(ords, |rho| {
        Ok(gamma_ratio(rho, rho + w + 1.0)? * pow_real(nf, rho))
    })?;
    let value = pairwise_sum(&terms);
    let tail_estimate =
        window_tail(ords, &terms, t, w.re).unwrap_or_else(|| analytic_tail(w, n, t));
    Ok(ZeroSum {
        value,
        tail_estimate,
        pairs: ords.len(),
    })
}

pub(crate) fn check_lambda(n: usize, lambda: &LambdaTable) -> Result<()> {
    if n > lambda.limit() {
        return Err(invalid(format!(
            "N = {n} exceeds the von Mangoldt table limit {}",
            lambda.limit()
        )));
    }
    Ok(())
}

/// Continuation of `Z_N` to all `w`:
/// `N/Γ(w+2) - ζ'/ζ(0)/Γ(w+1) + T_N(w) - Σ_{n<N} Λ(n)(1-n/N)^w/Γ(w+1)`.
pub fn z_continued(
    w: Complex64,
    n: usize,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_n(n)?;
    check_lambda(n, lambda)?;
    let t = t_closed(w, n, cfg)?.total;
    Ok(z_from_t(w, n, lambda, t))
}

/// `Z_N(w)` given `T_N(w)`; `N` must already be checked against `lambda`.
pub(crate) fn z_from_t(w: Complex64, n: usize, lambda: &LambdaTable, t: Complex64) -> Complex64 {
    let c0 = constants().zeta_logderiv_at_zero;
    let rg1 = recip_gamma(w + 1.0);
    let s = weighted_lambda_sum(lambda, n, w);
    n as f64 * recip_gamma(w + 2.0) - c0 * rg1 + t - rg1 * s
}

/// `Γ(w+1)·Z_N(w)` given `Γ(w+1)·T_N(w)`.
pub(crate) fn z_scaled_from_t(
    w: Complex64,
    n: usize,
    lambda: &LambdaTable,
    t_scaled: Complex64,
) -> Complex64 {
    let c0 = constants().zeta_logderiv_at_zero;
    n as f64 / (w + 1.0) - c0 + t_scaled - weighted_lambda_sum(lambda, n, w)
}

/// `Γ(w+1)·Z_N(w)`, for use at large `|Im w|` where `1/Γ(w+1)` overflows.
pub fn z_scaled(
    w: Complex64,
    n: usize,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_n(n)?;
    check_lambda(n, lambda)?;
    let t = t_scaled(w, n, cfg)?;
    Ok(z_scaled_from_t(w, n, lambda, t))
}

/// `f^{(order)}(w0)` from Cauchy's formula on `|w - w0| = radius`, using
/// the trapezoidal rule with node doubling.
pub fn cauchy_derivative<F>(
    f: F,
    w0: Complex64,
    radius: f64,
    order: u32,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(radius > 0.0) {
        return Err(invalid("Cauchy radius must be positive"));
    }
    let opts = CircleOptions {
        scale_by_samples: true,
        ..cfg.circle_options()
    };
    let coeff = circle_coefficients(f, w0, radius, &[order as i32], &opts)?[0];
    let fact: f64 = (1..=order).map(f64::from).product();
    Ok(coeff * fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::zeros::parse_zeros;

    fn fixture() -> ZeroSet {
        let text = include_str!("../../../../data/zeros_1000.txt");
        parse_zeros(text, "fixture").unwrap()
    }

    #[test]
    fn cauchy_examples() {
        let cfg = QuadratureConfig::default();
        let d = cauchy_derivative(|w| Ok(w * w), c(3.0, 0.0), 0.5, 1, &cfg).unwrap();
        assert!((d - 6.0).norm() < 1e-10);
        let d = cauchy_derivative(|w| Ok(w.exp()), c(0.0, 0.0), 1.0, 1, &cfg).unwrap();
        assert!((d - 1.0).norm() < 1e-12);
    }

    #[test]
    fn empty_and_real_zero_sums() {
        let zs = fixture();
        let empty = z_zero_sum(c(1.0, 0.0), 10, &zs, 10.0).unwrap();
        assert_eq!(empty.value, c(0.0, 0.0));
        assert_eq!(empty.pairs, 0);
        let s = z_zero_sum(c(1.5, 0.0), 50, &zs, 500.0).unwrap();
        assert!(s.value.im.abs() < 1e-10 * s.value.norm().max(1.0));
        assert!(matches!(
            z_zero_sum(c(1.0, 0.0), 10, &zs, 1e6),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn continuation_symmetry_and_scaling() {
        let lam = sieve_lambda(200).unwrap();
        let cfg = QuadratureConfig::default();
        let w = c(0.7, 2.3);
        let a = z_continued(w, 50, &lam, &cfg).unwrap();
        let b = z_continued(w.conj(), 50, &lam, &cfg).unwrap();
        assert!((a.conj() - b).norm() < 1e-12 * a.norm().max(1.0));
        let s = z_scaled(w, 50, &lam, &cfg).unwrap();
        let g = crate::special::gamma(w + 1.0).unwrap();
        assert!((s - g * a).norm() < 1e-10 * s.norm().max(1.0));
        assert!(z_continued(w, 300, &lam, &cfg).is_err());
    }

    #[test]
    fn continuation_matches_zero_sum() {
        let zs = fixture();
        let lam = sieve_lambda(200).unwrap();
        let cfg = QuadratureConfig::default();
        let w = c(1.5, 0.0);
        let sum = z_zero_sum(w, 50, &zs, 1000.0).unwrap();
        let cont = z_continued(w, 50, &lam, &cfg).unwrap();
        let gap = (sum.value - cont).norm();
        assert!(
            gap <= sum.tail_estimate + 1e-6 * (1.0 + cont.norm()),
            "gap {gap}, tail {}",
            sum.tail_estimate
        );
    }
}

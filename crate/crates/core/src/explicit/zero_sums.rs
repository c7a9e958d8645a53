//! The zero sums `A_k(N)` and `B_k(N)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{check_k, real_part};
use crate::arith::LambdaTable;
use crate::continuation::{
    check_lambda, check_n, t_scaled, window_tail, z_scaled_from_t, z_zero_sum, QuadratureConfig,
};
use crate::error::Result;
use crate::special::{c, gamma_ratio, log_gamma, pow_real};
use crate::sum::pairwise_sum;
use crate::zeros::ZeroSet;

/// A real zero sum truncated at height `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    /// Heuristic size of the omitted zeros' contribution.
    pub tail_estimate: f64,
    pub pairs: usize,
}

/// `A_k(N) = Σ_{|γ|≤T} Γ(ρ)/Γ(ρ+k+2) N^{ρ+1}`.
pub fn a_k_sum(n: usize, k: f64, zs: &ZeroSet, t: f64) -> Result<TruncatedSum> {
    check_k(k)?;
    let z = z_zero_sum(c(k + 1.0, 0.0), n, zs, t)?;
    let nf = n as f64;
    Ok(TruncatedSum {
        value: real_part(z.value * nf, "A_k")?,
        tail_estimate: nf * z.tail_estimate,
        pairs: z.pairs,
    })
}

/// Per-pair terms of `Σ Γ(ρ)Z_N(ρ+k)N^ρ` and `Σ Γ(ρ)T_N(ρ+k)N^ρ`, each
/// pair combined before accumulation.
pub(crate) struct ZeroTerms {
    pub z_terms: Vec<Complex64>,
    pub t_terms: Vec<Complex64>,
}

pub(crate) fn zero_terms(
    n: usize,
    k: f64,
    ordinates: &[f64],
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<ZeroTerms> {
    let nf = n as f64;
    let one = |rho: Complex64| -> Result<(Complex64, Complex64)> {
        let w = rho + k;
        let ts = t_scaled(w, n, cfg)?;
        let zs = z_scaled_from_t(w, n, lambda, ts);
        let g = gamma_ratio(rho, w + 1.0)? * pow_real(nf, rho);
        Ok((g * zs, g * ts))
    };
    let pairs: Vec<(Complex64, Complex64)> = ordinates
        .par_iter()
        .map(|&g| {
            let rho = c(0.5, g);
            let (z1, t1) = one(rho)?;
            let (z2, t2) = one(rho.conj())?;
            Ok((z1 + z2, t1 + t2))
        })
        .collect::<Result<_>>()?;
    let (z_terms, t_terms) = pairs.into_iter().unzip();
    Ok(ZeroTerms { z_terms, t_terms })
}

/// Tail of a zero sum with terms of size about `N^{3/2} γ^{-k-1}`, used
/// when too few zeros lie in `(T/2, T]` to measure it.
fn rough_tail(n: usize, k: f64, t: f64) -> f64 {
    let tt = t.max(14.0);
    (n as f64).powf(1.5) * tt.powf(-k) * ((tt / (2.0 * PI)).ln() + 1.0 / k) / (PI * k)
}

pub(crate) fn zero_sum_tail(
    ordinates: &[f64],
    terms: &[Complex64],
    n: usize,
    k: f64,
    t: f64,
) -> f64 {
    window_tail(ordinates, terms, t, k).unwrap_or_else(|| rough_tail(n, k, t))
}

/// `B_k(N) = Σ_{|γ|≤T} Γ(ρ) Z_N(ρ+k) N^ρ` with `Z_N` from its continuation,
/// so `T` is the only truncation.
pub fn b_k_sum(
    n: usize,
    k: f64,
    zs: &ZeroSet,
    t: f64,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<TruncatedSum> {
    check_n(n)?;
    check_k(k)?;
    check_lambda(n, lambda)?;
    let ords = zs.ordinates_up_to(t)?;
    let terms = zero_terms(n, k, ords, lambda, cfg)?.z_terms;
    Ok(TruncatedSum {
        value: real_part(pairwise_sum(&terms), "B_k")?,
        tail_estimate: zero_sum_tail(ords, &terms, n, k, t),
        pairs: ords.len(),
    })
}

/// `Σ_ρ Σ_ρ' Γ(ρ)Γ(ρ')/Γ(ρ+ρ'+k+1) N^{ρ+ρ'}` with both `|γ|, |γ'| ≤ T`.
/// The tail estimate is that of the truncated inner sums, weighted by
/// `|Γ(ρ)N^ρ|`, plus the outer one.
pub fn b_k_double_sum(n: usize, k: f64, zs: &ZeroSet, t: f64) -> Result<TruncatedSum> {
    check_n(n)?;
    check_k(k)?;
    let ords = zs.ordinates_up_to(t)?;
    let nf = n as f64;
    let outer = |rho: Complex64| -> Result<(Complex64, f64)> {
        let inner = z_zero_sum(rho + k, n, zs, t)?;
        let weight = (log_gamma(rho)? + rho * nf.ln()).exp();
        Ok((weight * inner.value, weight.norm() * inner.tail_estimate))
    };
    let pieces: Vec<(Complex64, f64)> = ords
        .par_iter()
        .map(|&g| {
            let rho = c(0.5, g);
            let (a, ta) = outer(rho)?;
            let (b, tb) = outer(rho.conj())?;
            Ok((a + b, ta + tb))
        })
        .collect::<Result<_>>()?;
    let terms: Vec<Complex64> = pieces.iter().map(|p| p.0).collect();
    let inner_tails: f64 = pieces.iter().map(|p| p.1).sum();
    Ok(TruncatedSum {
        value: real_part(pairwise_sum(&terms), "double sum")?,
        tail_estimate: inner_tails + zero_sum_tail(ords, &terms, n, k, t),
        pairs: ords.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::zeros::parse_zeros;

    fn fixture() -> ZeroSet {
        parse_zeros(include_str!("../../../../data/zeros_1000.txt"), "fixture").unwrap()
    }

    #[test]
    fn empty_sums() {
        let zs = fixture();
        let lam = sieve_lambda(100).unwrap();
        let cfg = QuadratureConfig::default();
        assert_eq!(a_k_sum(50, 1.0, &zs, 10.0).unwrap().value, 0.0);
        assert_eq!(b_k_sum(50, 1.0, &zs, 10.0, &lam, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn a_k_is_n_times_zero_sum() {
        let zs = fixture();
        let a = a_k_sum(50, 1.0, &zs, 1000.0).unwrap();
        let z = z_zero_sum(c(2.0, 0.0), 50, &zs, 1000.0).unwrap();
        assert!((a.value - 50.0 * z.value.re).abs() <= 1e-12 * a.value.abs());
    }

    #[test]
    fn b_k_refines_within_tail() {
        let zs = fixture();
        let lam = sieve_lambda(100).unwrap();
        let cfg = QuadratureConfig::default();
        let lo = b_k_sum(50, 0.75, &zs, 500.0, &lam, &cfg).unwrap();
        let hi = b_k_sum(50, 0.75, &zs, 1000.0, &lam, &cfg).unwrap();
        assert!(
            (hi.value - lo.value).abs() <= lo.tail_estimate,
            "{lo:?} {hi:?}"
        );
    }
}

//! Sieve-based arithmetic: the von Mangoldt function, Goldbach
//! representation numbers `R(n) = Σ_{m+m'=n} Λ(m)Λ(m')` and the direct
//! evaluation of the averages `G_0(N)` and `G_k(N)`.

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{invalid, Result};
use crate::special::recip_gamma_real;

/// Von Mangoldt values `Λ(1..=limit)` on the natural-log scale.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTable {
    limit: usize,
    // index 0 is unused and kept at 0.0 so that values[n] = Λ(n)
    values: Vec<f64>,
}

impl LambdaTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `Λ(n)`; returns 0 for `n == 0` and panics past the limit.
    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }

    /// Slice indexed by `n`, with a dummy entry at index 0.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Chebyshev's `ψ(x) = Σ_{n≤x} Λ(n)`.
    pub fn chebyshev_psi(&self, x: usize) -> f64 {
        self.values[1..=x.min(self.limit)].iter().sum()
    }
}

/// Goldbach representation numbers `R(n)` for `2 ≤ n ≤ limit`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationTable {
    limit: usize,
    r: Vec<f64>,
}

impl RepresentationTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        self.r[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.r
    }
}

/// Selects the algorithm used by [`representation_table_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convolution {
    /// The O(N²) double loop.
    #[default]
    Direct,
    /// Zero-padded FFT self-convolution.
    Fft,
}

/// Sieves `Λ(n)` for `1 ≤ n ≤ limit`.
pub fn sieve_lambda(limit: usize) -> Result<LambdaTable> {
    if limit < 2 {
        return Err(invalid(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    let mut composite = vec![false; limit + 1];
    let mut values = vec![0.0; limit + 1];
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= limit {
            composite[m] = true;
            m += p;
        }
        let log_p = (p as f64).ln();
        let mut q = p;
        loop {
            values[q] = log_p;
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    Ok(LambdaTable { limit, values })
}

/// `R(n)` by the direct O(N²) convolution.
pub fn representation_table(lambda: &LambdaTable) -> Result<RepresentationTable> {
    representation_table_with(lambda, Convolution::Direct)
}

pub fn representation_table_with(
    lambda: &LambdaTable,
    method: Convolution,
) -> Result<RepresentationTable> {
    let limit = lambda.limit;
    if limit < 4 {
        return Err(invalid(format!(
            "representation table needs a Λ table of limit ≥ 4, got {limit}"
        )));
    }
    let r = match method {
        Convolution::Direct => convolve_direct(lambda),
        Convolution::Fft => convolve_fft(lambda),
    };
    Ok(RepresentationTable { limit, r })
}

fn convolve_direct(lambda: &LambdaTable) -> Vec<f64> {
    let v = &lambda.values;
    let limit = lambda.limit;
    (0..=limit)
        .into_par_iter()
        .map(|n| {
            if n < 2 {
                return 0.0;
            }
            // symmetric: pair m with n-m once, double, add the middle term
            let half = (n - 1) / 2;
            let mut acc = 0.0;
            for m in 1..=half {
                acc += v[m] * v[n - m];
            }
            acc *= 2.0;
            if n % 2 == 0 {
                acc += v[n / 2] * v[n / 2];
            }
            acc
        })
        .collect()
}

fn convolve_fft(lambda: &LambdaTable) -> Vec<f64> {
    let limit = lambda.limit;
    let len = (2 * (limit + 1)).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = (0..len)
        .map(|i| Complex::new(if i <= limit { lambda.values[i] } else { 0.0 }, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for x in buf.iter_mut() {
        *x = *x * *x;
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    let scale = 1.0 / len as f64;
    (0..=limit)
        .map(|n| if n < 4 { 0.0 } else { buf[n].re * scale })
        .collect()
}

/// `G_0(N)`: `Σ_{n≤N} R(n)` with the endpoint term halved.
pub fn g0_direct(r: &RepresentationTable, n_max: usize) -> Result<f64> {
    if n_max > r.limit {
        return Err(invalid(format!(
            "N = {n_max} exceeds the representation table limit {}",
            r.limit
        )));
    }
    if n_max < 2 {
        return Ok(0.0);
    }
    let full: f64 = r.r[2..=n_max].iter().sum();
    Ok(full - 0.5 * r.r[n_max])
}

fn check_mean_args(n_max: usize, limit: usize, k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(invalid(format!(
            "order k must be positive and finite, got {k}"
        )));
    }
    if n_max < 4 {
        return Err(invalid(format!("N must be at least 4, got {n_max}")));
    }
    if n_max > limit {
        return Err(invalid(format!(
            "N = {n_max} exceeds the table limit {limit}"
        )));
    }
    Ok(())
}

/// Cesàro-Riesz mean `G_k(N) = Γ(k+1)^{-1} Σ_{n<N} R(n)(1-n/N)^k`.
pub fn gk_direct(r: &RepresentationTable, n_max: usize, k: f64) -> Result<f64> {
    check_mean_args(n_max, r.limit, k)?;
    let nf = n_max as f64;
    let sum: f64 = (2..n_max)
        .map(|n| r.r[n] * (1.0 - n as f64 / nf).powf(k))
        .sum();
    Ok(sum * recip_gamma_real(k + 1.0))
}

/// The same mean through the nested factorisation
/// `1 - (m+n)/N = (1 - n/(N-m))(1 - m/N)`, touching only `Λ`.
pub fn gk_nested(lambda: &LambdaTable, n_max: usize, k: f64) -> Result<f64> {
    check_mean_args(n_max, lambda.limit, k)?;
    let v = &lambda.values;
    let nf = n_max as f64;
    let outer: f64 = (2..n_max)
        .filter(|&m| v[m] != 0.0)
        .map(|m| {
            let rest = n_max - m;
            let rf = rest as f64;
            let inner: f64 = (2..rest)
                .map(|n| v[n] * (1.0 - n as f64 / rf).powf(k))
                .sum();
            v[m] * (1.0 - m as f64 / nf).powf(k) * inner
        })
        .sum();
    Ok(outer * recip_gamma_real(k + 1.0))
}

/// `Σ_{n<N} Λ(n)(1-n/N)^w` for complex `w`.
pub(crate) fn weighted_lambda_sum(
    lambda: &LambdaTable,
    n_max: usize,
    w: num_complex::Complex64,
) -> num_complex::Complex64 {
    let nf = n_max as f64;
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for n in 2..n_max {
        let l = lambda.values[n];
        if l != 0.0 {
            acc += l * (w * (1.0 - n as f64 / nf).ln()).exp();
        }
    }
    acc
}

//! Reproducible summation.
//!
//! Partial results are always combined along the same binary tree, so the
//! rounding pattern depends only on the length of the input, never on
//! thread scheduling.

use num_complex::Complex64;
use rayon::prelude::*;

const LEAF: usize = 16;

/// Pairwise (cascade) sum of complex values over a fixed tree.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= LEAF {
        return xs.iter().fold(Complex64::new(0.0, 0.0), |acc, x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of reals.
pub fn pairwise_sum_real(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_real(&xs[..mid]) + pairwise_sum_real(&xs[mid..])
}

/// Maps `f` over `0..n` in parallel and sums the results with
/// [`pairwise_sum`]. Bitwise identical for any thread count.
pub fn par_map_sum<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync + Send,
{
    let terms: Vec<Complex64> = (0..n).into_par_iter().map(f).collect();
    pairwise_sum(&terms)
}

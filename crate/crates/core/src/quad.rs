//! Numerical integration: adaptive Gauss–Kronrod on intervals and the
//! trapezoidal rule on circles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::pairwise_sum;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], …, XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod<F>(f: &F, a: f64, b: f64) -> Result<Piece>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut k = fc * WGK[10];
    let mut g = Complex64::new(0.0, 0.0);
    let mut abs_k = fc.norm() * WGK[10];
    let mut vals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        vals[j] = (f1, f2);
        k += (f1 + f2) * WGK[j];
        abs_k += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = k * 0.5;
    let mut asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        asc += WGK[j] * ((vals[j].0 - mean).norm() + (vals[j].1 - mean).norm());
    }
    let value = k * half;
    let asc = asc * half.abs();
    let abs_k = abs_k * half.abs();
    let mut error = ((k - g) * half).norm();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs_k;
    if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    Ok(Piece { a, b, value, error })
}

/// Globally adaptive G10/K21 quadrature of a complex integrand on `[a, b]`.
///
/// The integrand may fail; the first failure is propagated.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b)?;
    let mut total = first.value;
    let mut err = first.error;
    heap.push(first);
    let mut splits = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if err <= target {
            break;
        }
        if splits >= opts.max_subdivisions {
            return Err(Error::ToleranceNotMet {
                achieved: err,
                requested: target,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(Error::ToleranceNotMet {
                achieved: err,
                requested: target,
            });
        }
        let left = kronrod(&f, worst.a, mid)?;
        let right = kronrod(&f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        splits += 1;
    }
    // Re-add in interval order so the result does not depend on heap history.
    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<Complex64> = pieces.iter().map(|p| p.value).collect();
    let error = pieces.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value: pairwise_sum(&values),
        error,
    })
}

/// `∫_0^∞ f(r) dr` through the map `r = t/(1-t)`.
pub fn integrate_half_line<F>(f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    integrate(
        |t: f64| {
            if t >= 1.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let s = 1.0 - t;
            let r = t / s;
            Ok(f(r)? / (s * s))
        },
        0.0,
        1.0,
        opts,
    )
}

/// Options for circle quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Measure `abs_tol` in units of the largest sample (times
    /// `radius^{-p}`), so tiny or huge integrands converge alike.
    pub scale_by_samples: bool,
}

impl Default for CircleOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            min_nodes: 32,
            max_nodes: 4096,
            scale_by_samples: false,
        }
    }
}

/// Laurent/Taylor coefficients `c_p = (1/2πi)∮ f(w)(w-w0)^{-p-1} dw` for
/// every `p` in `orders`, on the circle `|w - w0| = radius`.
///
/// Nodes double until each coefficient changes by less than the tolerance;
/// earlier samples are reused.
pub fn circle_coefficients<F>(
    f: F,
    w0: Complex64,
    radius: f64,
    orders: &[i32],
    opts: &CircleOptions,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let out = circle_coefficients_multi(|w| Ok(vec![f(w)?]), w0, radius, orders, opts)?;
    Ok(out.into_iter().next().expect("one component"))
}

/// As [`circle_coefficients`] for a vector-valued integrand; the result is
/// indexed `[component][order]`. All components share the samples.
pub fn circle_coefficients_multi<F>(
    f: F,
    w0: Complex64,
    radius: f64,
    orders: &[i32],
    opts: &CircleOptions,
) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>> + Sync,
{
    let node = |j: usize, n: usize| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
    let eval = |j: usize, n: usize| -> Result<Vec<Complex64>> { f(w0 + node(j, n) * radius) };

    let mut n = opts.min_nodes.max(4);
    let mut samples = par_collect(n, |j| eval(j, n))?;
    let width = samples[0].len();
    let coeffs = |samples: &[Vec<Complex64>], n: usize| -> Vec<Vec<Complex64>> {
        (0..width)
            .map(|comp| {
                orders
                    .iter()
                    .map(|&p| {
                        let terms: Vec<Complex64> = samples
                            .iter()
                            .enumerate()
                            .map(|(j, v)| v[comp] * node(j, n).powi(-p))
                            .collect();
                        pairwise_sum(&terms) * radius.powi(-p) / n as f64
                    })
                    .collect()
            })
            .collect()
    };
    let mut prev = coeffs(&samples, n);
    let mut change = f64::INFINITY;
    loop {
        if 2 * n > opts.max_nodes {
            return Err(Error::ToleranceNotMet {
                achieved: change,
                requested: opts.abs_tol,
            });
        }
        let m = 2 * n;
        let odd = par_collect(n, |j| eval(2 * j + 1, m))?;
        let mut merged = Vec::with_capacity(m);
        for (even, odd) in samples.into_iter().zip(odd) {
            merged.push(even);
            merged.push(odd);
        }
        samples = merged;
        n = m;
        let next = coeffs(&samples, n);
        let mut converged = true;
        change = 0.0;
        for (comp, (a_row, b_row)) in next.iter().zip(&prev).enumerate() {
            let peak = if opts.scale_by_samples {
                samples.iter().map(|v| v[comp].norm()).fold(0.0, f64::max)
            } else {
                1.0
            };
            for ((a, b), &p) in a_row.iter().zip(b_row).zip(orders) {
                let d = (a - b).norm();
                let floor = if opts.scale_by_samples {
                    peak * radius.powi(-p)
                } else {
                    1.0
                };
                change = change.max(d);
                if d > opts.abs_tol * floor + opts.rel_tol * a.norm() {
                    converged = false;
                }
            }
        }
        prev = next;
        if converged {
            return Ok(prev);
        }
    }
}

fn par_collect<T, G>(n: usize, g: G) -> Result<Vec<T>>
where
    T: Send,
    G: Fn(usize) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(|j| g(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| Ok(c(x * x, 2.0 * x)), 0.0, 3.0, &QuadOptions::default()).unwrap();
        assert!((r.value - c(9.0, 9.0)).norm() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 ln x dx = -1
        let r = integrate(|x| Ok(c(x.ln(), 0.0)), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value.re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn half_line() {
        let r = integrate_half_line(|x| Ok(c((-x).exp(), 0.0)), &QuadOptions::default()).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-11);
    }

    #[test]
    fn failing_budget_reports_estimate() {
        let opts = QuadOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            max_subdivisions: 2,
        };
        let r = integrate(
            |x| Ok(c((50.0 * x).sin() / x.sqrt(), 0.0)),
            0.0,
            10.0,
            &opts,
        );
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }

    #[test]
    fn circle_derivatives() {
        let got = circle_coefficients(
            |w| Ok(w.exp()),
            c(0.0, 0.0),
            1.0,
            &[0, 1, 2],
            &CircleOptions::default(),
        )
        .unwrap();
        assert!((got[0] - 1.0).norm() < 1e-13);
        assert!((got[1] - 1.0).norm() < 1e-13);
        assert!((got[2] - 0.5).norm() < 1e-13);
        // residue of 1/(w(w-3)) at 0 is -1/3
        let got = circle_coefficients(
            |w| Ok((w * (w - 3.0)).inv()),
            c(0.0, 0.0),
            0.5,
            &[-1],
            &CircleOptions::default(),
        )
        .unwrap();
        assert!((got[0] + 1.0 / 3.0).norm() < 1e-12);
    }
}

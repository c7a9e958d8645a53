//! Numerical inversion of the Mellin pair
//! `(1/2πi)∫_{(c)} Γ(s) x^{-s} / Γ(s+z+1) ds = (1-x)^z/Γ(z+1)` for `x < 1`
//! and `0` for `x ≥ 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cmath::{c, pow_real};
use super::gamma::{gamma_ratio, recip_gamma};
use crate::error::{invalid, Result};
use crate::quad::{integrate, integrate_half_line, QuadOptions};

const KERNEL_QUAD: QuadOptions = QuadOptions {
    abs_tol: 1e-13,
    rel_tol: 1e-12,
    max_subdivisions: 4000,
};

fn check(x: f64, z: Complex64, cc: f64, height: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(invalid(format!("Mellin kernel needs x > 0, got {x}")));
    }
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(invalid(format!("Mellin kernel needs Re z > 0, got {z}")));
    }
    if !(cc > 0.0) {
        return Err(invalid(format!("Mellin kernel needs c > 0, got {cc}")));
    }
    if !(height > 0.0) {
        return Err(invalid(format!(
            "integration height must be positive, got {height}"
        )));
    }
    Ok(())
}

fn integrand(x: f64, z: Complex64) -> impl Fn(Complex64) -> Result<Complex64> {
    move |s| Ok(gamma_ratio(s, s + z + 1.0)? * pow_real(x, -s))
}

fn segment(x: f64, z: Complex64, cc: f64, height: f64) -> Result<Complex64> {
    let f = integrand(x, z);
    let seg = integrate(|t| f(c(cc, t)), -height, height, &KERNEL_QUAD)?;
    Ok(seg.value * c(0.0, 1.0))
}

/// The kernel integral over the full line `Re s = c`.
///
/// The segment `|Im s| ≤ height` is integrated directly; the two tails are
/// deformed onto horizontal rays at `Im s = ±height`, running left when
/// `x < 1` (where `x^{-s}` decays) and right when `x ≥ 1`. No singularity
/// is crossed, so the value is the full line integral.
pub fn mellin_kernel_numeric(x: f64, z: Complex64, cc: f64, height: f64) -> Result<Complex64> {
    check(x, z, cc, height)?;
    let f = integrand(x, z);
    let mut total = segment(x, z, cc, height)?;
    if x < 1.0 {
        let up = integrate_half_line(|r| f(c(cc - r, height)), &KERNEL_QUAD)?;
        let down = integrate_half_line(|r| f(c(cc - r, -height)), &KERNEL_QUAD)?;
        total += down.value - up.value;
    } else {
        let up = integrate_half_line(|r| f(c(cc + r, height)), &KERNEL_QUAD)?;
        let down = integrate_half_line(|r| f(c(cc + r, -height)), &KERNEL_QUAD)?;
        total += up.value - down.value;
    }
    Ok(total / c(0.0, 2.0 * PI))
}

/// The kernel integral over the segment `|Im s| ≤ height` only. Its error
/// decays like `height^{-Re z}`; useful as a convergence probe.
pub fn mellin_kernel_truncated(x: f64, z: Complex64, cc: f64, height: f64) -> Result<Complex64> {
    check(x, z, cc, height)?;
    Ok(segment(x, z, cc, height)? / c(0.0, 2.0 * PI))
}

/// Closed form of the kernel: `(1-x)^z/Γ(z+1)` for `0 < x < 1`, else 0.
pub fn mellin_kernel_exact(x: f64, z: Complex64) -> Complex64 {
    if x >= 1.0 {
        return c(0.0, 0.0);
    }
    pow_real(1.0 - x, z) * recip_gamma(z + 1.0)
}

//! Complex log-gamma, reciprocal gamma and digamma.
//!
//! All three shift the argument upward with the recurrence until the
//! Stirling/asymptotic series is accurate (`|z| ≥ 15`, `Re z ≥ 1`). For
//! `Im z ≠ 0` the sum of principal logarithms picked up by the shift is
//! analytic in each half-plane and agrees with `log Γ` on the positive
//! axis, so the result is the principal branch everywhere off the cut.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::cmath::{c, ccot, is_finite, is_nonpositive_integer, BERNOULLI_EVEN};
use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_TERMS: usize = 10;
const SHIFT_RADIUS: f64 = 15.0;
const REFLECT_BELOW: f64 = -20.0;

fn needs_shift(z: Complex64) -> bool {
    z.re < 1.0 || (z.re < SHIFT_RADIUS && z.im.abs() < SHIFT_RADIUS)
}

fn check_arg(z: Complex64) -> Result<()> {
    if !is_finite(z) {
        return Err(Error::NonFinite("gamma-family argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { at: z });
    }
    Ok(())
}

/// Principal branch of `log Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_arg(z)?;
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < REFLECT_BELOW {
        return log_gamma_reflected(z);
    }
    log_gamma_shifted(z)
}

fn log_gamma_shifted(z: Complex64) -> Complex64 {
    let mut x = z;
    let mut shift = c(0.0, 0.0);
    while needs_shift(x) {
        shift += x.ln();
        x += 1.0;
    }
    stirling(x) - shift
}

// log sin(πz) on the branch that is continuous in the closed upper half-plane.
fn log_sin_pi_upper(z: Complex64) -> Complex64 {
    let e = (c(0.0, 2.0 * PI) * z).exp();
    (1.0 - e).ln() - c(0.0, PI) * z + c(-std::f64::consts::LN_2, 0.5 * PI)
}

// With the branch of log sin above, the reflection formula lands on the
// principal branch with no 2πi correction.
fn log_gamma_reflected(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return log_gamma_reflected(z.conj()).conj();
    }
    c(PI.ln(), 0.0) - log_sin_pi_upper(z) - log_gamma_unchecked(1.0 - z)
}

fn stirling(x: Complex64) -> Complex64 {
    let inv = x.inv();
    let inv2 = inv * inv;
    let mut series = c(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `1/Γ(z)`: entire, exactly zero at the nonpositive integers.
///
/// Overflows to infinity once `|Im z|` is large enough that `|Γ(z)|`
/// underflows (roughly `|Im z| > 470`); callers working that high use
/// ratios instead.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return c(0.0, 0.0);
    }
    (-log_gamma_unchecked(z)).exp()
}

/// Real-argument `1/Γ(x)`.
pub fn recip_gamma_real(x: f64) -> f64 {
    recip_gamma(c(x, 0.0)).re
}

/// `d/dz (1/Γ(z))`, finite everywhere; at `z = -n` it equals `(-1)^n n!`.
pub fn recip_gamma_deriv(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        let n = (-z.re) as u32;
        let fact: f64 = (1..=n).map(f64::from).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return c(sign * fact, 0.0);
    }
    -digamma_unchecked(z) * recip_gamma(z)
}

/// `Γ(a)/Γ(b)` through log-gamma differences.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    check_arg(a)?;
    check_arg(b)?;
    Ok((log_gamma_unchecked(a) - log_gamma_unchecked(b)).exp())
}

/// `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_arg(z)?;
    Ok(digamma_unchecked(z))
}

pub(crate) fn digamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < REFLECT_BELOW {
        return digamma_unchecked(1.0 - z) - PI * ccot(PI * z);
    }
    let mut x = z;
    let mut shift = c(0.0, 0.0);
    while needs_shift(x) {
        shift += x.inv();
        x += 1.0;
    }
    let inv = x.inv();
    let inv2 = inv * inv;
    let mut series = c(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / n);
        pow *= inv2;
    }
    x.ln() - 0.5 * inv - series - shift
}

/// `Γ(z)` itself, for moderate arguments.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half - c(0.5 * PI.ln(), 0.0)).norm() < 1e-14);
        // frozen reference values (40-digit arithmetic)
        let refs = [
            (
                c(3.0, 4.0),
                c(-1.756_626_784_603_784_1, 4.742_664_438_034_658),
            ),
            (
                c(-2.5, 0.5),
                c(-0.935_085_621_298_277_5, -8.870_962_885_247_459),
            ),
            (
                c(0.5, 100.0),
                c(-156.160_694_146_284_99, 360.517_435_267_906_44),
            ),
            (c(-0.5, 0.0), c(1.265_512_123_484_645_4, -PI)),
        ];
        for (z, want) in refs {
            let got = log_gamma(z).unwrap();
            assert!(close(got, want, 1e-13), "logΓ({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn reflection_agrees_with_shift_recurrence() {
        // both routes must land on the same (principal) branch
        for z in [
            c(-25.3, 0.0),
            c(-21.7, 0.01),
            c(-30.5, 7.0),
            c(-24.1, -2.0),
            c(-40.2, 250.0),
        ] {
            let a = log_gamma_reflected(z);
            let b = log_gamma_shifted(z);
            assert!((a - b).norm() < 1e-11 * b.norm(), "z = {z}: {a} vs {b}");
        }
        let v = log_gamma(c(-1.0e6 - 0.5, 3.0)).unwrap();
        assert!(is_finite(v));
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(digamma(c(-1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma_ratio(c(1.0, 0.0), c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn recip_gamma_values() {
        assert_eq!(recip_gamma(c(-3.0, 0.0)), c(0.0, 0.0));
        assert_eq!(recip_gamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert!((recip_gamma(c(2.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let want = -1.0 / (2.0 * PI.sqrt());
        assert!((recip_gamma(c(-0.5, 0.0)) - c(want, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn recip_gamma_derivative_at_poles() {
        // finite-difference check away from and at the poles
        for z in [
            c(-2.0, 0.0),
            c(-3.0, 0.0),
            c(0.0, 0.0),
            c(1.7, 0.3),
            c(-2.5, 0.1),
        ] {
            let h = 1e-5;
            let fd = (recip_gamma(z + h) - recip_gamma(z - h)) / (2.0 * h);
            let d = recip_gamma_deriv(z);
            assert!(close(d, fd, 1e-8), "z = {z}: {d} vs {fd}");
        }
        assert_eq!(recip_gamma_deriv(c(-3.0, 0.0)), c(-6.0, 0.0));
    }

    #[test]
    fn gamma_ratio_values() {
        assert!((gamma_ratio(c(1.0, 0.0), c(3.0, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let z = c(0.7, -3.2);
        assert!((gamma_ratio(z, z).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        // Γ(z)/Γ(z+2) = 1/(z(z+1)) exactly
        let z = c(0.5, 14.1347);
        let want = (z * (z + 1.0)).inv();
        let got = gamma_ratio(z, z + 2.0).unwrap();
        assert!(close(got, want, 1e-10));
        // high on the critical line: no overflow
        let rho = c(0.5, 1.0e4);
        let r = gamma_ratio(rho, rho + 2.5).unwrap();
        assert!(is_finite(r) && r.norm() > 0.0);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn digamma_known_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap() - c(-EULER, 0.0)).norm() < 1e-15);
        assert!((digamma(c(2.0, 0.0)).unwrap() - c(1.0 - EULER, 0.0)).norm() < 1e-15);
        let refs = [
            (
                c(0.5, 10.0),
                c(2.302_167_693_274_347, 1.570_796_326_794_896_6),
            ),
            (
                c(-3.3, 0.2),
                c(2.692_327_585_005_886, 2.244_723_230_519_095),
            ),
        ];
        for (z, want) in refs {
            let got = digamma(z).unwrap();
            assert!(close(got, want, 1e-12), "ψ({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn reflection_consistency_grid() {
        for i in -30..=30 {
            for j in [-7.3, -0.4, 0.0, 0.25, 2.9] {
                let z = c(i as f64 + 0.37, j);
                if z.norm() > 30.0 {
                    continue;
                }
                let prod = recip_gamma(z) * log_gamma(z).unwrap().exp();
                assert!((prod - 1.0).norm() < 1e-11, "z = {z}");
            }
        }
    }

    proptest! {
        #[test]
        fn recurrence_right_half_plane(re in 0.05f64..30.0, im in -30.0f64..30.0) {
            let z = c(re, im);
            let lhs = log_gamma(z + 1.0).unwrap().exp();
            let rhs = z * log_gamma(z).unwrap().exp();
            prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
        }

        #[test]
        fn digamma_recurrence(re in -20.0f64..20.0, im in 0.01f64..20.0) {
            let z = c(re, im);
            let lhs = digamma(z + 1.0).unwrap();
            let rhs = digamma(z).unwrap() + z.inv();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }

        #[test]
        fn conjugation_symmetry(re in -15.0f64..15.0, im in 0.01f64..40.0) {
            let z = c(re, im);
            let lg = log_gamma(z).unwrap();
            prop_assert!((log_gamma(z.conj()).unwrap() - lg.conj()).norm() <= 1e-12 * lg.norm().max(1.0));
            let rg = recip_gamma(z);
            prop_assert!((recip_gamma(z.conj()) - rg.conj()).norm() <= 1e-12 * rg.norm().max(1e-300));
            let dg = digamma(z).unwrap();
            prop_assert!((digamma(z.conj()).unwrap() - dg.conj()).norm() <= 1e-12 * dg.norm().max(1.0));
        }
    }
}

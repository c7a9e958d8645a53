//! The logarithmic derivative `ζ'/ζ(s)` away from the critical strip.
//!
//! For `Re s ≥ 1.25`, `ζ` and `ζ'` come together from Euler–Maclaurin
//! summation carried out on dual numbers. For `Re s ≤ -0.25` the
//! functional equation reflects to the right half-plane:
//!
//! `ζ'/ζ(s) = G(s) - ζ'/ζ(1-s)`, with
//! `G(s) = log 2π + (π/2) cot(πs/2) - ψ(1-s)`.
//!
//! This `G` is the same function as `log 2π - ψ(s) + (π/2) tan(πs/2)`
//! rewritten through the reflection formula of `ψ`; the cotangent form has
//! no removable singularities at the odd negative integers.

use std::f64::consts::PI;
use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::cmath::{c, ccot, is_finite, BERNOULLI_EVEN};
use super::gamma::digamma_unchecked;
use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const LOG_TWO_PI: f64 = 1.837_877_066_409_345_5;

/// Default exclusion radius around the trivial zeros.
pub const DEFAULT_DELTA: f64 = 0.25;

const EM_TERMS: usize = 14;

#[derive(Clone, Copy, Debug)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

impl Dual {
    fn constant(v: Complex64) -> Self {
        Dual { v, d: c(0.0, 0.0) }
    }
    fn scale(self, k: f64) -> Self {
        Dual {
            v: self.v * k,
            d: self.d * k,
        }
    }
    /// `a^{-s}` as a function of `s`, times `a^{-shift}`.
    fn power(a: f64, s: Complex64, shift: f64) -> Self {
        let la = a.ln();
        let v = (-(s + shift) * la).exp();
        Dual { v, d: -la * v }
    }
}

/// `(ζ(s), ζ'(s))` by Euler–Maclaurin summation; valid for any `s ≠ 1`
/// with moderate `|s|`, accurate to a few ulps of the larger terms.
pub fn zeta_with_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    if !is_finite(s) {
        return Err(Error::NonFinite("zeta argument"));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    let m = (0.6 * s.norm()).ceil().max(20.0) as usize;
    let mf = m as f64;

    let mut head: Vec<Dual> = (1..m).map(|n| Dual::power(n as f64, s, 0.0)).collect();
    head.reverse();
    let mut acc = Dual::constant(c(0.0, 0.0));
    for t in head {
        acc = acc + t;
    }

    // M^{1-s}/(s-1)
    let inv = (s - 1.0).inv();
    let pm = Dual::power(mf, s, -1.0);
    acc = acc
        + Dual {
            v: pm.v * inv,
            d: pm.d * inv - pm.v * inv * inv,
        };
    // M^{-s}/2
    acc = acc + Dual::power(mf, s, 0.0).scale(0.5);

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j-2) · M^{-s-2j+1}
    let mut poch = Dual {
        v: s,
        d: c(1.0, 0.0),
    };
    let mut fact = 2.0;
    for j in 1..=EM_TERMS {
        let b = BERNOULLI_EVEN[j - 1];
        let term = poch * Dual::power(mf, s, 2.0 * j as f64 - 1.0);
        acc = acc + term.scale(b / fact);
        // advance the rising factorial by two factors and the factorial by two
        let k = 2.0 * j as f64;
        poch =
            poch * Dual {
                v: s + (k - 1.0),
                d: c(1.0, 0.0),
            } * Dual {
                v: s + k,
                d: c(1.0, 0.0),
            };
        fact *= (k + 1.0) * (k + 2.0);
    }
    Ok((acc.v, acc.d))
}

/// `G(s) = log 2π + (π/2) cot(πs/2) - ψ(1-s)`, so that
/// `ζ'/ζ(s) + ζ'/ζ(1-s) = G(s)`.
pub fn functional_g(s: Complex64) -> Result<Complex64> {
    if !is_finite(s) {
        return Err(Error::NonFinite("functional-equation argument"));
    }
    let half = 0.5 * s;
    if half.im == 0.0 && half.re == half.re.round() {
        return Err(Error::Pole { at: s });
    }
    let one_minus = 1.0 - s;
    if one_minus.im == 0.0 && one_minus.re <= 0.0 && one_minus.re == one_minus.re.round() {
        return Err(Error::Pole { at: s });
    }
    Ok(functional_g_unchecked(s))
}

pub(crate) fn functional_g_unchecked(s: Complex64) -> Complex64 {
    c(LOG_TWO_PI, 0.0) + 0.5 * PI * ccot(0.5 * PI * s) - digamma_unchecked(1.0 - s)
}

fn em_logderiv(s: Complex64) -> Complex64 {
    let (z, dz) = zeta_with_derivative(s).expect("finite argument away from s = 1");
    dz / z
}

/// `ζ'/ζ(s)` with the default exclusion radius `1/4` around trivial zeros.
pub fn zeta_logderiv(s: Complex64) -> Result<Complex64> {
    zeta_logderiv_with_delta(s, DEFAULT_DELTA)
}

/// `ζ'/ζ(s)` on `Re s ≥ 1.25`, on `Re s ≤ -0.25` outside the disks of
/// radius `delta` about `-2, -4, …`, and at `s = 0`.
pub fn zeta_logderiv_with_delta(s: Complex64, delta: f64) -> Result<Complex64> {
    if !is_finite(s) {
        return Err(Error::NonFinite("zeta_logderiv argument"));
    }
    if s == c(0.0, 0.0) {
        return Ok(c(constants().zeta_logderiv_at_zero, 0.0));
    }
    if s.re >= 1.25 {
        return Ok(em_logderiv(s));
    }
    if s.re > -0.25 {
        return Err(Error::UnsupportedDomain {
            at: s,
            reason: "0 < |Re s - 0.5| < 0.75 is not covered; use Re s >= 1.25 or Re s <= -0.25",
        });
    }
    let nearest_even = (0.5 * s.re).round() * 2.0;
    if nearest_even <= -2.0 {
        let dist = (s - nearest_even).norm();
        if dist < delta {
            return Err(Error::PoleProximity {
                at: s,
                pole: nearest_even,
                distance: dist,
            });
        }
    }
    Ok(zeta_logderiv_unchecked(s))
}

/// Reflection or direct evaluation with no domain checks. Callers sample
/// circles around trivial zeros and need values close to the poles.
pub(crate) fn zeta_logderiv_unchecked(s: Complex64) -> Complex64 {
    if s.re >= 0.5 {
        em_logderiv(s)
    } else {
        functional_g_unchecked(s) - em_logderiv(1.0 - s)
    }
}

/// `ζ'/ζ(j)` for integers `j ≥ 2`, memoized.
pub fn zeta_logderiv_at_integer(j: usize) -> f64 {
    const CACHED: usize = 512;
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..CACHED)
            .map(|j| {
                if j < 2 {
                    f64::NAN
                } else {
                    em_logderiv(c(j as f64, 0.0)).re
                }
            })
            .collect()
    });
    assert!(j >= 2, "ζ'/ζ(j) requested for j < 2");
    if j < CACHED {
        table[j]
    } else {
        // ζ'/ζ(j) = -ln2·2^{-j} - ln3·3^{-j} - … ; beyond 512 only 2^{-j} survives
        -(2f64.ln()) * 2f64.powi(-(j as i32))
    }
}

/// Numerical constants used throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub euler_gamma: f64,
    pub log_two_pi: f64,
    /// `ζ'/ζ(0)`, derived as the mean of `G(s) - ζ'/ζ(1-s)` on a circle
    /// around 0 (the two poles cancel there).
    pub zeta_logderiv_at_zero: f64,
    /// `ζ'/ζ(-1)` via reflection.
    pub zeta_logderiv_at_minus_one: f64,
}

/// Lazily computed constants; the derivation runs once per process.
pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        let n = 64;
        let radius = 0.5;
        let mut acc = c(0.0, 0.0);
        for j in 0..n {
            let s = Complex64::from_polar(radius, 2.0 * PI * (j as f64 + 0.5) / n as f64);
            acc += functional_g_unchecked(s) - em_logderiv(1.0 - s);
        }
        let at_zero = (acc / n as f64).re;
        let at_minus_one = zeta_logderiv_unchecked(c(-1.0, 0.0)).re;
        Constants {
            euler_gamma: EULER_GAMMA,
            log_two_pi: LOG_TWO_PI,
            zeta_logderiv_at_zero: at_zero,
            zeta_logderiv_at_minus_one: at_minus_one,
        }
    })
}

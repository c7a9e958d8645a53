//! `T_N(w)` straight from its defining line integral, for `Re w > 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_n, QuadratureConfig};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::special::{c, gamma_ratio, pow_real, zeta_logderiv_unchecked};

const ABSCISSA: f64 = -0.5;

/// `-(1/2πi) ∫_{(-1/2)} ζ'/ζ(s) Γ(s)/Γ(s+w+1) N^s ds`.
///
/// The segment `|Im s| ≤ H` (with `H = cfg.contour_height`) is integrated
/// directly. Beyond it the line is bent onto the horizontal rays
/// `Im s = ±H` running left, where `N^s` decays exponentially; the rays
/// stop once `N^{Re s}` is below `1e-17`.
pub fn t_contour_oracle(w: Complex64, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    check_n(n)?;
    cfg.validate()?;
    if !(w.re > 0.0) {
        return Err(Error::UnsupportedDomain {
            at: w,
            reason: "the line integral for T_N converges only for Re w > 0",
        });
    }
    let nf = n as f64;
    let h = cfg.contour_height;
    let opts = cfg.quad_options();
    let f = |s: Complex64| -> Result<Complex64> {
        Ok(zeta_logderiv_unchecked(s) * gamma_ratio(s, s + w + 1.0)? * pow_real(nf, s))
    };

    let vertical = integrate(|t| f(c(ABSCISSA, t)), -h, h, &opts)?.value * c(0.0, 1.0);
    let reach = 40.0 / nf.ln() + 10.0;
    let up = integrate(|x| f(c(ABSCISSA - x, h)), 0.0, reach, &opts)?.value;
    let down = integrate(|x| f(c(ABSCISSA - x, -h)), 0.0, reach, &opts)?.value;
    let line = vertical - up + down;
    Ok(-line / c(0.0, 2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuation::t_closed;

    #[test]
    fn real_for_real_w() {
        let v = t_contour_oracle(c(3.0, 0.0), 4, &QuadratureConfig::default()).unwrap();
        assert!(v.im.abs() < 1e-10, "{v}");
    }

    #[test]
    fn matches_closed_form() {
        let cfg = QuadratureConfig::default();
        for (w, n, tol) in [
            (c(2.0, 0.0), 50, 1e-7),
            (c(1.0, 1.0), 10, 1e-7),
            (c(1.5, 0.0), 10, 1e-7),
            (c(0.5, 2.0), 50, 1e-6),
        ] {
            let a = t_contour_oracle(w, n, &cfg).unwrap();
            let b = t_closed(w, n, &cfg).unwrap().total;
            assert!(
                (a - b).norm() < tol * (1.0 + b.norm()),
                "w={w} N={n}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn rejects_left_half_plane() {
        let r = t_contour_oracle(c(-0.5, 0.0), 10, &QuadratureConfig::default());
        assert!(matches!(r, Err(Error::UnsupportedDomain { .. })));
    }
}

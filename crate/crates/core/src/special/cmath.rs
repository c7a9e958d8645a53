//! Small complex helpers that `num_complex` does not provide in a
//! cancellation-free form.

use num_complex::Complex64;

pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn cexpm1(z: Complex64) -> Complex64 {
    if z.re.abs() > 0.5 || z.im.abs() > 0.5 {
        return z.exp() - 1.0;
    }
    let (x, y) = (z.re, z.im);
    let em1 = x.exp_m1();
    let half_sin = (0.5 * y).sin();
    // e^x cos y - 1 = expm1(x) cos y - 2 sin²(y/2)
    let re = em1 * y.cos() - 2.0 * half_sin * half_sin;
    let im = x.exp() * y.sin();
    c(re, im)
}

/// `base^w` for a positive real base.
#[inline]
pub fn pow_real(base: f64, w: Complex64) -> Complex64 {
    (w * base.ln()).exp()
}

/// `cot z`, stable for large `|Im z|`.
pub fn ccot(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if y.abs() > 300.0 {
        return c(0.0, -y.signum());
    }
    let sx = x.sin();
    let shy = y.sinh();
    let den = 2.0 * (shy * shy + sx * sx);
    c((2.0 * x).sin() / den, -(2.0 * y).sinh() / den)
}

/// `tan z`, stable for large `|Im z|`.
pub fn ctan(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if y.abs() > 300.0 {
        return c(0.0, y.signum());
    }
    let cx = x.cos();
    let shy = y.sinh();
    let den = 2.0 * (cx * cx + shy * shy);
    c((2.0 * x).sin() / den, (2.0 * y).sinh() / den)
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// True when `z` is real and equal to 0, -1, -2, …
pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_small_and_large() {
        let z = c(1e-9, -2e-9);
        let e = cexpm1(z);
        assert!((e - z).norm() < 1e-17);
        let z = c(0.3, 0.2);
        assert!((cexpm1(z) - (z.exp() - 1.0)).norm() < 1e-15);
        let z = c(2.0, -3.0);
        assert!((cexpm1(z) - (z.exp() - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn cot_tan_agree_with_definitions() {
        for z in [c(0.3, 0.4), c(-1.2, 2.0), c(2.5, -0.7)] {
            let cot = z.cos() / z.sin();
            let tan = z.sin() / z.cos();
            assert!((ccot(z) - cot).norm() < 1e-13 * cot.norm().max(1.0));
            assert!((ctan(z) - tan).norm() < 1e-13 * tan.norm().max(1.0));
        }
        assert!((ccot(c(0.1, 400.0)) - c(0.0, -1.0)).norm() < 1e-15);
    }
}

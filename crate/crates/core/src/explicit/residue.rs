//! Residue series `Σ_Γ`, `Σ_Z`, `Σ_T` over the trivial zeros.

use num_complex::Complex64;
use rayon::prelude::*;

use super::laurent::{laurent_data, neg_logderiv, Parity};
use super::{check_k, real_part};
use crate::arith::LambdaTable;
use crate::continuation::{
    cauchy_derivative, check_lambda, check_n, t_closed, z_continued, z_from_t, QuadratureConfig,
};
use crate::error::{invalid, Result};
use crate::quad::{circle_coefficients_multi, CircleOptions};
use crate::special::{c, gamma, pow_real, recip_gamma, recip_gamma_deriv};
use crate::sum::pairwise_sum_real;

const DEFAULT_RADIUS: f64 = 0.25;

fn factorial(nu: u32) -> f64 {
    (1..=nu).map(f64::from).product()
}

/// `-Res_{w=-ν} ζ'/ζ(w)Γ(w)f_i(w)` for each component, scaled by `N^ν ν!`
/// inside the integrand so that tiny residues still converge relatively.
fn residues_scaled<F>(nu: u32, radius: f64, f: F, cfg: &QuadratureConfig) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Vec<Complex64>> + Sync,
{
    if nu == 0 {
        return Err(invalid("nu must be at least 1"));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(invalid(format!(
            "residue radius must lie in (0, 1), got {radius}"
        )));
    }
    let fact = factorial(nu);
    let centre = c(-(nu as f64), 0.0);
    let opts = CircleOptions {
        scale_by_samples: true,
        ..cfg.circle_options()
    };
    let kernel = |w: Complex64| -> Result<Vec<Complex64>> {
        let base = neg_logderiv(w) * gamma(w)? * fact;
        Ok(f(w)?.into_iter().map(|v| v * base).collect())
    };
    let co = circle_coefficients_multi(kernel, centre, radius, &[-1], &opts)?;
    Ok(co.into_iter().map(|row| row[0] / fact).collect())
}

/// `-Res_{w=-ν} [ζ'/ζ(w) Γ(w) f(w)]` by the trapezoidal rule on
/// `|w+ν| = 1/4`, for `f` analytic in that disc.
pub fn residue_numeric<F>(nu: u32, f: F, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    Ok(residues_scaled(nu, DEFAULT_RADIUS, |w| Ok(vec![f(w)?]), cfg)?[0])
}

/// The four residue series, in the order used throughout this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaKind {
    /// `Σ_Γ(N,k)`, bracket function `N^w/Γ(w+k+1)`.
    GammaK,
    /// `Σ_Γ(N,k+1)`, bracket function `N^w/Γ(w+k+2)`.
    GammaK1,
    /// `Σ_Z(N,k)`, bracket function `Z_N(w+k)N^w`.
    Z,
    /// `Σ_T(N,k)`, bracket function `T_N(w+k)N^w`.
    T,
}

impl SigmaKind {
    pub const ALL: [SigmaKind; 4] = [
        SigmaKind::GammaK,
        SigmaKind::GammaK1,
        SigmaKind::Z,
        SigmaKind::T,
    ];

    /// Expected size of the tail beyond `ν = m`, up to a constant:
    /// `N^{-(m+1)} log(Nm)/m^k` for `Σ_Γ`, `N^{-k+δ} log²(Nm)/m^{k-δ}` for
    /// `Σ_Z` and `(N/2)^{-(m+1)} log²(Nm)/m^{k-δ}` for `Σ_T`, `δ = min(k/2, 1/4)`.
    pub fn tail_shape(self, n: usize, k: f64, m: u32) -> f64 {
        let nf = n as f64;
        let mf = m as f64;
        let l = (nf * mf).ln();
        let delta = (0.5 * k).min(0.25);
        match self {
            SigmaKind::GammaK => nf.powf(-(mf + 1.0)) * l / mf.powf(k),
            SigmaKind::GammaK1 => nf.powf(-(mf + 1.0)) * l / mf.powf(k + 1.0),
            SigmaKind::Z => nf.powf(delta - k) * l * l / mf.powf(k - delta),
            SigmaKind::T => (0.5 * nf).powf(-(mf + 1.0)) * l * l / mf.powf(k - delta),
        }
    }
}

/// The `ν`-th residue of each series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaTerm {
    pub nu: u32,
    /// Indexed like [`SigmaKind::ALL`].
    pub values: [f64; 4],
}

/// A tail estimate `C·shape(M)` with `C` fitted on the computed residues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub constant: f64,
    pub estimate: f64,
    /// `|Σ_{M<ν≤M_cal}|` actually observed.
    pub observed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaSums {
    pub n: usize,
    pub k: f64,
    pub m: u32,
    pub gamma_k: f64,
    pub gamma_kplus1: f64,
    pub z: f64,
    pub t: f64,
    /// Indexed like [`SigmaKind::ALL`].
    pub tails: [TailFit; 4],
    /// Residues for `ν = 1..=M_cal`, `M_cal = 2M`; the extra ones only
    /// calibrate the tails.
    pub terms: Vec<SigmaTerm>,
}

impl SigmaSums {
    /// Partial sum of one series up to `ν = m` (`m ≤ 2M`).
    pub fn partial(&self, kind: SigmaKind, m: u32) -> f64 {
        let idx = SigmaKind::ALL
            .iter()
            .position(|&s| s == kind)
            .expect("known kind");
        let v: Vec<f64> = self
            .terms
            .iter()
            .filter(|t| t.nu <= m)
            .map(|t| t.values[idx])
            .collect();
        pairwise_sum_real(&v)
    }
}

fn bracket_values(
    w: Complex64,
    n: usize,
    k: f64,
    nu: u32,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<Vec<Complex64>> {
    let u = w + k;
    let t = t_closed(u, n, cfg)?.total;
    let z = z_from_t(u, n, lambda, t);
    let p = pow_real(n as f64, w + nu as f64);
    Ok(vec![
        p * recip_gamma(u + 1.0),
        p * recip_gamma(u + 2.0),
        p * z,
        p * t,
    ])
}

fn residue_terms(
    n: usize,
    k: f64,
    nu: u32,
    radius: f64,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<SigmaTerm> {
    let co = residues_scaled(
        nu,
        radius,
        |w| bracket_values(w, n, k, nu, lambda, cfg),
        cfg,
    )?;
    let scale = (n as f64).powi(-(nu as i32));
    let mut values = [0.0; 4];
    for (slot, v) in values.iter_mut().zip(co) {
        *slot = real_part(v * scale, "residue")?;
    }
    Ok(SigmaTerm { nu, values })
}

/// Residue series truncated at `ν = M`, each residue by contour integration.
pub fn sigma_sums(
    n: usize,
    k: f64,
    m: u32,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<SigmaSums> {
    sigma_sums_with(n, k, m, DEFAULT_RADIUS, lambda, cfg)
}

pub(crate) fn sigma_sums_with(
    n: usize,
    k: f64,
    m: u32,
    radius: f64,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<SigmaSums> {
    check_n(n)?;
    check_k(k)?;
    check_lambda(n, lambda)?;
    if m < 2 {
        return Err(invalid(format!("M must be at least 2, got {m}")));
    }
    let m_cal = 2 * m;
    let terms: Vec<SigmaTerm> = (1..=m_cal)
        .into_par_iter()
        .map(|nu| residue_terms(n, k, nu, radius, lambda, cfg))
        .collect::<Result<_>>()?;

    let column = |idx: usize, lo: u32, hi: u32| -> f64 {
        let v: Vec<f64> = terms
            .iter()
            .filter(|t| t.nu > lo && t.nu <= hi)
            .map(|t| t.values[idx])
            .collect();
        pairwise_sum_real(&v)
    };
    let mut tails = [TailFit {
        constant: 0.0,
        estimate: 0.0,
        observed: 0.0,
    }; 4];
    for (idx, kind) in SigmaKind::ALL.iter().enumerate() {
        let constant = (2..m)
            .map(|j| column(idx, j, m_cal).abs() / kind.tail_shape(n, k, j))
            .fold(0.0, f64::max);
        tails[idx] = TailFit {
            constant,
            estimate: constant * kind.tail_shape(n, k, m),
            observed: column(idx, m, m_cal).abs(),
        };
    }
    Ok(SigmaSums {
        n,
        k,
        m,
        gamma_k: column(0, 0, m),
        gamma_kplus1: column(1, 0, m),
        z: column(2, 0, m),
        t: column(3, 0, m),
        tails,
        terms,
    })
}

/// One residue by contour next to the Laurent-coefficient closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaCrossCheck {
    pub nu: u32,
    pub parity: Parity,
    /// Indexed like [`SigmaKind::ALL`].
    pub residue: [f64; 4],
    /// `(r F'(-ν) + (r b_ν + a_ν) F(-ν))/ν!` with `r` measured (even `ν`),
    /// `ζ'/ζ(-ν) F(-ν)/ν!` (odd `ν`).
    pub closed: [f64; 4],
    /// The same with `r = +1` imposed.
    pub closed_unit_r: [f64; 4],
    /// Measured coefficient of `1/(w+ν)` in `-ζ'/ζ` (even `ν`).
    pub r: Option<f64>,
}

fn value_and_derivative<F>(f: F, x: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let v = real_part(f(c(x, 0.0))?, "bracket value")?;
    let d = real_part(
        cauchy_derivative(&f, c(x, 0.0), DEFAULT_RADIUS, 1, cfg)?,
        "bracket derivative",
    )?;
    Ok((v, d))
}

/// Residues `ν = 1..=nu_max` both ways, for `Σ_Γ(N,k)`, `Σ_Γ(N,k+1)`,
/// `Σ_Z(N,k)` and `Σ_T(N,k)`.
pub fn sigma_cross_check(
    n: usize,
    k: f64,
    nu_max: u32,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<Vec<SigmaCrossCheck>> {
    check_n(n)?;
    check_k(k)?;
    check_lambda(n, lambda)?;
    let nf = n as f64;
    let ln_n = nf.ln();
    (1..=nu_max)
        .into_par_iter()
        .map(|nu| {
            let residue = residue_terms(n, k, nu, DEFAULT_RADIUS, lambda, cfg)?.values;
            let ld = laurent_data(nu, cfg)?;
            let x = k - nu as f64;
            let scale = nf.powi(-(nu as i32)) / factorial(nu);

            let rg = |z: f64| recip_gamma(c(z, 0.0)).re;
            let rgd = |z: f64| recip_gamma_deriv(c(z, 0.0)).re;
            let (z_val, z_der) = value_and_derivative(|u| z_continued(u, n, lambda, cfg), x, cfg)?;
            let (t_val, t_der) = value_and_derivative(|u| Ok(t_closed(u, n, cfg)?.total), x, cfg)?;
            // F(-ν)/N^{-ν} and F'(-ν)/N^{-ν} for each bracket function.
            let fv = [rg(x + 1.0), rg(x + 2.0), z_val, t_val];
            let fd = [
                ln_n * fv[0] + rgd(x + 1.0),
                ln_n * fv[1] + rgd(x + 2.0),
                ln_n * z_val + z_der,
                ln_n * t_val + t_der,
            ];
            let mut closed = [0.0; 4];
            let mut closed_unit_r = [0.0; 4];
            match ld.parity {
                Parity::Odd => {
                    let zl = -ld.zeta_logderiv_value.expect("odd data");
                    for i in 0..4 {
                        closed[i] = zl * fv[i] * scale;
                        closed_unit_r[i] = closed[i];
                    }
                }
                Parity::Even => {
                    let r = ld.residue_of_zeta_term.expect("even data");
                    let a = ld.a_nu.expect("even data");
                    let b = ld.b_nu.expect("even data");
                    for i in 0..4 {
                        closed[i] = (r * fd[i] + (r * b + a) * fv[i]) * scale;
                        closed_unit_r[i] = (fd[i] + (b + a) * fv[i]) * scale;
                    }
                }
            }
            Ok(SigmaCrossCheck {
                nu,
                parity: ld.parity,
                residue,
                closed,
                closed_unit_r,
                r: ld.residue_of_zeta_term,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::special::zeta_logderiv;

    #[test]
    fn simple_gamma_pole() {
        let cfg = QuadratureConfig::default();
        let (n, k) = (10.0_f64, 1.0);
        let r =
            residue_numeric(1, |w| Ok(pow_real(n, w) * recip_gamma(w + k + 1.0)), &cfg).unwrap();
        let zl = zeta_logderiv(c(-1.0, 0.0)).unwrap().re;
        let want = zl / n * recip_gamma(c(k, 0.0)).re;
        assert!(
            (r.re - want).abs() < 1e-8 * want.abs().max(1e-300),
            "{r} vs {want}"
        );
    }

    #[test]
    fn constant_bracket_follows_laurent_algebra() {
        let cfg = QuadratureConfig::default();
        let r = residue_numeric(2, |_| Ok(c(1.0, 0.0)), &cfg).unwrap();
        let d = laurent_data(2, &cfg).unwrap();
        let want = (d.residue_of_zeta_term.unwrap() * d.b_nu.unwrap() + d.a_nu.unwrap()) / 2.0;
        assert!((r.re - want).abs() < 1e-7, "{r} vs {want}");
    }

    #[test]
    fn double_zero_kills_double_pole() {
        let cfg = QuadratureConfig::default();
        for nu in 1..=4u32 {
            let p = c(-(nu as f64), 0.0);
            let r = residue_numeric(nu, |w| Ok((w - p) * (w - p)), &cfg).unwrap();
            assert!(r.norm() < 1e-9, "nu={nu}: {r}");
        }
    }

    #[test]
    fn closed_forms_agree() {
        let lam = sieve_lambda(200).unwrap();
        let cfg = QuadratureConfig::default();
        for x in sigma_cross_check(10, 0.75, 4, &lam, &cfg).unwrap() {
            for i in 0..4 {
                let (a, b) = (x.residue[i], x.closed[i]);
                assert!(
                    (a - b).abs() <= 1e-6 * a.abs().max(b.abs()) + 1e-300,
                    "nu={} i={i}: {a} vs {b}",
                    x.nu
                );
            }
        }
    }

    #[test]
    fn sums_are_partial_sums() {
        let lam = sieve_lambda(200).unwrap();
        let s = sigma_sums(100, 1.0, 2, &lam, &QuadratureConfig::default()).unwrap();
        assert_eq!(s.terms.len(), 4);
        assert_eq!(s.gamma_k, s.partial(SigmaKind::GammaK, 2));
        assert!(s.tails.iter().all(|t| t.estimate.is_finite()));
    }
}

//! Term-by-term evaluation of the explicit formula, and its two shortened
//! forms.

use num_complex::Complex64;

use super::residue::sigma_sums_with;
use super::zero_sums::{a_k_sum, b_k_sum, zero_sum_tail, zero_terms};
use super::{check_k, real_part, TruncationPolicy};
use crate::arith::{gk_direct, representation_table, LambdaTable};
use crate::continuation::{check_lambda, check_n, t_closed, z_continued, QuadratureConfig};
use crate::error::{invalid, Result};
use crate::special::{c, constants, recip_gamma_real};
use crate::sum::pairwise_sum;
use crate::zeros::ZeroSet;

/// The thirteen terms whose sum is `G_k(N)`, with `c0 = ζ'/ζ(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaBreakdown {
    pub n: usize,
    pub k: f64,
    pub zero_height_t: f64,
    pub residue_cutoff_m: u32,
    /// `N²/Γ(k+3)`
    pub term01_main: f64,
    /// `-2N·Z_N(k+1)`
    pub term02_a: f64,
    /// `Σ_ρ Γ(ρ)Z_N(ρ+k)N^ρ`
    pub term03_b: f64,
    /// `-2c0·N/Γ(k+2)`
    pub term04: f64,
    /// `2c0·Z_N(k)`
    pub term05: f64,
    /// `N·T_N(k+1)`
    pub term06: f64,
    /// `c0²/Γ(k+1)`
    pub term07: f64,
    /// `-Σ_ρ Γ(ρ)T_N(ρ+k)N^ρ`
    pub term08: f64,
    /// `-c0·T_N(k)`
    pub term09: f64,
    /// `N·Σ_Γ(N,k+1)`
    pub term10: f64,
    /// `-Σ_Z(N,k)`
    pub term11: f64,
    /// `-c0·Σ_Γ(N,k)`
    pub term12: f64,
    /// `Σ_T(N,k)`
    pub term13: f64,
    pub total: f64,
    pub est_zero_tail: f64,
    pub est_residue_tail: f64,
    pub zero_pairs: usize,
    /// Fitted tail constants for `Σ_Γ(N,k)`, `Σ_Γ(N,k+1)`, `Σ_Z`, `Σ_T`.
    pub residue_tail_constants: [f64; 4],
}

impl FormulaBreakdown {
    pub const TERM_NAMES: [&'static str; 13] = [
        "term01", "term02", "term03", "term04", "term05", "term06", "term07", "term08", "term09",
        "term10", "term11", "term12", "term13",
    ];

    pub fn terms(&self) -> [f64; 13] {
        [
            self.term01_main,
            self.term02_a,
            self.term03_b,
            self.term04,
            self.term05,
            self.term06,
            self.term07,
            self.term08,
            self.term09,
            self.term10,
            self.term11,
            self.term12,
            self.term13,
        ]
    }

    /// The terms added left to right.
    pub fn recombine(&self) -> f64 {
        self.terms().iter().sum()
    }
}

fn check_inputs(n: usize, k: f64, lambda: &LambdaTable) -> Result<()> {
    check_n(n)?;
    check_k(k)?;
    check_lambda(n, lambda)
}

/// `Z_N(x)` and `T_N(x)` at a real point.
fn z_and_t(x: f64, n: usize, lambda: &LambdaTable, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let z = real_part(z_continued(c(x, 0.0), n, lambda, cfg)?, "Z_N")?;
    let t = real_part(t_closed(c(x, 0.0), n, cfg)?.total, "T_N")?;
    Ok((z, t))
}

pub fn theorem_eval(
    n: usize,
    k: f64,
    zs: &ZeroSet,
    lambda: &LambdaTable,
    policy: &TruncationPolicy,
) -> Result<FormulaBreakdown> {
    check_inputs(n, k, lambda)?;
    policy.validate()?;
    let cfg = &policy.quad;
    let t_height = policy.zero_height_t;
    let ords = zs.ordinates_up_to(t_height)?;

    let ((zero, values), sigma) = rayon::join(
        || {
            rayon::join(
                || zero_terms(n, k, ords, lambda, cfg),
                || -> Result<_> {
                    Ok((
                        z_and_t(k + 1.0, n, lambda, cfg)?,
                        z_and_t(k, n, lambda, cfg)?,
                    ))
                },
            )
        },
        || {
            sigma_sums_with(
                n,
                k,
                policy.residue_cutoff_m,
                policy.delta_exclusion,
                lambda,
                cfg,
            )
        },
    );
    let zero = zero?;
    let ((z_k1, t_k1), (z_k, t_k)) = values?;
    let sigma = sigma?;

    let nf = n as f64;
    let c0 = constants().zeta_logderiv_at_zero;
    let sum_z: Complex64 = pairwise_sum(&zero.z_terms);
    let sum_t: Complex64 = pairwise_sum(&zero.t_terms);

    let mut out = FormulaBreakdown {
        n,
        k,
        zero_height_t: t_height,
        residue_cutoff_m: policy.residue_cutoff_m,
        term01_main: nf * nf * recip_gamma_real(k + 3.0),
        term02_a: -2.0 * nf * z_k1,
        term03_b: real_part(sum_z, "term03")?,
        term04: -2.0 * c0 * nf * recip_gamma_real(k + 2.0),
        term05: 2.0 * c0 * z_k,
        term06: nf * t_k1,
        term07: c0 * c0 * recip_gamma_real(k + 1.0),
        term08: -real_part(sum_t, "term08")?,
        term09: -c0 * t_k,
        term10: nf * sigma.gamma_kplus1,
        term11: -sigma.z,
        term12: -c0 * sigma.gamma_k,
        term13: sigma.t,
        total: 0.0,
        est_zero_tail: zero_sum_tail(ords, &zero.z_terms, n, k, t_height)
            + zero_sum_tail(ords, &zero.t_terms, n, k, t_height),
        est_residue_tail: nf * sigma.tails[1].estimate
            + c0.abs() * sigma.tails[0].estimate
            + sigma.tails[2].estimate
            + sigma.tails[3].estimate,
        zero_pairs: ords.len(),
        residue_tail_constants: [
            sigma.tails[0].constant,
            sigma.tails[1].constant,
            sigma.tails[2].constant,
            sigma.tails[3].constant,
        ],
    };
    out.total = out.recombine();
    Ok(out)
}

/// A shortened formula next to the direct value of `G_k(N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedFormula {
    pub main: f64,
    pub direct: f64,
    /// `direct - main`.
    pub discrepancy: f64,
    /// Heuristic size of the zero-sum truncation in `main`.
    pub zero_tail: f64,
}

fn check_half(k: f64) -> Result<()> {
    if !(k > 0.5) {
        return Err(invalid(format!("k must exceed 1/2 here, got {k}")));
    }
    Ok(())
}

fn direct(n: usize, k: f64, lambda: &LambdaTable) -> Result<f64> {
    gk_direct(&representation_table(lambda)?, n, k)
}

/// `N²/Γ(k+3) - 2A_k(N) + B_k(N) - 2c0·N/Γ(k+2)` against `G_k(N)`.
pub fn truncated_15(
    n: usize,
    k: f64,
    zs: &ZeroSet,
    t: f64,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<TruncatedFormula> {
    check_inputs(n, k, lambda)?;
    check_half(k)?;
    let nf = n as f64;
    let c0 = constants().zeta_logderiv_at_zero;
    let a = a_k_sum(n, k, zs, t)?;
    let b = b_k_sum(n, k, zs, t, lambda, cfg)?;
    let main = nf * nf * recip_gamma_real(k + 3.0) - 2.0 * a.value + b.value
        - 2.0 * c0 * nf * recip_gamma_real(k + 2.0);
    let g = direct(n, k, lambda)?;
    Ok(TruncatedFormula {
        main,
        direct: g,
        discrepancy: g - main,
        zero_tail: 2.0 * a.tail_estimate + b.tail_estimate,
    })
}

/// `(c0² + 2ζ'/ζ(-1))/Γ(k+1)`.
pub fn constant_c(k: f64) -> f64 {
    let k0 = constants();
    let c0 = k0.zeta_logderiv_at_zero;
    (c0 * c0 + 2.0 * k0.zeta_logderiv_at_minus_one) * recip_gamma_real(k + 1.0)
}

/// The shortened formula with `2c0·Z_N(k) + C` added.
pub fn truncated_c(
    n: usize,
    k: f64,
    zs: &ZeroSet,
    t: f64,
    lambda: &LambdaTable,
    cfg: &QuadratureConfig,
) -> Result<TruncatedFormula> {
    let base = truncated_15(n, k, zs, t, lambda, cfg)?;
    let c0 = constants().zeta_logderiv_at_zero;
    let z_k = real_part(z_continued(c(k, 0.0), n, lambda, cfg)?, "Z_N")?;
    let main = base.main + 2.0 * c0 * z_k + constant_c(k);
    Ok(TruncatedFormula {
        main,
        direct: base.direct,
        discrepancy: base.direct - main,
        zero_tail: base.zero_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_lambda;
    use crate::special::LOG_TWO_PI;
    use crate::zeros::parse_zeros;

    fn fixture() -> ZeroSet {
        parse_zeros(include_str!("../../../../data/zeros_1000.txt"), "fixture").unwrap()
    }

    #[test]
    fn constant_c_at_one() {
        let zl = constants().zeta_logderiv_at_minus_one;
        assert!((constant_c(1.0) - (LOG_TWO_PI * LOG_TWO_PI + 2.0 * zl)).abs() < 1e-9);
    }

    #[test]
    fn formula_at_n100_k1() {
        let zs = fixture();
        let lam = sieve_lambda(200).unwrap();
        let policy = TruncationPolicy {
            residue_cutoff_m: 6,
            ..TruncationPolicy::default()
        };
        let b = theorem_eval(100, 1.0, &zs, &lam, &policy).unwrap();
        assert!((b.term01_main - 1e4 / 6.0).abs() < 1e-9);
        assert_eq!(b.total, b.recombine());
        let g = direct(100, 1.0, &lam).unwrap();
        let err = (b.total - g).abs();
        assert!(
            err <= b.est_zero_tail + b.est_residue_tail + 1e-4 * g,
            "err {err} {b:?}"
        );
    }

    #[test]
    fn rejects_bad_input() {
        let zs = fixture();
        let lam = sieve_lambda(200).unwrap();
        let p = TruncationPolicy::default();
        assert!(theorem_eval(3, 1.0, &zs, &lam, &p).is_err());
        assert!(theorem_eval(50, 0.0, &zs, &lam, &p).is_err());
        assert!(theorem_eval(500, 1.0, &zs, &lam, &p).is_err());
        let bad = TruncationPolicy {
            residue_cutoff_m: 1,
            ..p
        };
        assert!(theorem_eval(50, 1.0, &zs, &lam, &bad).is_err());
        assert!(truncated_15(50, 0.5, &zs, 100.0, &lam, &QuadratureConfig::default()).is_err());
    }
}

use goldbach_core::arith::{gk_direct, representation_table, sieve_lambda};
use goldbach_core::continuation::QuadratureConfig;
use goldbach_core::explicit::{
    b_k_double_sum, b_k_sum, laurent_data, sigma_cross_check, sigma_sums, theorem_eval,
    truncated_15, truncated_c, SigmaKind, TruncationPolicy,
};
use goldbach_core::special::{digamma, functional_g, zeta_logderiv_at_integer};
use goldbach_core::zeros::{parse_zeros, ZeroSet};
use goldbach_core::Complex64;

fn fixture() -> ZeroSet {
    parse_zeros(include_str!("../../../data/zeros_1000.txt"), "fixture").unwrap()
}

#[test]
fn laurent_data_up_to_twenty() {
    let cfg = QuadratureConfig::default();
    for nu in 1..=20u32 {
        let d = laurent_data(nu, &cfg).unwrap();
        if nu % 2 == 0 {
            let psi = digamma(Complex64::new(nu as f64 + 1.0, 0.0)).unwrap().re;
            assert!((d.b_nu.unwrap() - psi).abs() <= 1e-9);
            assert!((d.b_nu_series.unwrap() - psi).abs() <= 1e-9);
            assert!((d.residue_of_zeta_term.unwrap().abs() - 1.0).abs() <= 1e-8);
            assert!((d.a_nu.unwrap() - d.a_nu_closed.unwrap()).abs() <= 1e-9);
        } else {
            let s = Complex64::new(-(nu as f64), 0.0);
            let oracle = functional_g(s).unwrap().re - zeta_logderiv_at_integer(nu as usize + 1);
            assert!(
                (d.zeta_logderiv_value.unwrap() + oracle).abs() <= 1e-9 * oracle.abs().max(1.0)
            );
        }
    }
}

#[test]
fn a_nu_grows_like_log() {
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for nu in 1..=40u32 {
        let d = laurent_data(nu, &cfg).unwrap();
        for n in [4usize, 100] {
            worst = worst.max(d.a_cap(n).abs() / (nu as f64 * n as f64).ln());
        }
    }
    assert!(worst < 3.0, "max |A|/log = {worst}");
}

#[test]
fn residues_match_closed_forms() {
    let lam = sieve_lambda(200).unwrap();
    let cfg = QuadratureConfig::default();
    for x in sigma_cross_check(100, 1.5, 8, &lam, &cfg).unwrap() {
        for i in 0..4 {
            let (a, b) = (x.residue[i], x.closed[i]);
            assert!(
                (a - b).abs() <= 1e-6 * a.abs().max(b.abs()) + 1e-300,
                "nu={} {i}: {a} vs {b}",
                x.nu
            );
        }
        if let Some(r) = x.r {
            assert!((r + 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn two_term_gamma_sum() {
    let lam = sieve_lambda(200).unwrap();
    let cfg = QuadratureConfig::default();
    let s = sigma_sums(100, 1.0, 2, &lam, &cfg).unwrap();
    let closed: f64 = sigma_cross_check(100, 1.0, 2, &lam, &cfg)
        .unwrap()
        .iter()
        .map(|x| x.closed[0])
        .sum();
    assert!((s.gamma_k - closed).abs() <= 1e-7 * closed.abs());
}

#[test]
fn gamma_tail_shape() {
    let lam = sieve_lambda(200).unwrap();
    let s = sigma_sums(100, 1.0, 8, &lam, &QuadratureConfig::default()).unwrap();
    let gap = (s.partial(SigmaKind::GammaK, 4) - s.partial(SigmaKind::GammaK, 8)).abs();
    assert!(gap <= s.tails[0].constant * SigmaKind::GammaK.tail_shape(100, 1.0, 4));
}

#[test]
fn double_sum_oracle() {
    let zs = fixture();
    let lam = sieve_lambda(100).unwrap();
    let cfg = QuadratureConfig::default();
    let single = b_k_sum(50, 1.5, &zs, 200.0, &lam, &cfg).unwrap();
    let double = b_k_double_sum(50, 1.5, &zs, 200.0).unwrap();
    let gap = (single.value - double.value).abs();
    assert!(
        gap <= double.tail_estimate,
        "gap {gap} vs {}",
        double.tail_estimate
    );
}

#[test]
fn term03_is_b_k() {
    let zs = fixture();
    let lam = sieve_lambda(100).unwrap();
    let policy = TruncationPolicy {
        zero_height_t: 300.0,
        residue_cutoff_m: 4,
        ..TruncationPolicy::default()
    };
    let f = theorem_eval(60, 0.75, &zs, &lam, &policy).unwrap();
    let b = b_k_sum(60, 0.75, &zs, 300.0, &lam, &policy.quad).unwrap();
    assert!((f.term03_b - b.value).abs() <= 1e-10 * b.value.abs().max(1.0));
}

#[test]
fn shortened_formulas() {
    let zs = fixture();
    let lam = sieve_lambda(200).unwrap();
    let cfg = QuadratureConfig::default();
    let a = truncated_15(100, 1.5, &zs, 1000.0, &lam, &cfg).unwrap();
    assert!(a.discrepancy.abs() <= 50.0);
    let g = gk_direct(&representation_table(&lam).unwrap(), 100, 1.5).unwrap();
    assert_eq!(a.direct, g);
    let c = truncated_c(100, 1.5, &zs, 1000.0, &lam, &cfg).unwrap();
    assert!(c.discrepancy.abs() <= a.discrepancy.abs());
}

mod common;

use common::rng;
use plexnet::degree_stats::{fit_power_law_ls_points, fit_power_law_mle, ln_hurwitz_zeta};
use plexnet_oracle::DiscretePowerLaw;

fn samples(gamma: f64, count: usize, seed: u64) -> Vec<usize> {
    let law = DiscretePowerLaw::new(gamma, 1);
    let mut rng = rng(seed);
    (0..count).map(|_| law.sample(&mut rng)).collect()
}

#[test]
fn mle_recovers_exponent_from_large_samples() {
    for gamma in [2.5, 3.0] {
        let fit = fit_power_law_mle(&samples(gamma, 100_000, 2024), 1).unwrap();
        assert!(
            (fit.gamma - gamma).abs() <= 0.05,
            "gamma {gamma}: {}",
            fit.gamma
        );
        assert_eq!(fit.support, 100_000);
    }
}

#[test]
fn mle_is_stable_across_seeds() {
    let law = DiscretePowerLaw::new(2.5, 1);
    for seed in 0..20 {
        let mut rng = rng(1000 + seed);
        let data: Vec<usize> = (0..20_000).map(|_| law.sample(&mut rng)).collect();
        let fit = fit_power_law_mle(&data, 1).unwrap();
        // About eight standard errors at this sample size.
        assert!((fit.gamma - 2.5).abs() <= 0.1, "seed {seed}: {}", fit.gamma);
    }
}

#[test]
fn mle_with_larger_minimum_degree() {
    let law = DiscretePowerLaw::new(3.0, 4);
    let mut rng = rng(77);
    let data: Vec<usize> = (0..50_000).map(|_| law.sample(&mut rng)).collect();
    let fit = fit_power_law_mle(&data, 4).unwrap();
    assert!((fit.gamma - 3.0).abs() <= 0.05, "{}", fit.gamma);
}

#[test]
fn least_squares_is_exact_on_noiseless_tables() {
    for gamma in [1.5, 2.0, 2.5, 3.0, 3.7] {
        let points: Vec<(f64, f64)> = (1..=60)
            .map(|k| (k as f64, 0.3 * (k as f64).powf(-gamma)))
            .collect();
        let fit = fit_power_law_ls_points(&points, 1).unwrap();
        assert!((fit.gamma - gamma).abs() <= 1e-9, "{gamma}: {}", fit.gamma);
        assert!((fit.goodness - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn hurwitz_zeta_against_direct_sums() {
    for (s, q) in [(2.5, 1.0), (3.0, 2.0), (1.7, 5.0), (2.2, 13.0)] {
        let direct: f64 = (0..2_000_000).map(|k| (k as f64 + q).powf(-s)).sum::<f64>()
            + (2_000_000.0 + q - 0.5f64).powf(1.0 - s) / (s - 1.0);
        let rel = (ln_hurwitz_zeta(s, q).exp() - direct).abs() / direct;
        assert!(rel < 1e-9, "s={s} q={q}: {rel}");
    }
}

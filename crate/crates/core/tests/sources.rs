use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

use nonregular_ceo::quad::integrate;
use nonregular_ceo::stats::ks_distance;
use nonregular_ceo::SourceModel;

#[test]
fn uniform_sample_mean() {
    let n = 100_000;
    let xs = SourceModel::uniform().sample(&mut ChaCha8Rng::seed_from_u64(7), n);
    let mean = xs.iter().sum::<f64>() / n as f64;
    let sigma = (1.0 / 12.0_f64).sqrt() / (n as f64).sqrt();
    assert!((mean - 0.5).abs() < 3.0 * sigma);
}

#[test]
fn tgauss_samples_follow_cdf() {
    let s = SourceModel::truncated_gaussian(0.5, 0.2).unwrap();
    let xs = s.sample(&mut ChaCha8Rng::seed_from_u64(9), 100_000);
    assert!(xs.iter().all(|&x| (0.0..=1.0).contains(&x)));
    assert!(ks_distance(&xs, |x| s.cdf(x)) < 0.01);
}

#[test]
fn tgauss_cdf_matches_normal_ratio() {
    let (mu, sigma) = (0.3, 0.25);
    let s = SourceModel::truncated_gaussian(mu, sigma).unwrap();
    let n = Normal::new(mu, sigma).unwrap();
    let z = n.cdf(1.0) - n.cdf(0.0);
    for x in [0.05, 0.3, 0.6, 0.95] {
        assert!((s.cdf(x) - (n.cdf(x) - n.cdf(0.0)) / z).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn tgauss_density_is_normalized(mu in -0.5f64..1.5, sigma in 0.05f64..2.0) {
        let s = SourceModel::truncated_gaussian(mu, sigma).unwrap();
        let total = integrate(|x| s.pdf(x), 0.0, 1.0);
        prop_assert!((total - 1.0).abs() <= 1e-8);
        prop_assert!(s.normalization() > 0.0 && s.normalization().is_finite());
    }

    #[test]
    fn density_nonnegative_and_zero_outside(mu in -0.5f64..1.5, sigma in 0.05f64..2.0, x in -2.0f64..3.0) {
        let s = SourceModel::truncated_gaussian(mu, sigma).unwrap();
        let d = s.pdf(x);
        prop_assert!(d >= 0.0);
        if !(0.0..=1.0).contains(&x) {
            prop_assert_eq!(d, 0.0);
        }
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>()) {
        let s = SourceModel::uniform();
        let a = s.sample(&mut ChaCha8Rng::seed_from_u64(seed), 64);
        let b = s.sample(&mut ChaCha8Rng::seed_from_u64(seed), 64);
        prop_assert_eq!(a, b);
    }
}

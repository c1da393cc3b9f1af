use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonregular_ceo::quad::{integrate_left_singular, SINGULAR_SPLIT};
use nonregular_ceo::stats::ks_distance;
use nonregular_ceo::*;

#[test]
fn closed_form_cdf_matches_quadrature() {
    for alpha in [0.6, 0.75, 0.9] {
        let c = ClaytonChannel::new(alpha).unwrap();
        for i in 0..20 {
            let x = (i as f64 + 0.5) / 20.0;
            let lower = c.lower(x);
            for j in 0..20 {
                let t = (j as f64 + 0.5) / 20.0 * (1.0 - lower);
                let quad =
                    integrate_left_singular(|s| c.density_above_lower(s, x), t, SINGULAR_SPLIT);
                let closed = c.cdf(lower + t, x);
                assert!(
                    (quad - closed).abs() < 1e-8,
                    "α={alpha} x={x} t={t}: {quad} vs {closed}"
                );
            }
        }
    }
}

#[test]
fn densities_integrate_to_one() {
    for alpha in [0.6, 0.75, 0.9] {
        let c = ClaytonChannel::new(alpha).unwrap();
        for x in [0.2, 0.5, 0.9] {
            let total = integrate_left_singular(
                |t| c.density_above_lower(t, x),
                1.0 - c.lower(x),
                SINGULAR_SPLIT,
            );
            assert!((total - 1.0).abs() < 1e-6, "α={alpha} x={x}: {total}");
        }
    }
}

#[test]
fn density_stays_positive_up_to_the_upper_end() {
    for alpha in [0.6, 0.75, 0.9] {
        let c = ClaytonChannel::new(alpha).unwrap();
        for x in [0.1, 0.5, 0.9, 1.0] {
            let limit = (1.0 - alpha) * f64::powf(x, -alpha);
            assert!(c.density(1.0 - 1e-6, x) > 0.9 * limit);
            assert!((c.density(1.0, x) - limit).abs() < 1e-12 * limit);
        }
    }
}

#[test]
fn density_vanishes_exactly_off_support() {
    let c = ClaytonChannel::new(0.75).unwrap();
    for i in 1..40 {
        let x = i as f64 / 40.0;
        let (lo, hi) = obs_support(&c, x).unwrap();
        for k in 0..=50 {
            let y = k as f64 / 50.0 * 1.2 - 0.1;
            let d = obs_density(&c, y, x).unwrap();
            if y < lo || y > hi {
                assert_eq!(d, 0.0);
            } else {
                assert!(d > 0.0, "x={x} y={y}");
            }
        }
    }
}

#[test]
fn samples_follow_the_cdf() {
    let c = ClaytonChannel::new(0.75).unwrap();
    let x = 0.5;
    let draws = obs_sample(&c, x, 100_000, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let (lo, hi) = c.support(x);
    assert!(draws.iter().all(|&y| (lo..=hi).contains(&y)));
    assert!(ks_distance(&draws, |y| c.cdf(y, x)) < 0.01);
    let again = obs_sample(&c, x, 100_000, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(draws, again);
}

#[test]
fn window_support_example() {
    let w = UniformWindowChannel::new(0.1).unwrap();
    let (lo, hi) = obs_support(&w, 0.5).unwrap();
    assert!((lo - 0.4).abs() < 1e-15 && (hi - 0.6).abs() < 1e-15);
    assert_eq!(obs_density(&w, 0.55, 0.5).unwrap(), 5.0);
    assert_eq!(obs_density(&w, 0.65, 0.5).unwrap(), 0.0);
}

#[test]
fn near_zero_support_collapses_to_one() {
    let c = ClaytonChannel::new(0.75).unwrap();
    assert!(c.lower(1e-12) > 1.0 - 1e-8);
    assert_eq!(c.support(1.0), (0.0, 1.0));
}

proptest! {
    // F(Q(v)) loses accuracy like ε/v² as v → 0 (the offset y − e_l drops
    // below one ulp of y), so the strict round trip is checked where it is
    // representable.
    #[test]
    fn cdf_inverts_quantile(alpha in 0.55f64..0.75, x in 0.05f64..1.0, v in 0.01f64..1.0) {
        let c = ClaytonChannel::new(alpha).unwrap();
        let y = obs_quantile(&c, v, x).unwrap();
        prop_assert!((obs_cdf(&c, y, x).unwrap() - v).abs() < 1e-9);
    }

    #[test]
    fn cdf_is_monotone(alpha in 0.51f64..0.99, x in 0.01f64..1.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let c = ClaytonChannel::new(alpha).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(c.cdf(lo, x) <= c.cdf(hi, x));
    }

    #[test]
    fn quantile_stays_in_support(alpha in 0.51f64..0.99, x in 0.01f64..1.0, v in 0.0f64..=1.0) {
        let c = ClaytonChannel::new(alpha).unwrap();
        let (lo, hi) = c.support(x);
        let y = c.quantile(v, x);
        prop_assert!(y >= lo && y <= hi);
    }

    #[test]
    fn out_of_domain_inputs_rejected(x in prop_oneof![-5.0f64..=0.0, 1.0000001f64..5.0]) {
        let c = ClaytonChannel::new(0.75).unwrap();
        prop_assert!(matches!(obs_density(&c, 0.5, x), Err(CeoError::Domain(_))));
        prop_assert!(matches!(obs_quantile(&c, 0.5, x), Err(CeoError::Domain(_))));
    }
}

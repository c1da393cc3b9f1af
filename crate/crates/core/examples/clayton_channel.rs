//! Density, CDF, quantile and sampling of the Clayton observation channel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonregular_ceo::stats::ks_distance;
use nonregular_ceo::{obs_cdf, obs_density, obs_quantile, obs_sample, obs_support, ClaytonChannel};

fn main() -> nonregular_ceo::Result<()> {
    let channel = ClaytonChannel::new(0.75)?;
    for x in [0.1, 0.5, 0.9] {
        let (lo, hi) = obs_support(&channel, x)?;
        println!("x = {x}: support [{lo:.6}, {hi}]");
        for v in [0.01, 0.5, 0.99] {
            let y = obs_quantile(&channel, v, x)?;
            println!(
                "  F^-1({v}) = {y:.6}  density {:.4}  F(y) = {:.12}",
                obs_density(&channel, y, x)?,
                obs_cdf(&channel, y, x)?
            );
        }
        println!(
            "  density at the upper end: {:.6}",
            obs_density(&channel, hi, x)?
        );
    }

    let draws = obs_sample(&channel, 0.5, 50_000, &mut ChaCha8Rng::seed_from_u64(1))?;
    println!(
        "KS distance of 50000 draws at x = 0.5: {:.4}",
        ks_distance(&draws, |y| obs_cdf(&channel, y, 0.5).unwrap())
    );
    Ok(())
}

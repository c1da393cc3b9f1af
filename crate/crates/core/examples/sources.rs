//! Uniform and truncated-Gaussian source models.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonregular_ceo::stats::mean_stderr;
use nonregular_ceo::SourceModel;

fn main() -> nonregular_ceo::Result<()> {
    for source in [
        SourceModel::uniform(),
        "tgauss:0.3:0.25".parse::<SourceModel>()?,
    ] {
        let xs = source.sample(&mut ChaCha8Rng::seed_from_u64(4), 100_000);
        let (m, se) = mean_stderr(&xs);
        println!(
            "{source}: mean {:.5} (sample {m:.5} ± {se:.5}), variance {:.5}, median {:.5}",
            source.mean(),
            source.variance(),
            source.quantile(0.5)
        );
    }
    Ok(())
}

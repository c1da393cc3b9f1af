//! Rescaled extreme order statistics of the test-channel output approach
//! independent unit exponentials.

use nonregular_ceo::stats::ks_distance;
use nonregular_ceo::{extreme_statistics, ClaytonChannel, KPeakTestChannel};

fn main() -> nonregular_ceo::Result<()> {
    let channel = ClaytonChannel::new(0.75)?;
    let tc = KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5])?;
    let exp_cdf = |t: f64| if t <= 0.0 { 0.0 } else { -(-t).exp_m1() };
    for agents in [10, 100, 1000] {
        let (xi, eta) = extreme_statistics(&channel, &tc, 0.5, agents, 5000, 3);
        let n = xi.len() as f64;
        let mx = xi.iter().sum::<f64>() / n;
        let me = eta.iter().sum::<f64>() / n;
        let cov = xi
            .iter()
            .zip(&eta)
            .map(|(a, b)| (a - mx) * (b - me))
            .sum::<f64>()
            / n;
        println!(
            "L = {agents}: KS(xi) = {:.4}, KS(eta) = {:.4}, cov = {cov:+.4}",
            ks_distance(&xi, exp_cdf),
            ks_distance(&eta, exp_cdf)
        );
    }
    Ok(())
}

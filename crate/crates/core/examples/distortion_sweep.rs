//! Small Monte Carlo sweep of distortion against the number of agents, with
//! the fitted exponent of D against the sum rate.

use nonregular_ceo::sim::write_csv;
use nonregular_ceo::{fit_exponent, sweep, QuantGrid, SimConfig};

fn main() -> nonregular_ceo::Result<()> {
    let config = SimConfig {
        l_list: vec![10, 30, 100, 300],
        trials: 2000,
        grid: QuantGrid::new(32, 128, 384)?,
        ..SimConfig::clayton_default()
    };
    let report = sweep(&config)?;
    write_csv(&report.rows, std::io::stdout().lock())?;
    println!("rate per agent: {:.4} bits", report.rate_per_agent_bits);
    println!("fitted exponent: {:.3}", fit_exponent(&report.rows)?);
    Ok(())
}

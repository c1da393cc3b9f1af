//! Upper and lower constants on lim R²D for the Clayton and window channels.

use nonregular_ceo::{
    theorem_one_report, BoundsConfig, ClaytonChannel, KPeakTestChannel, ObservationChannel,
    QuantGrid, SourceModel, TheoremOneReport, UniformWindowChannel,
};

fn main() -> nonregular_ceo::Result<()> {
    let tc = KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5])?;
    let grid = QuantGrid::new(32, 128, 384)?;
    let clayton = ClaytonChannel::new(0.75)?;
    let window = UniformWindowChannel::new(0.1)?;
    println!("channel,{}", TheoremOneReport::CSV_HEADER);
    for channel in [&clayton as &dyn ObservationChannel, &window] {
        let r = theorem_one_report(
            &SourceModel::uniform(),
            channel,
            &tc,
            &grid,
            &BoundsConfig::default(),
        )?;
        println!("{},{}", channel.describe(), r.csv_row());
        if !r.g_converged {
            eprintln!(
                "{}: g did not settle under step halving",
                channel.describe()
            );
        }
    }
    Ok(())
}

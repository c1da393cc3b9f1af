//! Per-agent rate I(Y;U|X) on quantized alphabets, and its growth as the
//! y and u bins are refined.

use nonregular_ceo::info::JointMass;
use nonregular_ceo::{ClaytonChannel, KPeakTestChannel, QuantGrid, SourceModel, TestChannel};

fn main() -> nonregular_ceo::Result<()> {
    let channel = ClaytonChannel::new(0.75)?;
    let tc = TestChannel::KPeak(KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5])?);
    let mut grid = QuantGrid::new(16, 32, 96)?;
    for _ in 0..4 {
        let mass = JointMass::build(&SourceModel::uniform(), &channel, &tc, &grid)?;
        println!(
            "grid {grid}: I(Y;U|X) = {:.4} nats, I(X;Y) = {:.4}, I(X;U) = {:.4}",
            mass.conditional_mi(),
            mass.mi_xy(),
            mass.mi_xu()
        );
        grid = grid.refined();
    }
    Ok(())
}

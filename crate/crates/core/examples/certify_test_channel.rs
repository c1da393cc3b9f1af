//! Certifies the endpoint floor and Lipschitz conditions for a two-peak test
//! channel, and shows what a failing channel reports.

use nonregular_ceo::{
    check_property_one, CertificationGrid, ClaytonChannel, KPeakTestChannel,
    TriangularWindowChannel, UniformWindowChannel,
};

fn main() -> nonregular_ceo::Result<()> {
    let tc = KPeakTestChannel::new(vec![0.0, 2.0], vec![0.5, 0.5])?;
    let grid = CertificationGrid::default();

    let clayton = ClaytonChannel::new(0.75)?;
    let cert = check_property_one(&tc, &clayton, &grid).expect("Clayton channel certifies");
    println!(
        "clayton: K = {:.4} (observed {:.4}), delta = {:.4}, epsilon = {:.4}",
        cert.lipschitz_k,
        cert.lipschitz_observed,
        cert.endpoint_floor_delta,
        cert.endpoint_width_epsilon
    );

    let window = UniformWindowChannel::new(0.1)?;
    let cert = check_property_one(&tc, &window, &grid).expect("window channel certifies");
    println!(
        "window:  K = {:.4}, delta = {:.4}",
        cert.lipschitz_k, cert.endpoint_floor_delta
    );

    let triangular = TriangularWindowChannel::new(0.1)?;
    match check_property_one(&tc, &triangular, &grid) {
        Ok(_) => println!("triangular: unexpectedly certified"),
        Err(report) => println!(
            "triangular: {} violations, first {:?}",
            report.violations.len(),
            report.violations[0]
        ),
    }
    Ok(())
}

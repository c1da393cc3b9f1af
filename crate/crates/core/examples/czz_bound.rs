//! Chazan–Zakai–Ziv lower bound on the MSE for a window likelihood, as the
//! number of observations grows.

use nonregular_ceo::{
    czz_bound, PminMethod, SourceModel, UniformWindowChannel, UninformativeChannel,
};

fn main() -> nonregular_ceo::Result<()> {
    let prior = SourceModel::uniform();
    let none = czz_bound(
        &prior,
        &UninformativeChannel,
        1,
        PminMethod::ExactQuadrature,
        200,
    )?;
    println!("no data: {none:.8} (prior variance {:.8})", 1.0 / 12.0);

    let w = UniformWindowChannel::new(0.1)?;
    println!(
        "window, L = 1: {:.6e}",
        czz_bound(&prior, &w, 1, PminMethod::ExactQuadrature, 48)?
    );
    for agents in [2, 4, 8] {
        let mc = czz_bound(
            &prior,
            &w,
            agents,
            PminMethod::MonteCarlo {
                trials: 2000,
                seed: 1,
            },
            24,
        )?;
        let asym = czz_bound(&prior, &w, agents, PminMethod::ChernoffAsymptotic, 24)?;
        println!("window, L = {agents}: {mc:.6e} (Chernoff approximation {asym:.6e})");
    }
    Ok(())
}

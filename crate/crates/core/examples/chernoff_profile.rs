//! Chernoff information between neighbouring conditionals and its slope g(θ).

use nonregular_ceo::{
    chernoff_derivative_g, chernoff_info, ChernoffProfile, ClaytonChannel, UniformWindowChannel,
};

fn main() -> nonregular_ceo::Result<()> {
    let window = UniformWindowChannel::new(0.1)?;
    for d in [0.01, 0.05, 0.1] {
        let c = chernoff_info(&window, 0.4, d)?;
        println!(
            "window C(0.4, 0.4 + {d}) = {:.6}, closed form {:.6}",
            c.information,
            -(1.0 - d / 0.2).ln()
        );
    }
    let g = chernoff_derivative_g(&window, 0.4, 1e-3)?;
    println!("window g = {:.6} (converged: {})", g.value, g.converged);

    let clayton = ClaytonChannel::new(0.75)?;
    for step in [1e-3, 1e-4, 1e-5] {
        let g = chernoff_derivative_g(&clayton, 0.5, step)?;
        println!(
            "clayton g(0.5) at step {step:e}: {:.2} (converged: {})",
            g.value, g.converged
        );
    }
    print!("{}", ChernoffProfile::compute(&clayton, 8, 1e-3)?.to_csv());
    Ok(())
}

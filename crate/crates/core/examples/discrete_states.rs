// A finite grid of mass eigenstates standing in for the continuum.

use hyperdecay::quadrature::QuadratureConfig;
use hyperdecay::spectral::SpectralDensity;
use hyperdecay::statespace::{decay_decomposition, mass_squared_decomposition, survival_oracle, DiscreteState};
use hyperdecay::survival::survival_amplitude;

pub fn run_example() -> hyperdecay::Result<()> {
    let cfg = QuadratureConfig::with_rtol(1e-12);
    let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0)?;
    let state = DiscreteState::from_spectral(&sigma, 0.0, 5001)?;

    let d = mass_squared_decomposition(&state)?;
    println!("<P^2> = {:.6}, spread = {:.6}", d.mean, d.spread);

    for tau in [1.0, 5.0] {
        let grid = survival_oracle(&state, tau);
        let exact = survival_amplitude(&sigma, 0.0, tau, &cfg)?.amplitude;
        let split = decay_decomposition(&state, tau);
        println!(
            "tau {tau}: |grid - continuum| = {:.2e}, decayed weight {:.6}",
            (grid - exact).norm(),
            split.weight
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

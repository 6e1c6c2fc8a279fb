// Survival amplitude of a Breit-Wigner resonance at rest and at a
// spacelike momentum.

use hyperdecay::spectral::SpectralDensity;
use hyperdecay::survival::{survival_amplitude, QuadratureConfig};

pub fn run_example() -> hyperdecay::Result<()> {
    let cfg = QuadratureConfig::default();
    let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0)?;
    println!("{:>6} {:>14} {:>14} {:>14}", "tau", "P(s=0)", "P(s=1e4)", "exp(-tau)");
    for i in 0..=10 {
        let tau = i as f64;
        let rest = survival_amplitude(&sigma, 0.0, tau, &cfg)?;
        let moving = survival_amplitude(&sigma, 1e4, tau, &cfg)?;
        println!(
            "{tau:>6.1} {:>14.6e} {:>14.6e} {:>14.6e}",
            rest.probability(),
            moving.probability(),
            (-tau).exp()
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

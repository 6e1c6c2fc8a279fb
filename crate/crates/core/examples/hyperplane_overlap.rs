// Momentum eigenstates on two intersecting hyperplanes: the shared
// four-momentum and the phase of their overlap.

use hyperdecay::overlap::{overlap, shared_momentum_expressions, OverlapConfig};
use hyperdecay::spectral::SpectralDensity;

pub fn run_example() -> hyperdecay::Result<()> {
    let sigma = SpectralDensity::breit_wigner_window(10.0, 1.0)?;
    let cfg = OverlapConfig::in_plane(0.5, 2.0, 1.5, [0.3, -0.2], 0.0, 0.0)?;
    for (i, q) in shared_momentum_expressions(&cfg)?.iter().enumerate() {
        println!("q from expression {}: {:?}", i + 1, q.0);
    }
    println!("{:>6} {:>6} {:>14} {:>10}", "tau", "tau'", "modulus", "phase");
    for k in 0..5 {
        let (tau, tau_prime) = (0.5 * k as f64, -0.25 * k as f64);
        let r = overlap(&cfg.with_offsets(tau, tau_prime), &sigma)?;
        println!(
            "{tau:>6.2} {tau_prime:>6.2} {:>14.8e} {:>10.5}",
            r.amplitude.norm(),
            r.amplitude.arg()
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

// The part of a two-point function not carried by the unstable state,
// with the coupling matched to the spectral density.

use hyperdecay::quadrature::QuadratureConfig;
use hyperdecay::spectral::SpectralDensity;
use hyperdecay::twopoint::{coupling_matched, residual};

pub fn run_example() -> hyperdecay::Result<()> {
    let cfg = QuadratureConfig::default();
    let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0)?;
    let f = coupling_matched(&sigma)?;
    println!("{:>8} {:>6} {:>12}", "s", "dtau", "|residual|");
    for s in [0.0, 2500.0, 1e4] {
        for dtau in [0.5, 1.0, 2.0] {
            println!("{s:>8.0} {dtau:>6.1} {:>12.3e}", residual(&f, &sigma, s, dtau, &cfg)?.norm());
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

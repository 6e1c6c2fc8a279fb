// Momentum-dependent lifetime against Einstein time dilation.

use hyperdecay::lifetime::{deviation_report, lifetime_direct};
use hyperdecay::quadrature::QuadratureConfig;
use hyperdecay::spectral::SpectralDensity;

pub fn run_example() -> hyperdecay::Result<()> {
    let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0)?;
    let grid = [0.0, 2500.0, 1e4, 4e4];
    println!("{:>10} {:>16} {:>16} {:>12}", "s", "T(s)", "gamma0 T(0)", "deviation");
    for row in deviation_report(&sigma, &grid)? {
        println!("{:>10.1} {:>16.10} {:>16.10} {:>12.3e}", row.s, row.lifetime, row.einstein, row.deviation);
    }

    // the same lifetime from integrating the survival probability
    let direct = lifetime_direct(&sigma, 1e4, &QuadratureConfig::default())?;
    println!("direct T(1e4) = {:.10} +- {:.1e}", direct.value, direct.error);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

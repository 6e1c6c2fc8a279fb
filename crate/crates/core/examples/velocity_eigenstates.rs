// Lifetime of velocity eigenstates and the two intervals between
// hyperplanes.

use hyperdecay::lifetime::lifetime_closed_form;
use hyperdecay::quadrature::QuadratureConfig;
use hyperdecay::spectral::SpectralDensity;
use hyperdecay::velocity::{contracted_lifetime, contracted_survival, fig2_intervals, velocity_norm_factor};

pub fn run_example() -> hyperdecay::Result<()> {
    let cfg = QuadratureConfig::default();
    let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0)?;
    let t0 = lifetime_closed_form(&sigma, 0.0)?.value;
    println!("T0 = {t0:.10}, int sigma mu^-3 = {:.6e}", velocity_norm_factor(&sigma)?);
    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "u", "T(u)", "T between", "T normal", "P(t=1)");
    for u in [0.0, 0.6, 0.8, 0.99] {
        let v = [u, 0.0, 0.0];
        let (between, normal) = fig2_intervals(t0, v)?;
        println!(
            "{u:>6.2} {:>12.6} {between:>12.6} {normal:>12.6} {:>12.6e}",
            contracted_lifetime(&sigma, v)?.value,
            contracted_survival(&sigma, v, 1.0, &cfg)?.probability()
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

// Second-order narrow-width expansion of the lifetime, both coefficient
// sets, against the exact value.

use hyperdecay::lifetime::{lifetime_bw_approx, lifetime_closed_form, Variant};
use hyperdecay::spectral::SpectralDensity;

pub fn run_example() -> hyperdecay::Result<()> {
    let mu0 = 100.0;
    let s = mu0 * mu0;
    println!("{:>8} {:>12} {:>12} {:>12}", "G/mu0", "derived", "printed", "(G/mu0)^4");
    for gamma in [4.0, 2.0, 1.0, 0.5] {
        let exact = lifetime_closed_form(&SpectralDensity::breit_wigner(mu0, gamma)?, s)?.value;
        let rel = |v| -> hyperdecay::Result<f64> {
            Ok(lifetime_bw_approx(mu0, gamma, s, v)?.value / exact - 1.0)
        };
        println!(
            "{:>8.0e} {:>12.3e} {:>12.3e} {:>12.3e}",
            gamma / mu0,
            rel(Variant::Derived)?,
            rel(Variant::Printed)?,
            (gamma / mu0).powi(4)
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

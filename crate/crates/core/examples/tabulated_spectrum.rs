// A spectral density read from a two-column table.

use hyperdecay::lifetime::lifetime_closed_form;
use hyperdecay::quadrature::QuadratureConfig;
use hyperdecay::spectral::SpectralDensity;
use hyperdecay::survival::survival_amplitude;

pub fn run_example() -> hyperdecay::Result<()> {
    let mut table = String::from("# mu weight\n");
    for i in 0..=200 {
        let mu = 5.0 + 0.05 * i as f64;
        let w = (-(mu - 10.0f64).powi(2) / 2.0).exp();
        table.push_str(&format!("{mu} {w}\n"));
    }
    let sigma = SpectralDensity::parse_tabulated(&table)?.normalize()?;
    let m = sigma.moments()?;
    println!("total mass {:.12}, <P^2> = {:.6}", sigma.total_mass(), m.mean_square);
    println!("T(0) = {:.6}", lifetime_closed_form(&sigma, 0.0)?.value);
    let cfg = QuadratureConfig::default();
    for tau in [0.5, 1.0, 2.0] {
        println!("P({tau}) = {:.6e}", survival_amplitude(&sigma, 0.0, tau, &cfg)?.probability());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

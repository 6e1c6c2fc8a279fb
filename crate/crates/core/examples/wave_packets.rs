// Gaussian momentum packets: survival, and the same packet after a
// Poincare transformation.

use hyperdecay::minkowski::{boost_from_rapidity, FourVector, Hyperplane};
use hyperdecay::spectral::SpectralDensity;
use hyperdecay::survival::{
    packet_decay_survival_probability, packet_survival_amplitude, transform_packet, MomentumPacket,
    QuadratureConfig,
};

pub fn run_example() -> hyperdecay::Result<()> {
    let cfg = QuadratureConfig::default();
    let sigma = SpectralDensity::breit_wigner_window(10.0, 0.5)?;
    let psi = MomentumPacket::gaussian(Hyperplane::instantaneous(0.0), [3.0, 0.0, 0.0], 1.0)?;
    let boost = boost_from_rapidity([0.0, 1.0, 0.0], 0.8)?;
    let moved = transform_packet(&psi, &boost, FourVector::new(0.3, 0.0, 1.0, 0.0));
    println!("{:>6} {:>14} {:>14} {:>14}", "tau", "|A|^2", "|A'|^2", "P no decay");
    for tau in [0.0, 1.0, 2.0, 4.0] {
        let a = packet_survival_amplitude(&psi, &sigma, tau, &cfg)?;
        let b = packet_survival_amplitude(&moved, &sigma, tau, &cfg)?;
        let p = packet_decay_survival_probability(&psi, &sigma, tau, &cfg)?;
        println!("{tau:>6.1} {:>14.8e} {:>14.8e} {p:>14.8e}", a.probability(), b.probability());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}

//! Survival amplitudes of single-parent momentum eigenstates and packets.
//!
//! For an SP-momentum eigenstate with invariant `s = -p^2 >= 0` the amplitude
//! is the Fourier-type integral
//!
//! ```text
//! I_s(tau) = int dmu sigma(mu) exp(-i sqrt(mu^2 + s) tau)
//! ```
//!
//! with `hbar = c = 1`. It depends on the momentum only through `s`, so the
//! same value serves every hyperplane and every frame.

mod packet;

use num_complex::Complex64;

pub use crate::quadrature::QuadratureConfig;
use crate::error::{Error, Result};
use crate::minkowski::{mdot, FourVector, Hyperplane};
use crate::quadrature;
use crate::spectral::{SpectralDensity, DEFAULT_WINDOW};

pub use packet::{
    fourmomentum_amplitude, fourmomentum_distance, packet_decay_survival_probability,
    packet_survival_amplitude, transform_packet, MomentumPacket, Profile, TabulatedProfile,
};

/// `sqrt(mu^2 + s)`: energy in the hyperplane rest frame.
pub fn energy(mu: f64, s: f64) -> f64 {
    (mu * mu + s).sqrt()
}

/// Momentum of an SP-momentum eigenstate: its invariant `s = -p^2`, and
/// optionally the spacelike four-vector with the hyperplane it lives on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpMomentum {
    s: f64,
    vector: Option<(FourVector, Hyperplane)>,
}

impl SpMomentum {
    pub fn from_invariant(s: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("momentum invariant must be >= 0, got {s}")));
        }
        Ok(SpMomentum { s, vector: None })
    }

    /// `p` must be orthogonal to the hyperplane normal.
    pub fn from_vector(p: FourVector, plane: Hyperplane) -> Result<Self> {
        let scale = 1.0 + p.max_abs();
        if mdot(p, plane.normal()).abs() > 1e-12 * scale {
            return Err(Error::domain("SP momentum must be orthogonal to the hyperplane normal"));
        }
        let s = (-p.square()).max(0.0);
        Ok(SpMomentum { s, vector: Some((p, plane)) })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn vector(&self) -> Option<(FourVector, Hyperplane)> {
        self.vector
    }
}

/// A survival amplitude with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Survival {
    pub amplitude: Complex64,
    /// Quadrature error estimate.
    pub error: f64,
    /// Probability mass dropped when a full-line density is cut to a window.
    pub truncation: f64,
}

impl Survival {
    pub fn probability(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

fn check_args(s: f64, tau: f64, cfg: &QuadratureConfig) -> Result<()> {
    cfg.validate()?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("momentum invariant must be >= 0, got {s}")));
    }
    if !tau.is_finite() {
        return Err(Error::domain("hyperplane offset must be finite"));
    }
    Ok(())
}

/// Survival amplitude `I_s(tau)` for a normalized spectral density.
///
/// The full-line Breit–Wigner at `s = 0` uses the residue closed form
/// `exp(-i mu0 tau - gamma |tau| / 2)`. For `s > 0` the Lorentzian is
/// integrated over its default 50-width window without renormalization; the
/// dropped tail mass bounds the neglected contribution and is reported in
/// [`Survival::truncation`].
pub fn survival_amplitude(
    sigma: &SpectralDensity,
    s: f64,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<Survival> {
    check_args(s, tau, cfg)?;
    match sigma {
        SpectralDensity::PointMass { mu0 } => Ok(Survival {
            amplitude: Complex64::from_polar(1.0, -energy(*mu0, s) * tau),
            error: 0.0,
            truncation: 0.0,
        }),
        SpectralDensity::BreitWignerFullLine { mu0, gamma } if s == 0.0 => Ok(Survival {
            amplitude: Complex64::from_polar((-0.5 * gamma * tau.abs()).exp(), -mu0 * tau),
            error: 0.0,
            truncation: 0.0,
        }),
        SpectralDensity::BreitWignerFullLine { mu0, gamma } => {
            let lo = (mu0 - DEFAULT_WINDOW * gamma).max(0.0);
            let window = SpectralDensity::breit_wigner_clipped(*mu0, *gamma, lo, mu0 + DEFAULT_WINDOW * gamma)?;
            let truncation = 1.0 - window.total_mass();
            let inner = amplitude_quadrature(&window, s, tau, cfg)?;
            Ok(Survival { truncation, ..inner })
        }
        _ => {
            sigma.require_normalized()?;
            amplitude_quadrature(sigma, s, tau, cfg)
        }
    }
}

fn amplitude_quadrature(
    sigma: &SpectralDensity,
    s: f64,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<Survival> {
    let breaks = sigma.breakpoints();
    // d/dmu sqrt(mu^2 + s) = mu / sqrt(mu^2 + s) <= 1
    let est = quadrature::oscillatory(
        |mu| sigma.density(mu) * Complex64::from_polar(1.0, -energy(mu, s) * tau),
        &breaks,
        tau.abs(),
        1.0,
        cfg,
    )?;
    Ok(Survival { amplitude: est.value, error: est.error, truncation: 0.0 })
}

/// Survival amplitude computed from a full SP momentum (vector or invariant).
pub fn survival_amplitude_for(
    sigma: &SpectralDensity,
    p: &SpMomentum,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<Survival> {
    survival_amplitude(sigma, p.s(), tau, cfg)
}

/// `P_s(tau) = |I_s(tau)|^2`.
pub fn survival_probability(
    sigma: &SpectralDensity,
    s: f64,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(survival_amplitude(sigma, s, tau, cfg)?.probability())
}

//! Velocity eigenstates: SP states with zero momentum on a hyperplane
//! orthogonal to the four-velocity.
//!
//! Seen from a frame where the state moves with velocity `u`, the survival
//! amplitude is the rest amplitude at `t / sqrt(1 - u^2)`, so the lifetime
//! between hyperplanes contracts to `sqrt(1 - u^2) T0`.

use crate::error::{Error, Result};
use crate::lifetime::{lifetime_closed_form, LifetimeResult};
use crate::minkowski::FourVector;
use crate::quadrature::QuadratureConfig;
use crate::spectral::SpectralDensity;
use crate::survival::{survival_amplitude, Survival};

/// A three-velocity with `|u| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityEigenvalue {
    u: [f64; 3],
}

impl VelocityEigenvalue {
    pub fn new(u: [f64; 3]) -> Result<Self> {
        if u.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("velocity must be finite"));
        }
        if speed_squared(u) >= 1.0 {
            return Err(Error::domain(format!("speed must be below 1, got {}", speed_squared(u).sqrt())));
        }
        Ok(VelocityEigenvalue { u })
    }

    pub fn u(&self) -> [f64; 3] {
        self.u
    }

    /// `sqrt(1 - u^2)`.
    pub fn contraction(&self) -> f64 {
        (1.0 - speed_squared(self.u)).sqrt()
    }

    /// `(1, u) / sqrt(1 - u^2)`.
    pub fn four_velocity(&self) -> FourVector {
        let g = self.contraction().recip();
        FourVector::new(g, g * self.u[0], g * self.u[1], g * self.u[2])
    }
}

fn speed_squared(u: [f64; 3]) -> f64 {
    u.iter().map(|x| x * x).sum()
}

pub fn four_velocity(u: [f64; 3]) -> Result<FourVector> {
    Ok(VelocityEigenvalue::new(u)?.four_velocity())
}

/// `I_0(t / sqrt(1 - u^2))`.
pub fn contracted_survival(
    sigma: &SpectralDensity,
    u: [f64; 3],
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Survival> {
    let v = VelocityEigenvalue::new(u)?;
    survival_amplitude(sigma, 0.0, t / v.contraction(), cfg)
}

/// `sqrt(1 - u^2) T0` with `T0` the closed-form rest lifetime.
pub fn contracted_lifetime(sigma: &SpectralDensity, u: [f64; 3]) -> Result<LifetimeResult> {
    let v = VelocityEigenvalue::new(u)?;
    let rest = lifetime_closed_form(sigma, 0.0)?;
    let k = v.contraction();
    Ok(LifetimeResult { value: k * rest.value, error: k * rest.error, ..rest })
}

/// The two candidate intervals for a rest lifetime `t0`: `T = t0 / v0`
/// between the parallel hyperplanes, and `T' = v0 t0` along the normal.
pub fn fig2_intervals(t0: f64, u: [f64; 3]) -> Result<(f64, f64)> {
    let v = VelocityEigenvalue::new(u)?;
    let k = v.contraction();
    Ok((k * t0, t0 / k))
}

/// `int sigma mu^-3`. The velocity eigenstate normalization is its inverse
/// square root.
pub fn velocity_norm_factor(sigma: &SpectralDensity) -> Result<f64> {
    sigma.moment(-3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{boost_from_velocity, mdot, transform_hyperplane, Hyperplane};
    use crate::survival::survival_probability;
    use proptest::prelude::*;

    #[test]
    fn four_velocity_examples() {
        assert_eq!(four_velocity([0.0; 3]).unwrap(), FourVector::TIME);
        let v = four_velocity([0.6, 0.0, 0.0]).unwrap();
        assert!((v.t() - 1.25).abs() < 1e-15 && (v.0[1] - 0.75).abs() < 1e-15);
        assert!((mdot(v, v) - 1.0).abs() < 1e-12);
        assert!(four_velocity([0.6, 0.8, 0.0]).is_err());
        assert!(four_velocity([f64::NAN, 0.0, 0.0]).is_err());
    }

    #[test]
    fn contracted_lifetime_examples() {
        let sigma = SpectralDensity::breit_wigner(100.0, 2.0).unwrap();
        assert_eq!(contracted_lifetime(&sigma, [0.0; 3]).unwrap().value, 0.5);
        let t = contracted_lifetime(&sigma, [0.0, 0.8, 0.0]).unwrap().value;
        assert!((t - 0.3).abs() < 1e-15);
        let near = contracted_lifetime(&sigma, [0.0, 0.0, 1.0 - 1e-12]).unwrap().value;
        assert!(near > 0.0 && near < 1e-5);
        assert!(matches!(
            contracted_lifetime(&SpectralDensity::point_mass(1.0).unwrap(), [0.1, 0.0, 0.0]),
            Err(Error::Stable)
        ));
    }

    #[test]
    fn fig2_examples() {
        assert_eq!(fig2_intervals(3.0, [0.0; 3]).unwrap(), (3.0, 3.0));
        let (t, tp) = fig2_intervals(1.0, [0.0, 0.6, 0.0]).unwrap();
        assert!((t - 0.8).abs() < 1e-15 && (tp - 1.25).abs() < 1e-15);
        assert!(fig2_intervals(1.0, [1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn contracted_survival_full_line() {
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner(100.0, 1.0).unwrap();
        let u = [0.6, 0.0, 0.0];
        for t in [0.0, 0.5, 2.0] {
            let a = contracted_survival(&sigma, u, t, &cfg).unwrap().amplitude;
            assert!((a.norm() - (-0.5 * t / 0.8f64).exp()).abs() < 1e-14);
            let rest = survival_amplitude(&sigma, 0.0, 1.25 * t, &cfg).unwrap().amplitude;
            assert!((a - rest).norm() < 1e-14);
        }
    }

    #[test]
    fn survival_curve_consistency() {
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner_window(100.0, 1.0).unwrap();
        let u = [0.3, -0.4, 0.2];
        let k = VelocityEigenvalue::new(u).unwrap().contraction();
        for t in [0.3, 1.7] {
            let a = contracted_survival(&sigma, u, t, &cfg).unwrap().probability();
            let b = survival_probability(&sigma, 0.0, t / k, &cfg).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn hyperplane_reading() {
        // boost the rest hyperplane by u; a time translation t in the
        // original frame moves the boosted hyperplane by tau = t / sqrt(1-u^2)
        let u = [0.0, 0.6, 0.0];
        let b = boost_from_velocity(u).unwrap();
        let h = transform_hyperplane(&b, FourVector::ZERO, &Hyperplane::instantaneous(0.0));
        let t = 2.0;
        let shifted = transform_hyperplane(
            &crate::minkowski::LorentzTransform::identity(),
            FourVector::new(t, 0.0, 0.0, 0.0),
            &h,
        );
        let tau = shifted.offset() - h.offset();
        assert!((tau - 1.25 * t).abs() < 1e-12);
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner_window(50.0, 1.0).unwrap();
        let via_plane = survival_amplitude(&sigma, 0.0, tau, &cfg).unwrap().amplitude;
        let direct = contracted_survival(&sigma, u, t, &cfg).unwrap().amplitude;
        assert!((via_plane - direct).norm() < 1e-12);
    }

    #[test]
    fn norm_factor_examples() {
        let pm = SpectralDensity::point_mass(4.0).unwrap();
        assert_eq!(velocity_norm_factor(&pm).unwrap(), 4f64.powi(-3));
        let bw = SpectralDensity::breit_wigner_window(100.0, 1.0).unwrap();
        let f = velocity_norm_factor(&bw).unwrap();
        // the 50-width window keeps enough tail for a coefficient ~120 on (gamma/mu0)^2
        let rel = f * 1e6 - 1.0;
        assert!(rel > 1e-4 && rel < 200.0 * 1e-4, "{rel}");
        // oracle (mpmath)
        assert!((f / 1.0122472503123918e-6 - 1.0).abs() < 1e-10);
        let scaled = bw.mass_rescaled(2.0).unwrap();
        assert!((velocity_norm_factor(&scaled).unwrap() / f - 0.125).abs() < 1e-10);
        assert!(velocity_norm_factor(&SpectralDensity::breit_wigner(100.0, 1.0).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn contraction_law(ux in -0.57f64..0.57, uy in -0.57f64..0.57, uz in -0.57f64..0.57) {
            let sigma = SpectralDensity::breit_wigner(10.0, 0.5).unwrap();
            let u = [ux, uy, uz];
            let t0 = lifetime_closed_form(&sigma, 0.0).unwrap().value;
            let t = contracted_lifetime(&sigma, u).unwrap().value;
            let k = (1.0 - (ux * ux + uy * uy + uz * uz)).sqrt();
            prop_assert_eq!(t, k * t0);
            let (a, b) = fig2_intervals(t0, u).unwrap();
            prop_assert!((a * b / (t0 * t0) - 1.0).abs() < 1e-14);
            let v = four_velocity(u).unwrap();
            prop_assert!((mdot(v, v) - 1.0).abs() < 1e-12 && v.t() >= 1.0);
        }
    }
}

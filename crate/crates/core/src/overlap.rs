//! Inner products of SP-momentum eigenstates on intersecting hyperplanes.
//!
//! With normals `eta != eta'` and `c = eta.eta' > 1`, the delta functions in
//! the overlap leave at most one four-momentum `q`. The reduced amplitude
//! (the transverse delta stripped) is a pure phase in the offsets:
//!
//! ```text
//! 2 sqrt((eta.q)(eta'.q)) / sqrt(c^2 - 1) * |r(q^2)|^2 * exp(i ((eta.q) tau - (eta'.q) tau'))
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::minkowski::{mdot, FourVector, Hyperplane, LorentzTransform};
use crate::spectral::SpectralDensity;

/// Below this `c^2 - 1` the two normals count as equal.
pub const DEGENERACY_TOLERANCE: f64 = 1e-14;

/// Relative tolerance of the transverse-match predicate.
pub const TRANSVERSE_TOLERANCE: f64 = 1e-10;

/// Two SP-momentum eigenstates `|p; eta, tau>` and `|p'; eta', tau'>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapConfig {
    h: Hyperplane,
    h_prime: Hyperplane,
    p: FourVector,
    p_prime: FourVector,
}

fn check_degenerate(eta: FourVector, eta_prime: FourVector) -> Result<f64> {
    let c = mdot(eta, eta_prime);
    if !(c * c - 1.0 > DEGENERACY_TOLERANCE) {
        return Err(Error::Degenerate(format!(
            "hyperplane normals coincide (eta.eta' - 1 = {:.3e})",
            c - 1.0
        )));
    }
    Ok(c)
}

impl OverlapConfig {
    pub fn new(h: Hyperplane, h_prime: Hyperplane, p: FourVector, p_prime: FourVector) -> Result<Self> {
        check_degenerate(h.normal(), h_prime.normal())?;
        for (v, eta, name) in [(p, h.normal(), "p"), (p_prime, h_prime.normal(), "p'")] {
            if mdot(v, eta).abs() > 1e-12 * (1.0 + v.max_abs()) {
                return Err(Error::domain(format!("{name} must be orthogonal to its hyperplane normal")));
            }
        }
        if p.max_abs() == 0.0 && p_prime.max_abs() == 0.0 {
            return Err(Error::domain("at least one of p, p' must be non-zero"));
        }
        Ok(OverlapConfig { h, h_prime, p, p_prime })
    }

    /// `eta = (1, 0, 0, 0)`, `eta' = (cosh z, sinh z, 0, 0)`, `p = p_e e + t`,
    /// `p' = p'_e e' + t` with a shared transverse part `t = (0, 0, t_y, t_z)`.
    pub fn in_plane(
        rapidity: f64,
        p_e: f64,
        p_prime_e: f64,
        transverse: [f64; 2],
        tau: f64,
        tau_prime: f64,
    ) -> Result<Self> {
        let eta = FourVector::TIME;
        let eta_prime = FourVector::new(rapidity.cosh(), rapidity.sinh(), 0.0, 0.0);
        check_degenerate(eta, eta_prime)?;
        let (e, e_prime) = plane_unit_vectors(eta, eta_prime)?;
        let t = FourVector::new(0.0, 0.0, transverse[0], transverse[1]);
        Self::new(
            Hyperplane::new(eta, tau)?,
            Hyperplane::new(eta_prime, tau_prime)?,
            e * p_e + t,
            e_prime * p_prime_e + t,
        )
    }

    /// The pair whose shared momentum is `q`: `p = q - eta (eta.q)` and
    /// `p' = q - eta' (eta'.q)`.
    pub fn from_shared(q: FourVector, h: Hyperplane, h_prime: Hyperplane) -> Result<Self> {
        let (eta, eta_prime) = (h.normal(), h_prime.normal());
        Self::new(h, h_prime, q - eta * mdot(eta, q), q - eta_prime * mdot(eta_prime, q))
    }

    pub fn h(&self) -> Hyperplane {
        self.h
    }
    pub fn h_prime(&self) -> Hyperplane {
        self.h_prime
    }
    pub fn p(&self) -> FourVector {
        self.p
    }
    pub fn p_prime(&self) -> FourVector {
        self.p_prime
    }

    pub fn with_offsets(&self, tau: f64, tau_prime: f64) -> Self {
        OverlapConfig { h: self.h.with_offset(tau), h_prime: self.h_prime.with_offset(tau_prime), ..*self }
    }

    /// Every four-vector carried through `x -> L x + a`; momenta are not
    /// translated.
    pub fn transformed(&self, l: &LorentzTransform, a: FourVector) -> Result<Self> {
        let move_plane = |h: &Hyperplane| crate::minkowski::transform_hyperplane(l, a, h);
        Self::new(move_plane(&self.h), move_plane(&self.h_prime), l.apply(self.p), l.apply(self.p_prime))
    }
}

/// Unit spacelike vectors in the `(eta, eta')` plane orthogonal to `eta` and
/// `eta'` respectively.
pub fn plane_unit_vectors(eta: FourVector, eta_prime: FourVector) -> Result<(FourVector, FourVector)> {
    let c = check_degenerate(eta, eta_prime)?;
    let k = (c * c - 1.0).sqrt().recip();
    Ok(((eta_prime - eta * c) * k, (eta - eta_prime * c) * k))
}

/// Everything the overlap kinematics determine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapResult {
    pub e: FourVector,
    pub e_prime: FourVector,
    pub q: FourVector,
    /// Common component of `p` and `p'` orthogonal to both normals.
    pub transverse: FourVector,
    pub transverse_match: bool,
    pub accessible: bool,
    pub amplitude: Complex64,
}

/// The three closed expressions for `q`: from `p`, from `p'`, and from the
/// shared transverse part.
pub fn shared_momentum_expressions(cfg: &OverlapConfig) -> Result<[FourVector; 3]> {
    let (eta, eta_prime) = (cfg.h.normal(), cfg.h_prime.normal());
    let c = check_degenerate(eta, eta_prime)?;
    let d = c * c - 1.0;
    let (ep, epp) = (mdot(eta, cfg.p_prime), mdot(eta_prime, cfg.p));
    let from_p = cfg.p - eta * ((ep + c * epp) / d);
    let from_p_prime = cfg.p_prime - eta_prime * ((epp + c * ep) / d);
    let (e, _) = plane_unit_vectors(eta, eta_prime)?;
    let transverse = cfg.p + e * mdot(e, cfg.p);
    let from_transverse = transverse - (eta_prime * epp + eta * ep) * d.recip();
    Ok([from_p, from_p_prime, from_transverse])
}

/// The unique four-momentum shared by both eigenstates.
pub fn shared_momentum(cfg: &OverlapConfig) -> Result<FourVector> {
    Ok(shared_momentum_expressions(cfg)?[0])
}

fn transverse_parts(cfg: &OverlapConfig) -> Result<(FourVector, bool)> {
    let (e, e_prime) = plane_unit_vectors(cfg.h.normal(), cfg.h_prime.normal())?;
    let t = cfg.p + e * mdot(e, cfg.p);
    let t_prime = cfg.p_prime + e_prime * mdot(e_prime, cfg.p_prime);
    let scale = 1.0 + cfg.p.max_abs().max(cfg.p_prime.max_abs());
    Ok((t, (t - t_prime).max_abs() <= TRANSVERSE_TOLERANCE * scale))
}

fn accessible_q(q: FourVector, sigma: &SpectralDensity) -> bool {
    if !q.is_future_timelike() {
        return false;
    }
    let mu = q.square().sqrt();
    let (lo, hi) = sigma.support();
    mu >= lo && mu <= hi && sigma.density(mu) > 0.0
}

/// Whether `q` is future timelike with `sqrt(q^2)` inside the spectrum.
pub fn accessibility(cfg: &OverlapConfig, sigma: &SpectralDensity) -> Result<bool> {
    Ok(accessible_q(shared_momentum(cfg)?, sigma))
}

/// The overlap with the transverse delta function stripped; zero when `q`
/// is inaccessible or the transverse parts differ.
pub fn reduced_inner_product(cfg: &OverlapConfig, sigma: &SpectralDensity) -> Result<Complex64> {
    Ok(overlap(cfg, sigma)?.amplitude)
}

pub fn overlap(cfg: &OverlapConfig, sigma: &SpectralDensity) -> Result<OverlapResult> {
    if sigma.is_point_mass() {
        return Err(Error::domain("a point mass has no density weight"));
    }
    let (eta, eta_prime) = (cfg.h.normal(), cfg.h_prime.normal());
    let c = check_degenerate(eta, eta_prime)?;
    let (e, e_prime) = plane_unit_vectors(eta, eta_prime)?;
    let q = shared_momentum(cfg)?;
    let (transverse, transverse_match) = transverse_parts(cfg)?;
    let accessible = accessible_q(q, sigma);
    let amplitude = if transverse_match && accessible {
        let (eq, epq) = (mdot(eta, q), mdot(eta_prime, q));
        let mu = q.square().sqrt();
        let r2 = sigma.density(mu) / (2.0 * mu);
        let modulus = 2.0 * (eq * epq).sqrt() / (c * c - 1.0).sqrt() * r2;
        Complex64::from_polar(modulus, eq * cfg.h.offset() - epq * cfg.h_prime.offset())
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(OverlapResult { e, e_prime, q, transverse, transverse_match, accessible, amplitude })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{boost_from_rapidity, boost_from_velocity};
    use proptest::prelude::*;

    fn sigma() -> SpectralDensity {
        SpectralDensity::breit_wigner_window(10.0, 1.0).unwrap()
    }

    #[test]
    fn unit_vectors_simple_pair() {
        let z = 0.7f64;
        let eta = FourVector::TIME;
        let eta_prime = FourVector::new(z.cosh(), z.sinh(), 0.0, 0.0);
        let (e, e_prime) = plane_unit_vectors(eta, eta_prime).unwrap();
        assert!((e - FourVector::new(0.0, 1.0, 0.0, 0.0)).max_abs() < 1e-15);
        assert!(mdot(e_prime, eta_prime).abs() < 1e-12);
        assert!((mdot(e_prime, e_prime) + 1.0).abs() < 1e-12);
        let (f, f_prime) = plane_unit_vectors(eta_prime, eta).unwrap();
        assert_eq!((f, f_prime), (e_prime, e));
        assert!(matches!(plane_unit_vectors(eta, eta), Err(Error::Degenerate(_))));
    }

    #[test]
    fn shared_momentum_example() {
        let mu0 = 10.0;
        let cfg = OverlapConfig::in_plane(1.0, 0.3 * mu0, -0.4 * mu0, [0.0, 0.0], 0.0, 0.0).unwrap();
        let [a, b, c] = shared_momentum_expressions(&cfg).unwrap();
        assert!((a - b).max_abs() < 1e-10 && (a - c).max_abs() < 1e-10);
        let (eta, eta_prime) = (cfg.h().normal(), cfg.h_prime().normal());
        let (e, _) = plane_unit_vectors(eta, eta_prime).unwrap();
        let d = a - cfg.p();
        assert!(mdot(d, e).abs() < 1e-10);
        assert!(mdot(d, FourVector::new(0.0, 0.0, 1.0, 0.0)).abs() < 1e-10);
        let cc = mdot(eta, eta_prime);
        let expect = -(mdot(eta, cfg.p_prime()) + cc * mdot(eta_prime, cfg.p())) / (cc * cc - 1.0);
        assert!((mdot(eta, a) - expect).abs() < 1e-10);
    }

    #[test]
    fn transverse_mismatch_gives_zero() {
        let eta = FourVector::TIME;
        let eta_prime = FourVector::new(1f64.cosh(), 1f64.sinh(), 0.0, 0.0);
        let (e, e_prime) = plane_unit_vectors(eta, eta_prime).unwrap();
        let p = e * 2.0 + FourVector::new(0.0, 0.0, 0.1, 0.0);
        let p_prime = e_prime * -3.0 + FourVector::new(0.0, 0.0, 0.2, 0.0);
        let cfg = OverlapConfig::new(Hyperplane::new(eta, 0.0).unwrap(), Hyperplane::new(eta_prime, 0.0).unwrap(), p, p_prime)
            .unwrap();
        let r = overlap(&cfg, &sigma()).unwrap();
        assert!(!r.transverse_match);
        assert_eq!(r.amplitude, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn accessibility_examples() {
        let s = sigma();
        // eta.p' and eta'.p positive: q points to the past
        let cfg = OverlapConfig::in_plane(1.0, -3.0, -4.0, [0.0, 0.0], 0.0, 0.0).unwrap();
        assert!(shared_momentum(&cfg).unwrap().t() < 0.0);
        assert!(!accessibility(&cfg, &s).unwrap());
        let h = Hyperplane::instantaneous(0.0);
        let hp = Hyperplane::new(FourVector::new(1f64.cosh(), 1f64.sinh(), 0.0, 0.0), 0.0).unwrap();
        let spacelike = OverlapConfig::from_shared(FourVector::new(1.0, 3.0, 0.0, 0.0), h, hp).unwrap();
        assert!(shared_momentum(&spacelike).unwrap().square() < 0.0);
        assert!(!accessibility(&spacelike, &s).unwrap());
        let narrow = SpectralDensity::breit_wigner_truncated(10.0, 1.0, 5.0, 15.0).unwrap();
        let low = OverlapConfig::from_shared(FourVector::new(3.0, 0.5, 0.0, 0.0), h, hp).unwrap();
        assert!(!accessibility(&low, &narrow).unwrap());
        let on = OverlapConfig::from_shared(FourVector::new(10.5, 1.0, 0.3, 0.0), h, hp).unwrap();
        assert!(accessibility(&on, &narrow).unwrap());
        let eta_p_prime = mdot(h.normal(), on.p_prime());
        let eta_prime_p = mdot(hp.normal(), on.p());
        assert!(eta_p_prime < 0.0 && eta_prime_p < 0.0);
        assert_eq!(overlap(&low, &narrow).unwrap().amplitude, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn modulus_independent_of_offsets() {
        let s = sigma();
        let h = Hyperplane::instantaneous(0.0);
        let hp = Hyperplane::new(FourVector::new(1.5f64.cosh(), 0.0, 1.5f64.sinh(), 0.0), 0.0).unwrap();
        let cfg = OverlapConfig::from_shared(FourVector::new(10.2, 0.5, -0.3, 0.8), h, hp).unwrap();
        let base = reduced_inner_product(&cfg, &s).unwrap();
        assert!(base.norm() > 0.0);
        assert!(base.im == 0.0 && base.re > 0.0);
        for i in 0..11 {
            for j in 0..11 {
                let (t, tp) = (-5.0 + i as f64, -5.0 + j as f64 * 0.7);
                let v = reduced_inner_product(&cfg.with_offsets(t, tp), &s).unwrap();
                assert!((v.norm() - base.norm()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn degeneracy_wall() {
        let eta = FourVector::TIME;
        for z in [1e-3f64, 1e-6, 1e-7] {
            let eta_prime = FourVector::new(z.cosh(), z.sinh(), 0.0, 0.0);
            let r = plane_unit_vectors(eta, eta_prime);
            if let Ok((e, _)) = r {
                assert!(e.max_abs().is_finite());
            }
        }
        assert!(matches!(OverlapConfig::in_plane(1e-9, 1.0, 1.0, [0.0; 2], 0.0, 0.0), Err(Error::Degenerate(_))));
        assert!(OverlapConfig::in_plane(0.0, 1.0, 1.0, [0.0; 2], 0.0, 0.0).is_err());
    }

    #[test]
    fn invalid_configs() {
        let h = Hyperplane::instantaneous(0.0);
        let hp = Hyperplane::new(FourVector::new(1f64.cosh(), 1f64.sinh(), 0.0, 0.0), 0.0).unwrap();
        assert!(OverlapConfig::new(h, hp, FourVector::ZERO, FourVector::ZERO).is_err());
        assert!(OverlapConfig::new(h, hp, FourVector::new(1.0, 0.0, 0.0, 0.0), FourVector::ZERO).is_err());
    }

    /// Valid configurations by construction: a random boost pair for the
    /// normals and a shared momentum built from rapidity and transverse parts.
    fn random_config(z1: f64, z2: f64, phi: f64, m: f64, y: f64, tx: f64, tau: f64, taup: f64) -> OverlapConfig {
        let b1 = boost_from_rapidity([phi.cos(), phi.sin(), 0.3], z1).unwrap();
        let b2 = boost_from_rapidity([0.2, phi.cos(), -phi.sin()], z2).unwrap();
        let h = Hyperplane::new(b1.apply(FourVector::TIME), tau).unwrap();
        let hp = Hyperplane::new(b2.apply(FourVector::TIME), taup).unwrap();
        let mt = (m * m + tx * tx).sqrt();
        let q = FourVector::new(mt * y.cosh(), tx, mt * y.sinh(), 0.4 * tx);
        OverlapConfig::from_shared(q, h, hp).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn three_expressions_agree(
            z1 in -1.5f64..1.5, z2 in 0.3f64..2.0, phi in 0.0f64..6.28,
            m in 5.0f64..15.0, y in -1.0f64..1.0, tx in -3.0f64..3.0,
        ) {
            let cfg = random_config(z1, z2, phi, m, y, tx, 0.0, 0.0);
            if let Ok([a, b, c]) = shared_momentum_expressions(&cfg) {
                let scale = 1.0 + a.max_abs();
                prop_assert!((a - b).max_abs() < 1e-10 * scale);
                prop_assert!((a - c).max_abs() < 1e-10 * scale);
                let r = overlap(&cfg, &sigma()).unwrap();
                prop_assert!(r.transverse_match);
                prop_assert!((mdot(r.e, r.e) + 1.0).abs() < 1e-12);
                prop_assert!((mdot(r.e_prime, r.e_prime) + 1.0).abs() < 1e-12);
                prop_assert!(mdot(r.e, cfg.h().normal()).abs() < 1e-12);
                prop_assert!(mdot(r.e_prime, cfg.h_prime().normal()).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn lorentz_covariance(
            z1 in -1.0f64..1.0, z2 in 0.3f64..1.5, phi in 0.0f64..6.28,
            m in 8.0f64..12.0, y in -0.5f64..0.5, tx in -1.0f64..1.0,
            tau in -3.0f64..3.0, taup in -3.0f64..3.0,
            ux in -0.5f64..0.5, uy in -0.5f64..0.5,
        ) {
            let s = sigma();
            let cfg = random_config(z1, z2, phi, m, y, tx, tau, taup);
            let l = boost_from_velocity([ux, uy, 0.1]).unwrap();
            let moved = cfg.transformed(&l, FourVector::ZERO).unwrap();
            let (a, b) = (overlap(&cfg, &s).unwrap(), overlap(&moved, &s).unwrap());
            prop_assert!((a.q.square() - b.q.square()).abs() < 1e-9 * a.q.square().abs().max(1.0));
            prop_assert!((a.amplitude - b.amplitude).norm() < 1e-9 * a.amplitude.norm().max(1e-3));
            // a translation multiplies by exp(i a.(L p' - L p))
            let shift = FourVector::new(0.4, -0.2, 0.7, 0.1);
            let moved = cfg.transformed(&l, shift).unwrap();
            let c = overlap(&moved, &s).unwrap().amplitude;
            let phase = Complex64::from_polar(1.0, mdot(shift, l.apply(cfg.p_prime()) - l.apply(cfg.p())));
            prop_assert!((c - a.amplitude * phase).norm() < 1e-9 * a.amplitude.norm().max(1e-3));
        }
    }
}

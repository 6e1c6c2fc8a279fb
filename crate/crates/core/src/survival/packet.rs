//! Wave packets of SP momenta and their survival amplitudes.
//!
//! A packet lives on a hyperplane with unit normal `eta`. Its profile is a
//! function of the spatial momentum `k` in the rest frame of `eta`; the
//! four-momentum is `p = B(eta) (0, k)` with `B(eta)` the pure boost taking
//! the time axis to `eta`. Poincaré transforms act as
//! `psi'(p) = psi(L^-1 p) exp(i p.a)` and are stored composed, so a packet is
//! always a base profile plus one transform.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::{survival_amplitude, QuadratureConfig, Survival};
use crate::error::{Error, Result};
use crate::minkowski::{
    boost_to_normal, mdot, transform_hyperplane, FourVector, Hyperplane, LorentzTransform,
};
use crate::quadrature::gauss_legendre;
use crate::spectral::SpectralDensity;

/// Spatial profile of a packet in the rest frame of its hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `|psi(k)|^2` is the normal density with mean `center` and covariance
    /// `width^2` times the identity.
    Gaussian { center: [f64; 3], width: f64 },
    Tabulated(TabulatedProfile),
}

/// Complex amplitudes on a regular grid in `k`, interpolated trilinearly.
/// Normalized on construction so that the trapezoid sum of `|psi|^2` is one.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    lo: [f64; 3],
    step: [f64; 3],
    dims: [usize; 3],
    values: Vec<Complex64>,
}

fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i + 1 == n {
        0.5
    } else {
        1.0
    }
}

impl TabulatedProfile {
    /// `values` is indexed `[ix][iy][iz]` in row-major order.
    pub fn new(lo: [f64; 3], step: [f64; 3], dims: [usize; 3], values: Vec<Complex64>) -> Result<Self> {
        if dims.iter().any(|&n| n < 2) {
            return Err(Error::invalid("tabulated profile needs at least two points per axis"));
        }
        if step.iter().any(|&h| !(h > 0.0 && h.is_finite())) || lo.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("tabulated profile grid must be finite with positive steps"));
        }
        if values.len() != dims[0] * dims[1] * dims[2] {
            return Err(Error::invalid(format!(
                "expected {} profile values, got {}",
                dims[0] * dims[1] * dims[2],
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::invalid("profile values must be finite"));
        }
        let mut t = TabulatedProfile { lo, step, dims, values };
        let norm: f64 = t.cells().map(|(_, w, v)| w * v.norm_sqr()).sum();
        if !(norm > 0.0) {
            return Err(Error::invalid("profile vanishes identically"));
        }
        let c = norm.sqrt().recip();
        t.values.iter_mut().for_each(|v| *v *= c);
        Ok(t)
    }

    /// Grid points with their trapezoid volume weights and values.
    fn cells(&self) -> impl Iterator<Item = ([f64; 3], f64, Complex64)> + '_ {
        let [nx, ny, nz] = self.dims;
        let dv = self.step[0] * self.step[1] * self.step[2];
        (0..nx * ny * nz).map(move |idx| {
            let (i, j, k) = (idx / (ny * nz), (idx / nz) % ny, idx % nz);
            let w = dv * trapezoid_weight(i, nx) * trapezoid_weight(j, ny) * trapezoid_weight(k, nz);
            let p = [
                self.lo[0] + i as f64 * self.step[0],
                self.lo[1] + j as f64 * self.step[1],
                self.lo[2] + k as f64 * self.step[2],
            ];
            (p, w, self.values[idx])
        })
    }

    pub fn eval(&self, k: [f64; 3]) -> Complex64 {
        let mut base = [0usize; 3];
        let mut frac = [0.0; 3];
        for a in 0..3 {
            let x = (k[a] - self.lo[a]) / self.step[a];
            let last = (self.dims[a] - 1) as f64;
            if !(0.0..=last).contains(&x) {
                return Complex64::new(0.0, 0.0);
            }
            let i = (x.floor() as usize).min(self.dims[a] - 2);
            base[a] = i;
            frac[a] = x - i as f64;
        }
        let [_, ny, nz] = self.dims;
        let mut out = Complex64::new(0.0, 0.0);
        for corner in 0..8 {
            let mut w = 1.0;
            let mut idx = [0usize; 3];
            for a in 0..3 {
                let up = (corner >> a) & 1 == 1;
                idx[a] = base[a] + up as usize;
                w *= if up { frac[a] } else { 1.0 - frac[a] };
            }
            if w != 0.0 {
                out += self.values[(idx[0] * ny + idx[1]) * nz + idx[2]] * w;
            }
        }
        out
    }
}

fn gaussian_amplitude(center: [f64; 3], width: f64, k: [f64; 3]) -> f64 {
    let d2: f64 = (0..3).map(|a| (k[a] - center[a]).powi(2)).sum();
    (2.0 * PI * width * width).powf(-0.75) * (-d2 / (4.0 * width * width)).exp()
}

/// Density of `|k|` when `k` is normal with mean of length `c` and
/// isotropic standard deviation `w`.
fn radial_density(k: f64, c: f64, w: f64) -> f64 {
    let norm = (2.0 * PI).sqrt() * w;
    if c < 1e-12 * w {
        return 2.0 * k * k / (norm * w * w) * (-k * k / (2.0 * w * w)).exp();
    }
    let x = 2.0 * k * c / (w * w);
    k / (c * norm) * (-(k - c).powi(2) / (2.0 * w * w)).exp() * -(-x).exp_m1()
}

/// A square-integrable packet of SP momenta on a hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumPacket {
    base: Hyperplane,
    profile: Profile,
    transform: LorentzTransform,
    shift: FourVector,
}

impl MomentumPacket {
    pub fn gaussian(plane: Hyperplane, center: [f64; 3], width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::domain(format!("packet width must be positive, got {width}")));
        }
        if center.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("packet center must be finite"));
        }
        Ok(Self::new(plane, Profile::Gaussian { center, width }))
    }

    pub fn tabulated(plane: Hyperplane, profile: TabulatedProfile) -> Self {
        Self::new(plane, Profile::Tabulated(profile))
    }

    fn new(base: Hyperplane, profile: Profile) -> Self {
        MomentumPacket {
            base,
            profile,
            transform: LorentzTransform::identity(),
            shift: FourVector::ZERO,
        }
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// The hyperplane the packet currently lives on.
    pub fn hyperplane(&self) -> Hyperplane {
        transform_hyperplane(&self.transform, self.shift, &self.base)
    }

    fn base_profile(&self, k: [f64; 3]) -> Complex64 {
        match &self.profile {
            Profile::Gaussian { center, width } => gaussian_amplitude(*center, *width, k).into(),
            Profile::Tabulated(t) => t.eval(k),
        }
    }

    /// `psi(p)` for a momentum `p` orthogonal to the current normal.
    pub fn amplitude(&self, p: FourVector) -> Result<Complex64> {
        let back = self.transform.inverse().apply(p);
        let to_base = boost_to_normal(self.base.normal())?.inverse();
        let k = to_base.apply(back).space();
        let phase = Complex64::from_polar(1.0, mdot(p, self.shift));
        Ok(self.base_profile(k) * phase)
    }

    /// Four-momentum on the current hyperplane for rest-frame components `k`.
    pub fn momentum(&self, k: [f64; 3]) -> Result<FourVector> {
        Ok(boost_to_normal(self.hyperplane().normal())?.apply(FourVector::spatial(k)))
    }

    /// Sum of `|psi|^2 g(|k|^2)` over the profile, with `g` evaluated in
    /// parallel. Every Poincaré transform preserves both the measure and
    /// `-p^2`, so the base profile suffices.
    fn average<G>(&self, g: G, cfg: &QuadratureConfig) -> Result<(Complex64, f64)>
    where
        G: Fn(f64) -> Result<(Complex64, f64)> + Sync,
    {
        match &self.profile {
            Profile::Tabulated(t) => {
                let cells: Vec<_> = t.cells().filter(|(_, _, v)| v.norm_sqr() > 0.0).collect();
                let parts = cells
                    .par_iter()
                    .map(|(k, w, v)| {
                        let (val, err) = g(k.iter().map(|x| x * x).sum())?;
                        let m = w * v.norm_sqr();
                        Ok((val * m, err * m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(parts.into_iter().fold((Complex64::new(0.0, 0.0), 0.0), |a, b| (a.0 + b.0, a.1 + b.1)))
            }
            Profile::Gaussian { center, width } => {
                let c = center.iter().map(|x| x * x).sum::<f64>().sqrt();
                let w = *width;
                let (a, b) = ((c - 9.0 * w).max(0.0), c + 9.0 * w);
                radial_panels(|k| g(k * k), radial_density_fn(c, w), a, b, cfg)
            }
        }
    }
}

fn radial_density_fn(c: f64, w: f64) -> impl Fn(f64) -> f64 + Sync {
    move |k| radial_density(k, c, w)
}

/// Gauss–Legendre panels on `[a, b]` with doubling, evaluating nodes in
/// parallel, until successive sums agree within `cfg.rtol`.
fn radial_panels<G, D>(g: G, density: D, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)>
where
    G: Fn(f64) -> Result<(Complex64, f64)> + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    let (x, wts) = gauss_legendre(6);
    let sum = |n: usize| -> Result<(Complex64, f64)> {
        let h = (b - a) / n as f64;
        let nodes: Vec<(f64, f64)> = (0..n)
            .flat_map(|i| {
                let mid = a + (i as f64 + 0.5) * h;
                x.iter().zip(&wts).map(move |(x, w)| (mid + 0.5 * h * x, 0.5 * h * w))
            })
            .collect();
        let parts = nodes
            .par_iter()
            .map(|&(k, w)| {
                let m = w * density(k);
                if m == 0.0 {
                    return Ok((Complex64::new(0.0, 0.0), 0.0));
                }
                let (v, e) = g(k)?;
                Ok((v * m, e * m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.into_iter().fold((Complex64::new(0.0, 0.0), 0.0), |s, p| (s.0 + p.0, s.1 + p.1)))
    };
    let mut n = 4;
    let mut coarse = sum(n)?;
    loop {
        n *= 2;
        if n * 6 > cfg.max_panels {
            return Err(Error::Quadrature { achieved: f64::NAN, requested: cfg.rtol });
        }
        let fine = sum(n)?;
        let diff = (fine.0 - coarse.0).norm();
        if diff <= cfg.rtol {
            return Ok((fine.0, fine.1 + diff));
        }
        coarse = fine;
    }
}

/// `psi_{L,a}(p) = psi(L^-1 p) exp(i p.a)`, carried to the hyperplane
/// `L Sigma + a`.
pub fn transform_packet(psi: &MomentumPacket, l: &LorentzTransform, a: FourVector) -> MomentumPacket {
    MomentumPacket {
        base: psi.base,
        profile: psi.profile.clone(),
        transform: l.compose(&psi.transform),
        shift: l.apply(psi.shift) + a,
    }
}

/// `A(tau) = int d^3k |psi(k)|^2 I_{k^2}(tau)`: overlap of the packet with
/// itself displaced by `tau` along its own normal.
pub fn packet_survival_amplitude(
    psi: &MomentumPacket,
    sigma: &SpectralDensity,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<Survival> {
    let truncation = std::sync::Mutex::new(0.0f64);
    let g = |s: f64| {
        let a = survival_amplitude(sigma, s, tau, cfg)?;
        let mut t = truncation.lock().unwrap();
        *t = t.max(a.truncation);
        Ok((a.amplitude, a.error))
    };
    let (amplitude, error) = psi.average(g, cfg)?;
    let truncation = truncation.into_inner().unwrap();
    Ok(Survival { amplitude, error, truncation })
}

/// `int d^3k |psi(k)|^2 |I_{k^2}(tau)|^2`: the momentum-averaged probability
/// that no decay has occurred by `tau`.
pub fn packet_decay_survival_probability(
    psi: &MomentumPacket,
    sigma: &SpectralDensity,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let g = |s: f64| {
        let a = survival_amplitude(sigma, s, tau, cfg)?;
        Ok((Complex64::new(a.probability(), 0.0), 2.0 * a.error))
    };
    Ok(psi.average(g, cfg)?.0.re)
}

/// `xi(q) = psi(q - eta (eta.q)) r(q^2) sqrt(2 eta.q) exp(i (eta.q) tau)`:
/// the amplitude of the packet at the four-momentum `q`, which must be
/// future timelike. Zero when `sqrt(q^2)` lies outside the spectral support.
pub fn fourmomentum_amplitude(
    psi: &MomentumPacket,
    sigma: &SpectralDensity,
    q: FourVector,
) -> Result<Complex64> {
    if sigma.is_point_mass() {
        return Err(Error::domain("a point mass has no four-momentum density"));
    }
    if !q.is_future_timelike() {
        return Err(Error::domain("four-momentum must be future timelike"));
    }
    let plane = psi.hyperplane();
    let eta = plane.normal();
    let eq = mdot(eta, q);
    let mu = q.square().sqrt();
    let r = sigma.r_weight(mu)?;
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let p = q - eta * eq;
    let phase = Complex64::from_polar(1.0, eq * plane.offset());
    Ok(psi.amplitude(p)? * r * (2.0 * eq).sqrt() * phase)
}

/// Root-mean-square difference of the four-momentum densities `|xi|^2` of
/// two packets over the sample momenta `qs`.
pub fn fourmomentum_distance(
    a: &MomentumPacket,
    b: &MomentumPacket,
    sigma: &SpectralDensity,
    qs: &[FourVector],
) -> Result<f64> {
    if qs.is_empty() {
        return Err(Error::domain("no sample momenta"));
    }
    let mut acc = 0.0;
    for &q in qs {
        let d = fourmomentum_amplitude(a, sigma, q)?.norm_sqr()
            - fourmomentum_amplitude(b, sigma, q)?.norm_sqr();
        acc += d * d;
    }
    Ok((acc / qs.len() as f64).sqrt())
}

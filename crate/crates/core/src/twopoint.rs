//! Reduced two-point kernels of a field coupled to the unstable state.
//!
//! With the spatial phase and overall constants stripped, the vacuum
//! expectation splits into the pair contribution
//!
//! ```text
//! A(s, dtau) = int dmu^2 |f|^2 / (2 eps) exp(i eps dtau),   eps = sqrt(mu^2 + s)
//! ```
//!
//! and the part carried by the unstable state itself,
//! `I_s(-dtau) |int dmu^2 r f / sqrt(2 eps)|^2`. Their difference vanishes at
//! `s = 0` for the matched coupling and not elsewhere.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureConfig};
use crate::spectral::SpectralDensity;
use crate::survival::{energy, survival_amplitude};

/// The coupling `f`, written as a function of the mass `mu` rather than of
/// `mu^2`.
#[derive(Clone)]
pub enum FieldCoupling {
    /// `f = sqrt(2 mu) |r(mu^2)|`, so that `f^2 = sigma`.
    Matched(SpectralDensity),
    /// Non-negative values on a mass grid, linearly interpolated and zero
    /// outside it.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
    /// Any non-negative function of `mu`.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for FieldCoupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCoupling::Matched(s) => f.debug_tuple("Matched").field(s).finish(),
            FieldCoupling::Tabulated { grid, values } => {
                f.debug_struct("Tabulated").field("grid", grid).field("values", values).finish()
            }
            FieldCoupling::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl FieldCoupling {
    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(Error::invalid("coupling table needs matching grid and values, at least two points"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("coupling grid must be finite and strictly increasing"));
        }
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::invalid("coupling values must be finite and non-negative"));
        }
        Ok(FieldCoupling::Tabulated { grid, values })
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FieldCoupling::Custom(Arc::new(f))
    }

    pub fn eval(&self, mu: f64) -> f64 {
        match self {
            FieldCoupling::Matched(sigma) => sigma.density(mu).max(0.0).sqrt(),
            FieldCoupling::Tabulated { grid, values } => {
                if mu < grid[0] || mu > grid[grid.len() - 1] {
                    return 0.0;
                }
                let i = grid.partition_point(|g| *g <= mu).clamp(1, grid.len() - 1);
                let t = (mu - grid[i - 1]) / (grid[i] - grid[i - 1]);
                values[i - 1] + t * (values[i] - values[i - 1])
            }
            FieldCoupling::Custom(f) => f(mu),
        }
    }
}

/// `f(mu^2) = sqrt(2 mu) r(mu^2)`.
pub fn coupling_matched(sigma: &SpectralDensity) -> Result<FieldCoupling> {
    if sigma.is_point_mass() {
        return Err(Error::domain("a point mass has no density to match"));
    }
    sigma.require_normalized()?;
    Ok(FieldCoupling::Matched(sigma.clone()))
}

fn finite_support(sigma: &SpectralDensity) -> Result<Vec<f64>> {
    match sigma {
        SpectralDensity::PointMass { .. } => Err(Error::domain("a point mass has no density weight")),
        SpectralDensity::BreitWignerFullLine { .. } => Err(Error::domain(
            "two-point kernels need a spectrum on mu >= 0; use a truncated Breit-Wigner",
        )),
        _ => Ok(sigma.breakpoints()),
    }
}

fn check(s: f64, dtau: f64) -> Result<()> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("momentum invariant must be >= 0, got {s}")));
    }
    if !dtau.is_finite() {
        return Err(Error::domain("time separation must be finite"));
    }
    Ok(())
}

/// `A(s, dtau) = int dmu mu |f|^2 / eps exp(i eps dtau)` over the support of `sigma`.
pub fn pair_contribution(
    f: &FieldCoupling,
    sigma: &SpectralDensity,
    s: f64,
    dtau: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check(s, dtau)?;
    cfg.validate()?;
    let breaks = finite_support(sigma)?;
    let est = quadrature::oscillatory(
        |mu| {
            let fv = f.eval(mu);
            if fv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let e = energy(mu, s);
            Complex64::from_polar(mu * fv * fv / e, e * dtau)
        },
        &breaks,
        dtau.abs(),
        1.0,
        cfg,
    )?;
    Ok(est.value)
}

/// `B(s) = |int dmu 2 mu r f / sqrt(2 eps)|^2`.
pub fn projection_weight(f: &FieldCoupling, sigma: &SpectralDensity, s: f64) -> Result<f64> {
    check(s, 0.0)?;
    let breaks = finite_support(sigma)?;
    let g = |mu: f64| {
        if !(mu > 0.0) {
            return 0.0;
        }
        let r = (sigma.density(mu) / (2.0 * mu)).sqrt();
        2.0 * mu * r * f.eval(mu) / (2.0 * energy(mu, s)).sqrt()
    };
    let b = quadrature::integrate(g, &breaks, 1e-15, 1e-14)?.value;
    Ok(b * b)
}

/// `I_s(-dtau) B(s)`.
pub fn projected_contribution(
    f: &FieldCoupling,
    sigma: &SpectralDensity,
    s: f64,
    dtau: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check(s, dtau)?;
    finite_support(sigma)?;
    let b = projection_weight(f, sigma, s)?;
    if b == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(survival_amplitude(sigma, s, -dtau, cfg)?.amplitude * b)
}

/// Pair contribution minus projected contribution.
pub fn residual(
    f: &FieldCoupling,
    sigma: &SpectralDensity,
    s: f64,
    dtau: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(pair_contribution(f, sigma, s, dtau, cfg)? - projected_contribution(f, sigma, s, dtau, cfg)?)
}

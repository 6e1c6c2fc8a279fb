//! A finite stand-in for the continuum of masses.
//!
//! An SP-momentum eigenstate is approximated by amplitudes `c_i` on a mass
//! grid with `|c_i|^2 ~ sigma(mu_i) dmu_i`. Every survival quantity becomes a
//! finite sum, which makes this an independent oracle for the continuum
//! integrals, and the operator decompositions can be checked directly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::SpectralDensity;
use crate::survival::energy;

/// Spreads below this count as zero: the state is an eigenstate.
pub const SPREAD_FLOOR: f64 = 1e-13;

/// Amplitudes on a strictly increasing mass grid, with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteState {
    grid: Vec<f64>,
    amps: Vec<Complex64>,
    s: f64,
}

fn norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

impl DiscreteState {
    pub fn new(grid: Vec<f64>, amps: Vec<Complex64>, s: f64) -> Result<Self> {
        if grid.is_empty() || grid.len() != amps.len() {
            return Err(Error::invalid("grid and amplitudes must be non-empty and of equal length"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("mass grid must be finite and strictly increasing"));
        }
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("momentum invariant must be >= 0, got {s}")));
        }
        let n = norm(&amps);
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("state norm {n} differs from one")));
        }
        Ok(DiscreteState { grid, amps, s })
    }

    /// Uniform grid over the support with trapezoid cell widths,
    /// `c_i = sqrt(sigma(mu_i) dmu_i)` renormalized. A single point sits at
    /// the reference mass.
    pub fn from_spectral(sigma: &SpectralDensity, s: f64, n: usize) -> Result<Self> {
        if let Some(single) = Self::single_point(sigma, s, n)? {
            return Ok(single);
        }
        let (lo, hi) = sigma.support();
        let h = (hi - lo) / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| if i + 1 == n { hi } else { lo + i as f64 * h }).collect();
        let widths: Vec<f64> =
            (0..n).map(|i| if i == 0 || i + 1 == n { 0.5 * h } else { h }).collect();
        Self::weighted(sigma, grid, &widths, s)
    }

    /// Piecewise-uniform grid with half the points within five widths of a
    /// Breit–Wigner peak and the rest spread over the remaining support.
    /// Cell widths follow the composite trapezoid rule, so the sums keep
    /// second-order accuracy. Truncated Breit–Wigner only.
    pub fn from_spectral_refined(sigma: &SpectralDensity, s: f64, n: usize) -> Result<Self> {
        let SpectralDensity::BreitWignerTruncated(t) = sigma else {
            return Err(Error::domain("peak refinement needs a truncated Breit-Wigner"));
        };
        if let Some(single) = Self::single_point(sigma, s, n)? {
            return Ok(single);
        }
        let (lo, hi) = t.bounds();
        let core = ((t.mu0() - 5.0 * t.gamma()).max(lo), (t.mu0() + 5.0 * t.gamma()).min(hi));
        let mut zones: Vec<(f64, f64)> = Vec::new();
        for z in [(lo, core.0), core, (core.1, hi)] {
            if z.1 > z.0 {
                zones.push(z);
            }
        }
        if zones.len() == 1 || n < 4 * zones.len() {
            return Self::from_spectral(sigma, s, n);
        }
        let intervals = n - 1;
        let core_len = core.1 - core.0;
        let outer_len = (hi - lo) - core_len;
        let core_cells = (intervals / 2).max(1);
        let mut cells: Vec<usize> = zones
            .iter()
            .map(|z| {
                if *z == core {
                    core_cells
                } else {
                    (((intervals - core_cells) as f64 * (z.1 - z.0) / outer_len).round() as usize).max(1)
                }
            })
            .collect();
        let assigned: usize = cells.iter().sum();
        let ci = zones.iter().position(|z| *z == core).unwrap_or(0);
        cells[ci] = (cells[ci] + intervals).saturating_sub(assigned).max(1);
        let mut grid = vec![lo];
        let mut widths = vec![0.0];
        for (z, &m) in zones.iter().zip(&cells) {
            let h = (z.1 - z.0) / m as f64;
            *widths.last_mut().unwrap() += 0.5 * h;
            for k in 1..=m {
                grid.push(if k == m { z.1 } else { z.0 + k as f64 * h });
                widths.push(if k == m { 0.5 * h } else { h });
            }
        }
        Self::weighted(sigma, grid, &widths, s)
    }

    fn single_point(sigma: &SpectralDensity, s: f64, n: usize) -> Result<Option<Self>> {
        match (sigma, n) {
            (_, 0) => Err(Error::domain("need at least one grid point")),
            (SpectralDensity::BreitWignerFullLine { .. }, _) => {
                Err(Error::domain("a discrete grid needs a finite support"))
            }
            (_, 1) => Ok(Some(Self::new(vec![sigma.reference_mass()?], vec![Complex64::new(1.0, 0.0)], s)?)),
            (SpectralDensity::PointMass { .. }, _) => {
                Err(Error::domain("a point mass admits only a single grid point"))
            }
            _ => Ok(None),
        }
    }

    fn weighted(sigma: &SpectralDensity, grid: Vec<f64>, widths: &[f64], s: f64) -> Result<Self> {
        let mut amps: Vec<Complex64> = grid
            .iter()
            .zip(widths)
            .map(|(&mu, &w)| Complex64::new((sigma.density(mu) * w).max(0.0).sqrt(), 0.0))
            .collect();
        let n = norm(&amps);
        if !(n > 0.0) {
            return Err(Error::domain("density vanishes on every grid point"));
        }
        amps.iter_mut().for_each(|c| *c /= n);
        Self::new(grid, amps, s)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `<self|other>`; both states must share the grid.
    pub fn inner(&self, other: &DiscreteState) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::domain("states live on different grids"));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `c_i -> c_i exp(-i sqrt(mu_i^2 + s) tau)`.
    pub fn evolve(&self, tau: f64) -> DiscreteState {
        let amps = self
            .grid
            .iter()
            .zip(&self.amps)
            .map(|(&mu, c)| c * Complex64::from_polar(1.0, -energy(mu, self.s) * tau))
            .collect();
        DiscreteState { amps, ..self.clone() }
    }
}

/// `<state|evolve(state, tau)> = sum |c_i|^2 exp(-i sqrt(mu_i^2 + s) tau)`.
pub fn survival_oracle(state: &DiscreteState, tau: f64) -> Complex64 {
    state
        .grid
        .iter()
        .zip(&state.amps)
        .map(|(&mu, c)| Complex64::from_polar(c.norm_sqr(), -energy(mu, state.s) * tau))
        .sum()
}

/// `A psi = mean psi + spread psi_perp` with `psi_perp` a unit vector
/// orthogonal to `psi`, absent when `psi` is an eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub mean: f64,
    pub spread: f64,
    pub orthogonal: Option<DiscreteState>,
}

/// Decomposes a diagonal real operator applied to `state`.
pub fn component_decomposition(a: &[f64], state: &DiscreteState) -> Result<Decomposition> {
    if a.len() != state.len() {
        return Err(Error::domain("operator and state sizes differ"));
    }
    let mean: f64 = a.iter().zip(&state.amps).map(|(x, c)| x * c.norm_sqr()).sum();
    let rest: Vec<Complex64> = a.iter().zip(&state.amps).map(|(x, c)| c * (x - mean)).collect();
    let spread = norm(&rest);
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    if spread <= SPREAD_FLOOR * scale {
        return Ok(Decomposition { mean, spread: 0.0, orthogonal: None });
    }
    let amps = rest.into_iter().map(|c| c / spread).collect();
    let orthogonal = DiscreteState { amps, ..state.clone() };
    Ok(Decomposition { mean, spread, orthogonal: Some(orthogonal) })
}

/// Decomposition of the squared mass `diag(mu_i^2)`: `mean` is `kappa^2`.
pub fn mass_squared_decomposition(state: &DiscreteState) -> Result<Decomposition> {
    let a: Vec<f64> = state.grid.iter().map(|m| m * m).collect();
    component_decomposition(&a, state)
}

/// `evolve(state, tau) = state survival + orthogonal weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayDecomposition {
    pub survival: Complex64,
    pub orthogonal: Option<DiscreteState>,
    /// `sqrt(1 - |survival|^2)`.
    pub weight: f64,
}

pub fn decay_decomposition(state: &DiscreteState, tau: f64) -> DecayDecomposition {
    let evolved = state.evolve(tau);
    let survival = survival_oracle(state, tau);
    let rest: Vec<Complex64> =
        evolved.amps.iter().zip(&state.amps).map(|(e, c)| e - c * survival).collect();
    let weight = norm(&rest);
    if weight <= SPREAD_FLOOR {
        return DecayDecomposition { survival, orthogonal: None, weight: 0.0 };
    }
    let amps = rest.into_iter().map(|c| c / weight).collect();
    DecayDecomposition { survival, orthogonal: Some(DiscreteState { amps, ..state.clone() }), weight }
}

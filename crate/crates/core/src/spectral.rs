//! Rest-mass spectral densities `sigma(mu)` and their moments.
//!
//! Breit–Wigner integrals are evaluated after the substitution
//! `mu = mu0 + (gamma / 2) tan(theta)`, under which `sigma(mu) dmu = dtheta / pi`.
//! That flattens the resonance peak, so smooth weights integrate to near
//! machine precision with a handful of Kronrod panels.

use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::quadrature;

/// Half-width of the default Breit–Wigner window, in units of the width.
pub const DEFAULT_WINDOW: f64 = 50.0;

const INTEGRAL_TOL: f64 = 1e-14;

/// A Breit–Wigner density restricted to `[lo, hi]` and rescaled by `scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedBreitWigner {
    mu0: f64,
    gamma: f64,
    lo: f64,
    hi: f64,
    scale: f64,
}

impl TruncatedBreitWigner {
    pub fn mu0(&self) -> f64 {
        self.mu0
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }
    /// Multiplier applied to the full-line density inside the window.
    pub fn scale(&self) -> f64 {
        self.scale
    }
    /// Full-line probability mass inside the window (arctangent primitive).
    pub fn window_mass(&self) -> f64 {
        bw_mass(self.mu0, self.gamma, self.lo, self.hi)
    }
}

/// A density tabulated on a strictly increasing grid and interpolated with
/// a monotone piecewise-cubic (Fritsch–Carlson) Hermite spline.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    grid: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Tabulated {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn eval(&self, mu: f64) -> f64 {
        let n = self.grid.len();
        if !(mu >= self.grid[0] && mu <= self.grid[n - 1]) {
            return 0.0;
        }
        let k = match self.grid.partition_point(|&g| g <= mu) {
            0 => 0,
            i if i >= n => n - 2,
            i => i - 1,
        };
        let (x0, x1) = (self.grid[k], self.grid[k + 1]);
        let h = x1 - x0;
        let t = (mu - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * self.values[k]
            + (t3 - 2.0 * t2 + t) * h * self.slopes[k]
            + (-2.0 * t3 + 3.0 * t2) * self.values[k + 1]
            + (t3 - t2) * h * self.slopes[k + 1];
        v.max(0.0)
    }

    /// Exact integral of the Hermite interpolant.
    fn mass(&self) -> f64 {
        let mut total = 0.0;
        for k in 0..self.grid.len() - 1 {
            let h = self.grid[k + 1] - self.grid[k];
            total += h * (self.values[k] + self.values[k + 1]) / 2.0
                + h * h * (self.slopes[k] - self.slopes[k + 1]) / 12.0;
        }
        total
    }

    fn rescaled(&self, factor: f64) -> Tabulated {
        Tabulated {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
            slopes: self.slopes.iter().map(|v| v * factor).collect(),
        }
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0], delta[0]];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= 0.0 {
            0.0
        } else if d0 * d1 <= 0.0 && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// The mass spectral density of an unstable state.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDensity {
    /// Lorentzian `(gamma / 2pi) / ((mu - mu0)^2 + gamma^2 / 4)` on the whole line.
    BreitWignerFullLine { mu0: f64, gamma: f64 },
    BreitWignerTruncated(TruncatedBreitWigner),
    Tabulated(Tabulated),
    /// A stable state of sharp mass; has no density function.
    PointMass { mu0: f64 },
}

/// Moments of the squared-mass operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMoments {
    /// `<P^2> = int sigma mu^2`.
    pub mean_square: f64,
    /// `Delta(P^2) = sqrt(<P^4> - <P^2>^2)`.
    pub spread: f64,
    /// `int sigma mu^-3`.
    pub inverse_cube: f64,
}

fn bw_raw(mu0: f64, gamma: f64, mu: f64) -> f64 {
    let x = mu - mu0;
    (gamma / (2.0 * PI)) / (x * x + 0.25 * gamma * gamma)
}

fn bw_theta(mu0: f64, gamma: f64, mu: f64) -> f64 {
    (2.0 * (mu - mu0) / gamma).atan()
}

fn bw_mass(mu0: f64, gamma: f64, lo: f64, hi: f64) -> f64 {
    (bw_theta(mu0, gamma, hi) - bw_theta(mu0, gamma, lo)) / PI
}

fn check_bw(mu0: f64, gamma: f64) -> Result<()> {
    if !(mu0 > 0.0 && mu0.is_finite()) {
        return Err(Error::domain(format!("resonance mass must be positive, got {mu0}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain(format!("width must be positive, got {gamma}")));
    }
    Ok(())
}

/// Theta-space breakpoints bracketing the peak and the window edges.
fn theta_breaks(ta: f64, tb: f64) -> Vec<f64> {
    let mut b = vec![ta];
    for t in [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5] {
        if t > ta && t < tb {
            b.push(t);
        }
    }
    b.push(tb);
    b
}

impl SpectralDensity {
    pub fn breit_wigner(mu0: f64, gamma: f64) -> Result<Self> {
        check_bw(mu0, gamma)?;
        Ok(SpectralDensity::BreitWignerFullLine { mu0, gamma })
    }

    /// Breit–Wigner on `[lo, hi]`, renormalized to unit mass.
    pub fn breit_wigner_truncated(mu0: f64, gamma: f64, lo: f64, hi: f64) -> Result<Self> {
        Self::breit_wigner_clipped(mu0, gamma, lo, hi)?.normalize()
    }

    /// Breit–Wigner on the default window `[max(0, mu0 - 50 gamma), mu0 + 50 gamma]`,
    /// renormalized.
    pub fn breit_wigner_window(mu0: f64, gamma: f64) -> Result<Self> {
        check_bw(mu0, gamma)?;
        let lo = (mu0 - DEFAULT_WINDOW * gamma).max(0.0);
        Self::breit_wigner_truncated(mu0, gamma, lo, mu0 + DEFAULT_WINDOW * gamma)
    }

    /// Breit–Wigner restricted to `[lo, hi]` without renormalization.
    pub fn breit_wigner_clipped(mu0: f64, gamma: f64, lo: f64, hi: f64) -> Result<Self> {
        check_bw(mu0, gamma)?;
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::domain(format!("invalid window [{lo}, {hi}]")));
        }
        Ok(SpectralDensity::BreitWignerTruncated(TruncatedBreitWigner {
            mu0,
            gamma,
            lo,
            hi,
            scale: 1.0,
        }))
    }

    pub fn point_mass(mu0: f64) -> Result<Self> {
        if !(mu0 > 0.0 && mu0.is_finite()) {
            return Err(Error::domain(format!("mass must be positive, got {mu0}")));
        }
        Ok(SpectralDensity::PointMass { mu0 })
    }

    /// Tabulated density from `(mu, weight)` samples; not normalized.
    pub fn tabulated(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::invalid("grid and values differ in length"));
        }
        if grid.len() < 2 {
            return Err(Error::invalid("tabulated density needs at least two points"));
        }
        if !grid.iter().all(|g| g.is_finite()) || grid[0] < 0.0 {
            return Err(Error::invalid("mass grid must be finite and non-negative"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("mass grid must be strictly increasing"));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::invalid("tabulated weights must be finite and non-negative"));
        }
        let slopes = pchip_slopes(&grid, &values);
        Ok(SpectralDensity::Tabulated(Tabulated { grid, values, slopes }))
    }

    /// Parses two-column `mu weight` text; `#` starts a comment line.
    pub fn parse_tabulated(text: &str) -> Result<Self> {
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> =
                line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
            if cols.len() != 2 {
                return Err(Error::invalid(format!("line {}: expected two columns", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::invalid(format!("line {}: bad number '{s}'", lineno + 1)))
            };
            grid.push(parse(cols[0])?);
            values.push(parse(cols[1])?);
        }
        Self::tabulated(grid, values)
    }

    pub fn load_tabulated(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        Self::parse_tabulated(&text)
    }

    pub fn is_point_mass(&self) -> bool {
        matches!(self, SpectralDensity::PointMass { .. })
    }

    /// Support interval; infinite for the full-line Breit–Wigner.
    pub fn support(&self) -> (f64, f64) {
        match self {
            SpectralDensity::BreitWignerFullLine { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            SpectralDensity::BreitWignerTruncated(t) => (t.lo, t.hi),
            SpectralDensity::Tabulated(t) => (t.grid[0], t.grid[t.grid.len() - 1]),
            SpectralDensity::PointMass { mu0 } => (*mu0, *mu0),
        }
    }

    /// Peak mass for resonances, mean mass for tabulated densities.
    pub fn reference_mass(&self) -> Result<f64> {
        match self {
            SpectralDensity::BreitWignerFullLine { mu0, .. } | SpectralDensity::PointMass { mu0 } => {
                Ok(*mu0)
            }
            SpectralDensity::BreitWignerTruncated(t) => Ok(t.mu0),
            SpectralDensity::Tabulated(_) => self.normalize()?.moment(1),
        }
    }

    /// Density value; zero outside the support and for the point mass.
    pub fn density(&self, mu: f64) -> f64 {
        match self {
            SpectralDensity::BreitWignerFullLine { mu0, gamma } => bw_raw(*mu0, *gamma, mu),
            SpectralDensity::BreitWignerTruncated(t) => {
                if mu >= t.lo && mu <= t.hi {
                    t.scale * bw_raw(t.mu0, t.gamma, mu)
                } else {
                    0.0
                }
            }
            SpectralDensity::Tabulated(t) => t.eval(mu),
            SpectralDensity::PointMass { .. } => 0.0,
        }
    }

    /// Total probability mass.
    pub fn total_mass(&self) -> f64 {
        match self {
            SpectralDensity::BreitWignerFullLine { .. } | SpectralDensity::PointMass { .. } => 1.0,
            SpectralDensity::BreitWignerTruncated(t) => t.scale * t.window_mass(),
            SpectralDensity::Tabulated(t) => t.mass(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= 1e-9
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(self.total_mass()))
        }
    }

    /// A copy rescaled to unit total mass.
    pub fn normalize(&self) -> Result<Self> {
        let mass = self.total_mass();
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::domain(format!("cannot normalize a density of mass {mass}")));
        }
        Ok(match self {
            SpectralDensity::BreitWignerTruncated(t) => {
                SpectralDensity::BreitWignerTruncated(TruncatedBreitWigner {
                    scale: 1.0 / t.window_mass(),
                    ..t.clone()
                })
            }
            SpectralDensity::Tabulated(t) => SpectralDensity::Tabulated(t.rescaled(1.0 / mass)),
            other => other.clone(),
        })
    }

    /// The density of `lambda * M` when `M` has this density.
    pub fn mass_rescaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain("mass rescaling factor must be positive"));
        }
        Ok(match self {
            SpectralDensity::BreitWignerFullLine { mu0, gamma } => {
                SpectralDensity::BreitWignerFullLine { mu0: mu0 * lambda, gamma: gamma * lambda }
            }
            SpectralDensity::BreitWignerTruncated(t) => {
                SpectralDensity::BreitWignerTruncated(TruncatedBreitWigner {
                    mu0: t.mu0 * lambda,
                    gamma: t.gamma * lambda,
                    lo: t.lo * lambda,
                    hi: t.hi * lambda,
                    scale: t.scale,
                })
            }
            SpectralDensity::Tabulated(t) => SpectralDensity::Tabulated(Tabulated {
                grid: t.grid.iter().map(|g| g * lambda).collect(),
                values: t.values.iter().map(|v| v / lambda).collect(),
                slopes: t.slopes.iter().map(|v| v / (lambda * lambda)).collect(),
            }),
            SpectralDensity::PointMass { mu0 } => SpectralDensity::PointMass { mu0: mu0 * lambda },
        })
    }

    /// Breakpoints for quadrature over a finite support: the window edges plus
    /// geometric shells around a resonance peak, or the tabulation grid.
    /// The full-line model is cut to its default window.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            SpectralDensity::BreitWignerFullLine { mu0, gamma } => {
                let lo = (mu0 - DEFAULT_WINDOW * gamma).max(0.0);
                peak_breaks(*mu0, *gamma, lo, mu0 + DEFAULT_WINDOW * gamma)
            }
            SpectralDensity::BreitWignerTruncated(t) => peak_breaks(t.mu0, t.gamma, t.lo, t.hi),
            SpectralDensity::Tabulated(t) => t.grid.clone(),
            SpectralDensity::PointMass { mu0 } => vec![*mu0],
        }
    }

    /// `int sigma(mu) g(mu) dmu` over the support, for smooth `g`.
    pub fn weighted_integral<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        match self {
            SpectralDensity::PointMass { mu0 } => Ok(g(*mu0)),
            SpectralDensity::BreitWignerFullLine { mu0, gamma } => {
                let (m, w) = (*mu0, *gamma);
                let h = |th: f64| g(m + 0.5 * w * th.tan()) / PI;
                let half = 0.5 * PI;
                Ok(quadrature::integrate(h, &theta_breaks(-half, half), INTEGRAL_TOL, INTEGRAL_TOL)?
                    .value)
            }
            SpectralDensity::BreitWignerTruncated(t) => {
                let (m, w, sc) = (t.mu0, t.gamma, t.scale);
                let h = |th: f64| sc * g(m + 0.5 * w * th.tan()) / PI;
                let (ta, tb) = (bw_theta(m, w, t.lo), bw_theta(m, w, t.hi));
                Ok(quadrature::integrate(h, &theta_breaks(ta, tb), INTEGRAL_TOL, INTEGRAL_TOL)?.value)
            }
            SpectralDensity::Tabulated(t) => {
                let h = |mu: f64| t.eval(mu) * g(mu);
                Ok(quadrature::integrate(h, &t.grid, INTEGRAL_TOL, INTEGRAL_TOL)?.value)
            }
        }
    }

    /// `int sigma(mu)^2 g(mu) dmu` over a finite support, for smooth `g`.
    /// The point mass has no square-integrable density.
    pub fn weighted_square_integral<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        match self {
            SpectralDensity::PointMass { .. } => Err(Error::Stable),
            SpectralDensity::BreitWignerFullLine { mu0, gamma } => {
                let (m, w) = (*mu0, *gamma);
                let c = 2.0 / (PI * PI * w);
                let h = |th: f64| {
                    let cs = th.cos();
                    c * cs * cs * g(m + 0.5 * w * th.tan())
                };
                let half = 0.5 * PI;
                Ok(quadrature::integrate(h, &theta_breaks(-half, half), INTEGRAL_TOL, INTEGRAL_TOL)?
                    .value)
            }
            SpectralDensity::BreitWignerTruncated(t) => {
                let (m, w) = (t.mu0, t.gamma);
                let c = 2.0 * t.scale * t.scale / (PI * PI * w);
                let h = |th: f64| {
                    let cs = th.cos();
                    c * cs * cs * g(m + 0.5 * w * th.tan())
                };
                let (ta, tb) = (bw_theta(m, w, t.lo), bw_theta(m, w, t.hi));
                Ok(quadrature::integrate(h, &theta_breaks(ta, tb), INTEGRAL_TOL, INTEGRAL_TOL)?.value)
            }
            SpectralDensity::Tabulated(t) => {
                let h = |mu: f64| {
                    let v = t.eval(mu);
                    v * v * g(mu)
                };
                Ok(quadrature::integrate(h, &t.grid, INTEGRAL_TOL, INTEGRAL_TOL)?.value)
            }
        }
    }

    /// `int sigma^2 dmu`; `1 / (pi gamma)` for the full-line Breit–Wigner.
    pub fn square_integral(&self) -> Result<f64> {
        match self {
            SpectralDensity::BreitWignerFullLine { gamma, .. } => Ok(1.0 / (PI * gamma)),
            _ => self.weighted_square_integral(|_| 1.0),
        }
    }

    /// `int sigma(mu) mu^k dmu`.
    pub fn moment(&self, k: i32) -> Result<f64> {
        if let SpectralDensity::PointMass { mu0 } = self {
            return Ok(mu0.powi(k));
        }
        if k == 0 {
            return Ok(self.total_mass());
        }
        let (lo, _) = self.support();
        if let SpectralDensity::BreitWignerFullLine { .. } = self {
            return Err(Error::Divergent(format!(
                "moment {k} of the full-line Breit-Wigner does not exist"
            )));
        }
        if k < 0 && !(lo > 0.0) {
            return Err(Error::Divergent(format!(
                "negative moment {k} with support touching zero"
            )));
        }
        self.weighted_integral(|mu| mu.powi(k))
    }

    pub fn moments(&self) -> Result<SpectralMoments> {
        let m2 = self.moment(2)?;
        let m4 = self.moment(4)?;
        Ok(SpectralMoments {
            mean_square: m2,
            spread: (m4 - m2 * m2).max(0.0).sqrt(),
            inverse_cube: self.moment(-3)?,
        })
    }

    /// `|r(mu^2)| = sqrt(sigma(mu) / (2 mu))`.
    pub fn r_weight(&self, mu: f64) -> Result<f64> {
        if self.is_point_mass() {
            return Err(Error::domain("point mass has no density weight"));
        }
        if !(mu > 0.0) {
            return Err(Error::domain(format!("r weight needs mu > 0, got {mu}")));
        }
        Ok((self.density(mu) / (2.0 * mu)).sqrt())
    }
}

fn peak_breaks(mu0: f64, gamma: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    if mu0 > lo && mu0 < hi {
        pts.push(mu0);
    }
    let mut d = 0.5 * gamma;
    while d < (hi - lo) {
        for p in [mu0 - d, mu0 + d] {
            if p > lo && p < hi {
                pts.push(p);
            }
        }
        d *= 2.0;
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // frozen from an independent 30-digit quadrature of the raw Lorentzian on [50, 150]
    const TRUNC_INV_CUBE: f64 = 1.012_247_250_312_391_8e-6;
    const TRUNC_M2: f64 = 10_015.767_461_235_64;
    const TRUNC_M4: f64 = 100_959_391.616_636_13;
    const TRUNC_SQ: f64 = 0.322_401_492_001_553_26;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn bw_peak_and_symmetry() {
        let s = SpectralDensity::breit_wigner(100.0, 2.0).unwrap();
        assert!(rel(s.density(100.0), 2.0 / (PI * 2.0)) < 1e-15);
        for x in [0.1, 1.0, 7.5, 300.0] {
            assert_eq!(s.density(100.0 + x), s.density(100.0 - x));
        }
    }

    #[test]
    fn tabulated_outside_grid_is_zero() {
        let s = SpectralDensity::tabulated(vec![1.0, 2.0, 3.0], vec![0.5, 1.0, 0.5]).unwrap();
        assert_eq!(s.density(0.5), 0.0);
        assert_eq!(s.density(3.5), 0.0);
        assert!(s.density(2.0) > 0.99);
    }

    #[test]
    fn normalize_examples() {
        let s = SpectralDensity::breit_wigner(10.0, 1.0).unwrap();
        assert_eq!(s.normalize().unwrap(), s);

        let clipped = SpectralDensity::breit_wigner_clipped(100.0, 1.0, 50.0, 150.0).unwrap();
        let tail = 1.0 - 2.0 / PI * 100f64.atan();
        let n = clipped.normalize().unwrap();
        let SpectralDensity::BreitWignerTruncated(t) = &n else { panic!() };
        assert!(rel(t.scale(), 1.0 / (1.0 - tail)) < 1e-12);
        assert!((n.total_mass() - 1.0).abs() < 1e-12);
        assert!(rel(n.density(120.0), clipped.density(120.0) / (1.0 - tail)) < 1e-12);

        let flat = SpectralDensity::tabulated(vec![1.0, 1.5, 2.0], vec![3.0, 3.0, 3.0]).unwrap();
        let flat = flat.normalize().unwrap();
        for mu in [1.0, 1.2, 1.5, 1.9, 2.0] {
            assert!((flat.density(mu) - 1.0).abs() < 1e-14);
        }
        let zero = SpectralDensity::tabulated(vec![1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert!(zero.normalize().is_err());
    }

    #[test]
    fn moments_of_truncated_bw() {
        let s = SpectralDensity::breit_wigner_window(100.0, 1.0).unwrap();
        assert!((s.moment(0).unwrap() - 1.0).abs() < 1e-12);
        assert!(rel(s.moment(-3).unwrap(), TRUNC_INV_CUBE) < 1e-10);
        assert!(rel(s.moment(2).unwrap(), TRUNC_M2) < 1e-10);
        let m = s.moments().unwrap();
        assert!(rel(m.inverse_cube, TRUNC_INV_CUBE) < 1e-10);
        let spread = (TRUNC_M4 - TRUNC_M2 * TRUNC_M2).sqrt();
        assert!(rel(m.spread, spread) < 1e-6);
        assert!(rel(s.square_integral().unwrap(), TRUNC_SQ) < 1e-10);
        // deviation from mu0^-3 is a small positive correction
        let dev = TRUNC_INV_CUBE * 1e6 - 1.0;
        assert!(dev > 0.0 && dev < 0.05);
    }

    #[test]
    fn point_mass_moments() {
        let s = SpectralDensity::point_mass(3.0).unwrap();
        for k in -3..=4 {
            assert!(rel(s.moment(k).unwrap(), 3f64.powi(k)) < 1e-15);
        }
        let m = s.moments().unwrap();
        assert_eq!(m.spread, 0.0);
        assert!(s.r_weight(3.0).is_err());
        assert_eq!(s.square_integral(), Err(Error::Stable));
    }

    #[test]
    fn divergent_moments() {
        let s = SpectralDensity::breit_wigner(100.0, 1.0).unwrap();
        assert_eq!(s.moment(0).unwrap(), 1.0);
        assert!(matches!(s.moment(1), Err(Error::Divergent(_))));
        assert!(matches!(s.moment(2), Err(Error::Divergent(_))));
        assert!(matches!(s.moment(-3), Err(Error::Divergent(_))));
        let touching = SpectralDensity::breit_wigner_window(10.0, 1.0).unwrap();
        assert_eq!(touching.support().0, 0.0);
        assert!(matches!(touching.moment(-3), Err(Error::Divergent(_))));
    }

    #[test]
    fn r_weight_round_trip() {
        let s = SpectralDensity::breit_wigner_window(5.0, 0.3).unwrap();
        for mu in [4.0, 5.0, 5.7, 12.0] {
            let r = s.r_weight(mu).unwrap();
            assert!((2.0 * mu * r * r - s.density(mu)).abs() <= 1e-12 * s.density(mu).max(1e-300));
        }
        assert_eq!(s.r_weight(30.0).unwrap(), 0.0);
        assert!(s.r_weight(0.0).is_err());
        assert!(s.r_weight(-1.0).is_err());
    }

    #[test]
    fn full_line_square_integral_halving() {
        for gamma in [0.4, 1.0, 3.0] {
            let a = SpectralDensity::breit_wigner(50.0, gamma).unwrap();
            let b = SpectralDensity::breit_wigner(50.0, gamma / 2.0).unwrap();
            let qa = a.weighted_square_integral(|_| 1.0).unwrap();
            let qb = b.weighted_square_integral(|_| 1.0).unwrap();
            assert!(rel(qb / qa, 2.0) < 1e-9);
            assert!(rel(qa, 1.0 / (PI * gamma)) < 1e-9);
        }
    }

    #[test]
    fn parse_table() {
        let text = "# mu weight\n1.0 0\n\n1.5, 2\n2.0\t0\n";
        let s = SpectralDensity::parse_tabulated(text).unwrap();
        assert_eq!(s.support(), (1.0, 2.0));
        assert!(SpectralDensity::parse_tabulated("1 1\n1 2\n").is_err());
        assert!(SpectralDensity::parse_tabulated("1 1\n2 -1\n").is_err());
        assert!(SpectralDensity::parse_tabulated("1 1 3\n2 1\n").is_err());
        assert!(SpectralDensity::parse_tabulated("1 x\n2 1\n").is_err());
    }

    #[test]
    fn pchip_does_not_overshoot() {
        let s = SpectralDensity::tabulated(
            vec![0.0, 1.0, 2.0, 2.1, 3.0, 4.0],
            vec![0.0, 0.0, 5.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        for i in 0..=400 {
            let mu = i as f64 * 0.01;
            let v = s.density(mu);
            assert!((0.0..=5.0).contains(&v), "mu={mu} v={v}");
        }
        let exact_mass = s.total_mass();
        let quad = quadrature::integrate(|m| s.density(m), s.breakpoints().as_slice(), 1e-13, 1e-13)
            .unwrap()
            .value;
        assert!((exact_mass - quad).abs() < 1e-12);
    }

    #[test]
    fn mass_rescaling_inverse_cube() {
        let s = SpectralDensity::breit_wigner_window(100.0, 1.0).unwrap();
        let t = s.mass_rescaled(2.5).unwrap();
        assert!((t.total_mass() - 1.0).abs() < 1e-12);
        assert!(rel(t.moment(-3).unwrap(), s.moment(-3).unwrap() / 2.5f64.powi(3)) < 1e-12);
    }

    proptest! {
        #[test]
        fn moments_bounded_by_support(mu0 in 5.0..50.0f64, width in 0.05..2.0f64, k in -3i32..=4) {
            let s = SpectralDensity::breit_wigner_truncated(mu0, width, mu0 * 0.5, mu0 * 1.5).unwrap();
            prop_assert!((s.moment(0).unwrap() - 1.0).abs() <= 1e-9);
            let (a, b) = s.support();
            let m = s.moment(k).unwrap();
            let (lo, hi) = if k >= 0 { (a.powi(k), b.powi(k)) } else { (b.powi(k), a.powi(k)) };
            prop_assert!(m >= lo * (1.0 - 1e-12) && m <= hi * (1.0 + 1e-12));
        }

        #[test]
        fn tabulated_normalizes(vals in proptest::collection::vec(0.01..5.0f64, 3..12)) {
            let grid: Vec<f64> = (0..vals.len()).map(|i| 1.0 + i as f64 * 0.3).collect();
            let s = SpectralDensity::tabulated(grid, vals).unwrap().normalize().unwrap();
            prop_assert!((s.moment(0).unwrap() - 1.0).abs() <= 1e-9);
        }
    }
}

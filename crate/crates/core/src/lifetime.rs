//! Lifetimes `T(s) = int_0^inf P_s(tau) dtau` and their dilation.
//!
//! The closed form `T(s) = pi int sigma(mu)^2 sqrt(mu^2 + s) / mu dmu`
//! follows from Parseval applied to the survival amplitude. The direct route
//! integrates the survival probability and serves as its oracle.

use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureConfig};
use crate::spectral::SpectralDensity;
use crate::survival::{energy, survival_probability};

/// How a lifetime was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Direct,
    BwApprox,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Direct => "direct",
            Method::BwApprox => "bw-approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeResult {
    pub value: f64,
    pub method: Method,
    pub error: f64,
}

/// Which coefficients to use in the second-order expansion of the dilation
/// factor `sqrt(mu^2 + s) / mu` about `mu0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Exact first and second derivatives of the dilation factor.
    #[default]
    Derived,
    /// The commonly quoted coefficients, whose quadratic term carries
    /// `3/2 mu0^2 + 2 s` where the exact expansion has `3/2 mu0^2 + s`.
    Printed,
}

const TOL: f64 = 1e-13;

/// `sqrt(mu0^2 + s) / mu0`.
pub fn dilation_factor(mu0: f64, s: f64) -> f64 {
    energy(mu0, s) / mu0
}

fn check_s(s: f64) -> Result<()> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("momentum invariant must be >= 0, got {s}")));
    }
    Ok(())
}

/// `pi int sigma^2 sqrt(mu^2 + s) / mu`.
///
/// For the full-line Breit–Wigner at `s = 0` this is exactly `1 / gamma`.
/// For `s > 0` the integrand, odd in its sign factor, is taken literally on
/// the whole line as a principal value about `mu = 0`.
pub fn lifetime_closed_form(sigma: &SpectralDensity, s: f64) -> Result<LifetimeResult> {
    check_s(s)?;
    let value = match sigma {
        SpectralDensity::PointMass { .. } => return Err(Error::Stable),
        SpectralDensity::BreitWignerFullLine { gamma, .. } if s == 0.0 => 1.0 / gamma,
        SpectralDensity::BreitWignerFullLine { mu0, gamma } => full_line_principal_value(*mu0, *gamma, s)?,
        _ => {
            sigma.require_normalized()?;
            let (lo, _) = sigma.support();
            if s > 0.0 && lo <= 0.0 && sigma.density(lo) > 0.0 {
                return Err(Error::Divergent(
                    "lifetime integrand has a 1/mu singularity at the lower support edge".into(),
                ));
            }
            if s == 0.0 {
                PI * sigma.square_integral()?
            } else {
                PI * sigma.weighted_square_integral(|mu| energy(mu, s) / mu)?
            }
        }
    };
    Ok(LifetimeResult { value, method: Method::ClosedForm, error: value * TOL })
}

fn full_line_principal_value(mu0: f64, gamma: f64, s: f64) -> Result<f64> {
    let bw = |m: f64| (gamma / (2.0 * PI)) / ((m - mu0).powi(2) + 0.25 * gamma * gamma);
    let g = |m: f64| energy(m, s) / m;
    let half = 0.5 * mu0;
    // |mu| < mu0 / 2: fold the two signs together
    let folded = quadrature::integrate(
        |m| {
            if m == 0.0 {
                return 0.0;
            }
            let (a, b) = (bw(m), bw(-m));
            (a - b) * (a + b) * g(m)
        },
        &[0.0, 0.5 * half, half],
        0.0,
        TOL,
    )?
    .value;
    // |mu| > mu0 / 2 with mu = mu0 + (gamma / 2) tan(theta)
    let c = 2.0 / (PI * PI * gamma);
    let outer = |th: f64| {
        let cs = th.cos();
        c * cs * cs * g(mu0 + 0.5 * gamma * th.tan())
    };
    let theta = |m: f64| (2.0 * (m - mu0) / gamma).atan();
    let mut right = vec![theta(half)];
    for d in [-10.0, -1.0, 0.0, 1.0, 10.0] {
        let t = theta(mu0 + d * gamma);
        if t > right[right.len() - 1] {
            right.push(t);
        }
    }
    right.push(FRAC_PI_2);
    let upper = quadrature::integrate(outer, &right, 0.0, TOL)?.value;
    let lower = quadrature::integrate(outer, &[-FRAC_PI_2, theta(-half)], 0.0, TOL)?.value;
    Ok(PI * (folded + upper + lower))
}

/// `int_0^inf P_s(tau) dtau` by adaptive quadrature up to forty closed-form
/// lifetimes, plus an exponential tail fitted on the last tenth of the range.
pub fn lifetime_direct(sigma: &SpectralDensity, s: f64, cfg: &QuadratureConfig) -> Result<LifetimeResult> {
    cfg.validate()?;
    let estimate = lifetime_closed_form(sigma, s)?.value;
    let tau_max = 40.0 * estimate;
    let p = |tau: f64| survival_probability(sigma, s, tau, cfg);
    let budget = cfg.lifetime_rtol * estimate;

    let mut breaks = vec![0.0];
    let mut t = estimate / 8.0;
    while t < tau_max {
        breaks.push(t);
        t *= 2.0;
    }
    breaks.push(tau_max);

    let failure = std::cell::RefCell::new(None);
    let body = quadrature::integrate(
        |tau| match p(tau) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        &breaks,
        0.25 * budget,
        0.0,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }

    let (p_a, p_b) = (p(0.9 * tau_max)?, p(tau_max)?);
    let lambda = if p_a > 0.0 && p_b > 0.0 { (p_a / p_b).ln() / (0.1 * tau_max) } else { 0.0 };
    let tail = if lambda > 0.0 { p_b / lambda } else { p_a.max(p_b) * tau_max };
    if tail > 0.5 * budget {
        return Err(Error::Tail { tail, budget });
    }
    Ok(LifetimeResult { value: body.value + tail, method: Method::Direct, error: body.error + tail })
}

/// First and second derivatives of `sqrt(mu^2 + s) / mu` at `mu0`, or the
/// printed counterparts.
fn taylor_coefficients(mu0: f64, s: f64, variant: Variant) -> (f64, f64) {
    let e = energy(mu0, s);
    let e3 = e * e * e;
    let linear = -s / (mu0 * mu0 * e);
    let quadratic = match variant {
        Variant::Derived => s * (1.5 * mu0 * mu0 + s) / (mu0.powi(3) * e3),
        Variant::Printed => s * (1.5 * mu0 * mu0 + 2.0 * s) / (mu0.powi(3) * e3),
    };
    (linear, quadratic)
}

/// Second-order expansion of `sqrt(mu^2 + s) / mu` about `mu0`, evaluated at `mu`.
pub fn dilation_factor_taylor(mu0: f64, s: f64, mu: f64, variant: Variant) -> f64 {
    let (c1, c2) = taylor_coefficients(mu0, s, variant);
    let d = mu - mu0;
    dilation_factor(mu0, s) + c1 * d + c2 * d * d
}

/// Narrow-resonance lifetime `T0 (gamma0 + c2 gamma^2 / 4)` with `T0 = 1 / gamma`.
/// The linear term drops because the Breit–Wigner square is symmetric about
/// `mu0`, and `int sigma^2 (mu - mu0)^2 = gamma / (4 pi)`.
pub fn lifetime_bw_approx(mu0: f64, gamma: f64, s: f64, variant: Variant) -> Result<LifetimeResult> {
    check_s(s)?;
    if !(mu0 > 0.0 && gamma > 0.0 && mu0.is_finite() && gamma.is_finite()) {
        return Err(Error::domain("resonance mass and width must be positive"));
    }
    if gamma / mu0 >= 0.2 {
        return Err(Error::domain(format!(
            "narrow-resonance approximation needs gamma / mu0 < 0.2, got {}",
            gamma / mu0
        )));
    }
    let (_, c2) = taylor_coefficients(mu0, s, variant);
    let t0 = 1.0 / gamma;
    let value = t0 * (dilation_factor(mu0, s) + 0.25 * c2 * gamma * gamma);
    let next = t0 * dilation_factor(mu0, s) * (gamma / mu0).powi(4);
    Ok(LifetimeResult { value, method: Method::BwApprox, error: next })
}

/// One row of a dilation-deviation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationRow {
    pub s: f64,
    pub lifetime: f64,
    /// `gamma0(s) T(0)`: Einstein dilation of the rest lifetime.
    pub einstein: f64,
    /// `T(s) / (gamma0(s) T(0)) - 1`.
    pub deviation: f64,
}

/// Closed-form lifetimes across `s_grid` against Einstein dilation about the
/// reference mass of `sigma`.
pub fn deviation_report(sigma: &SpectralDensity, s_grid: &[f64]) -> Result<Vec<DeviationRow>> {
    let t0 = lifetime_closed_form(sigma, 0.0)?.value;
    let mu0 = sigma.reference_mass()?;
    s_grid
        .par_iter()
        .map(|&s| {
            let lifetime = if s == 0.0 { t0 } else { lifetime_closed_form(sigma, s)?.value };
            let einstein = dilation_factor(mu0, s) * t0;
            Ok(DeviationRow { s, lifetime, einstein, deviation: lifetime / einstein - 1.0 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn window(mu0: f64, gamma: f64) -> SpectralDensity {
        SpectralDensity::breit_wigner_window(mu0, gamma).unwrap()
    }

    #[test]
    fn full_line_rest_lifetime() {
        for g in [0.1, 1.0, 3.0] {
            let sigma = SpectralDensity::breit_wigner(100.0, g).unwrap();
            let t = lifetime_closed_form(&sigma, 0.0).unwrap();
            assert!((t.value * g - 1.0).abs() < 1e-12);
            assert_eq!(t.method, Method::ClosedForm);
        }
    }

    #[test]
    fn full_line_principal_value_oracle() {
        // mpmath, 30 digits
        let cases = [
            (100.0, 1.0, 1e4, 1.4142356679625771397),
            (100.0, 0.5, 1e4, 2.8284381756509315019),
            (10.0, 1.0, 30.0, 1.1410811246609435619),
        ];
        for (mu0, g, s, expect) in cases {
            let sigma = SpectralDensity::breit_wigner(mu0, g).unwrap();
            let t = lifetime_closed_form(&sigma, s).unwrap().value;
            assert!((t / expect - 1.0).abs() < 1e-11, "{mu0} {g} {s}: {t}");
        }
    }

    #[test]
    fn stable_and_divergent() {
        let pm = SpectralDensity::point_mass(1.0).unwrap();
        assert_eq!(lifetime_closed_form(&pm, 0.0), Err(Error::Stable));
        assert!(matches!(deviation_report(&pm, &[0.0]), Err(Error::Stable)));
        let touching = SpectralDensity::breit_wigner_truncated(1.0, 1.0, 0.0, 5.0).unwrap();
        assert!(lifetime_closed_form(&touching, 0.0).is_ok());
        assert!(matches!(lifetime_closed_form(&touching, 1.0), Err(Error::Divergent(_))));
        assert!(lifetime_closed_form(&touching, -1.0).is_err());
    }

    #[test]
    fn direct_matches_closed_form_full_line() {
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner(100.0, 1.0).unwrap();
        let t = lifetime_direct(&sigma, 0.0, &cfg).unwrap();
        assert!((t.value - 1.0).abs() < 1e-3);
        assert_eq!(t.method, Method::Direct);
    }

    #[test]
    fn direct_matches_closed_form_truncated() {
        let cfg = QuadratureConfig::default();
        let sigma = window(100.0, 1.0);
        for s in [0.0, 3e4] {
            let c = lifetime_closed_form(&sigma, s).unwrap().value;
            let d = lifetime_direct(&sigma, s, &cfg).unwrap().value;
            assert!(((d - c) / c).abs() < 1e-3, "s={s}: {d} vs {c}");
        }
    }

    #[test]
    fn direct_matches_closed_form_full_line_with_momentum() {
        // gamma0 = 2 at s = 3 mu0^2
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner(100.0, 1.0).unwrap();
        let c = lifetime_closed_form(&sigma, 3e4).unwrap().value;
        let d = lifetime_direct(&sigma, 3e4, &cfg).unwrap().value;
        assert!((d / 2.0 - 1.0).abs() < 1e-2);
        assert!(((d - c) / c).abs() < 1e-3, "{d} vs {c}");
    }

    #[test]
    fn heavy_tail_is_refused() {
        // a sharp edge at the peak leaves a 1/tau amplitude tail
        let cfg = QuadratureConfig::default();
        let sigma = SpectralDensity::breit_wigner_truncated(10.0, 1.0, 10.0, 60.0).unwrap();
        assert!(matches!(lifetime_direct(&sigma, 0.0, &cfg), Err(Error::Tail { .. })));
    }

    #[test]
    fn taylor_trivial_cases() {
        for v in [Variant::Derived, Variant::Printed] {
            assert_eq!(dilation_factor_taylor(2.0, 5.0, 2.0, v), 1.5);
            for mu in [0.5, 1.0, 3.0] {
                assert_eq!(dilation_factor_taylor(1.0, 0.0, mu, v), 1.0);
            }
        }
    }

    #[test]
    fn derived_coefficients_match_finite_differences() {
        let (mu0, s) = (1.0, 0.5);
        let g = |m: f64| dilation_factor(m, s);
        let h = 1e-4;
        let d1 = (g(mu0 + h) - g(mu0 - h)) / (2.0 * h);
        let d2 = (g(mu0 + h) - 2.0 * g(mu0) + g(mu0 - h)) / (h * h);
        let (c1, c2) = taylor_coefficients(mu0, s, Variant::Derived);
        assert!((c1 - d1).abs() < 1e-6);
        assert!((c2 - 0.5 * d2).abs() < 1e-6);
        let (p1, p2) = taylor_coefficients(mu0, s, Variant::Printed);
        assert_eq!(p1, c1);
        assert!(p2 > c2);
    }

    #[test]
    fn bw_approx_limits() {
        for v in [Variant::Derived, Variant::Printed] {
            let t = lifetime_bw_approx(100.0, 2.0, 0.0, v).unwrap();
            assert_eq!(t.value, 0.5);
            let t = lifetime_bw_approx(100.0, 1e-6, 0.5625e4, v).unwrap();
            assert!((t.value * 1e-6 - 1.25).abs() < 1e-12);
        }
        assert!(lifetime_bw_approx(10.0, 2.0, 1.0, Variant::Derived).is_err());
    }

    #[test]
    fn bw_approx_against_closed_form() {
        let (mu0, g) = (100.0, 1.0);
        let exact = lifetime_closed_form(&SpectralDensity::breit_wigner(mu0, g).unwrap(), mu0 * mu0)
            .unwrap()
            .value;
        let d = lifetime_bw_approx(mu0, g, mu0 * mu0, Variant::Derived).unwrap().value;
        let p = lifetime_bw_approx(mu0, g, mu0 * mu0, Variant::Printed).unwrap().value;
        let eps = (g / mu0).powi(4);
        assert!(((d - exact) / exact).abs() < 10.0 * eps);
        assert!(((p - exact) / exact).abs() > 100.0 * eps);
    }

    #[test]
    fn deviation_scales_with_width_squared() {
        let s = 1e4;
        let dev = |g: f64| deviation_report(&window(100.0, g), &[0.0, s]).unwrap();
        let a = dev(1.0);
        let b = dev(0.5);
        assert_eq!(a[0].deviation, 0.0);
        let ratio = a[1].deviation / b[1].deviation;
        assert!((ratio - 4.0).abs() < 0.4, "ratio {ratio}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn lifetime_increases_with_momentum(s in 0.0f64..5e4, ds in 1.0f64..1e4) {
            let sigma = window(100.0, 1.0);
            let a = lifetime_closed_form(&sigma, s).unwrap().value;
            let b = lifetime_closed_form(&sigma, s + ds).unwrap().value;
            prop_assert!(b > a);
            prop_assert!(a >= lifetime_closed_form(&sigma, 0.0).unwrap().value);
        }
    }
}

//! One function per subcommand: scenario in, table rows out.

use rayon::prelude::*;

use super::output::Cell;
use super::scenario::{Scenario, Units};
use crate::error::{Error, Result};
use crate::lifetime::{
    dilation_factor, lifetime_bw_approx, lifetime_closed_form, lifetime_direct, Variant,
};
use crate::minkowski::mdot;
use crate::overlap::{overlap, OverlapConfig};
use crate::spectral::SpectralDensity;
use crate::survival::survival_amplitude;
use crate::twopoint::{coupling_matched, residual};
use crate::velocity::{contracted_lifetime, contracted_survival, fig2_intervals, VelocityEigenvalue};

const SPECTRAL_KEYS: [&str; 7] = [
    "spectral.model",
    "spectral.mu0",
    "spectral.gamma",
    "spectral.window",
    "spectral.lo",
    "spectral.hi",
    "spectral.file",
];

const QUADRATURE_KEYS: [&str; 4] =
    ["quadrature.rtol", "quadrature.max_panels", "quadrature.factor", "quadrature.lifetime_rtol"];

pub struct Rows {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn allow(sc: &Scenario, extra: &[&str]) -> Result<()> {
    let mut keys: Vec<&str> = SPECTRAL_KEYS.iter().chain(QUADRATURE_KEYS.iter()).copied().collect();
    keys.extend_from_slice(extra);
    sc.check_keys(&keys)
}

fn nonnegative(key: &str, values: &[f64]) -> Result<()> {
    match values.iter().find(|v| **v < 0.0) {
        Some(v) => Err(Error::Invalid(format!("`{key}`: values must be >= 0, got {v}"))),
        None => Ok(()),
    }
}

pub fn survival(sc: &Scenario, units: Units) -> Result<Rows> {
    allow(sc, &["survival.s", "grid.tau"])?;
    let sigma = sc.spectral()?;
    let cfg = sc.quadrature()?;
    let s = sc.number("survival.s")?.unwrap_or(0.0);
    nonnegative("survival.s", &[s])?;
    let taus = sc.require_list("grid.tau")?;
    let rows = taus
        .par_iter()
        .map(|&t| {
            let r = survival_amplitude(&sigma, s, units.time_in(t), &cfg)?;
            Ok(vec![
                t.into(),
                r.amplitude.re.into(),
                r.amplitude.im.into(),
                r.probability().into(),
                r.error.into(),
                r.truncation.into(),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Rows { columns: vec!["tau", "re", "im", "prob", "error", "truncation"], rows })
}

fn breit_wigner_params(sigma: &SpectralDensity) -> Option<(f64, f64)> {
    match sigma {
        SpectralDensity::BreitWignerFullLine { mu0, gamma } => Some((*mu0, *gamma)),
        SpectralDensity::BreitWignerTruncated(t) => Some((t.mu0(), t.gamma())),
        _ => None,
    }
}

pub fn lifetime(sc: &Scenario, units: Units) -> Result<Rows> {
    allow(sc, &["grid.s", "lifetime.direct"])?;
    let sigma = sc.spectral()?;
    let cfg = sc.quadrature()?;
    let grid = sc.require_list("grid.s")?;
    nonnegative("grid.s", &grid)?;
    let direct = sc.flag("lifetime.direct", true)?;
    let rest = lifetime_closed_form(&sigma, 0.0)?;
    let mu0 = sigma.reference_mass()?;
    let bw = breit_wigner_params(&sigma);
    let out = |x: f64| Cell::Num(units.time_out(x));
    let rows = grid
        .par_iter()
        .map(|&s| {
            let closed = if s == 0.0 { rest } else { lifetime_closed_form(&sigma, s)? };
            let (d, de) = if direct {
                let r = lifetime_direct(&sigma, s, &cfg)?;
                (out(r.value), out(r.error))
            } else {
                (Cell::Empty, Cell::Empty)
            };
            let approx = |v| {
                bw.and_then(|(m, g)| lifetime_bw_approx(m, g, s, v).ok())
                    .map_or(Cell::Empty, |r| out(r.value))
            };
            let einstein = dilation_factor(mu0, s) * rest.value;
            Ok(vec![
                s.into(),
                out(closed.value),
                out(closed.error),
                d,
                de,
                approx(Variant::Derived),
                approx(Variant::Printed),
                out(einstein),
                (closed.value / einstein - 1.0).into(),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Rows {
        columns: vec![
            "s",
            "closed_form",
            "error",
            "direct",
            "direct_error",
            "bw_derived",
            "bw_printed",
            "einstein",
            "deviation",
        ],
        rows,
    })
}

pub fn velocity(sc: &Scenario, units: Units) -> Result<Rows> {
    allow(sc, &["grid.u", "grid.t", "velocity.direction"])?;
    let sigma = sc.spectral()?;
    let cfg = sc.quadrature()?;
    let speeds = sc.require_list("grid.u")?;
    nonnegative("grid.u", &speeds)?;
    let times = sc.require_list("grid.t")?;
    let dir = sc.list("velocity.direction")?.unwrap_or_else(|| vec![1.0, 0.0, 0.0]);
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    if dir.len() != 3 || !(norm > 0.0) {
        return Err(Error::Invalid("`velocity.direction`: expected three components, not all zero".into()));
    }
    let mut cases = Vec::with_capacity(speeds.len());
    for &speed in &speeds {
        let u = [speed * dir[0] / norm, speed * dir[1] / norm, speed * dir[2] / norm];
        VelocityEigenvalue::new(u).map_err(|e| Error::Invalid(format!("`grid.u`: {e}")))?;
        for &t in &times {
            cases.push((speed, u, t));
        }
    }
    let t0 = lifetime_closed_form(&sigma, 0.0)?.value;
    let rows = cases
        .par_iter()
        .map(|&(speed, u, t)| {
            let v = VelocityEigenvalue::new(u)?;
            let life = contracted_lifetime(&sigma, u)?;
            let (between, normal) = fig2_intervals(t0, u)?;
            let prob = contracted_survival(&sigma, u, units.time_in(t), &cfg)?.probability();
            Ok(vec![
                speed.into(),
                v.four_velocity().t().into(),
                units.time_out(life.value).into(),
                units.time_out(between).into(),
                units.time_out(normal).into(),
                t.into(),
                prob.into(),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Rows {
        columns: vec!["u", "v0", "lifetime", "interval_between", "interval_normal", "t", "prob"],
        rows,
    })
}

pub fn overlap_sweep(sc: &Scenario, units: Units) -> Result<Rows> {
    allow(
        sc,
        &[
            "overlap.rapidity",
            "overlap.p_e",
            "overlap.p_prime_e",
            "overlap.transverse",
            "grid.tau",
            "grid.tau_prime",
        ],
    )?;
    let sigma = sc.spectral()?;
    let rapidity = sc.require("overlap.rapidity")?;
    let p_e = sc.require("overlap.p_e")?;
    let p_prime_e = sc.require("overlap.p_prime_e")?;
    let transverse = sc.list("overlap.transverse")?.unwrap_or_else(|| vec![0.0, 0.0]);
    if transverse.len() != 2 {
        return Err(Error::Invalid("`overlap.transverse`: expected two components".into()));
    }
    let taus = sc.require_list("grid.tau")?;
    let primes = sc.list("grid.tau_prime")?.unwrap_or_else(|| vec![0.0]);
    let pairs: Vec<(f64, f64)> = match (taus.len(), primes.len()) {
        (a, b) if a == b => taus.iter().copied().zip(primes.iter().copied()).collect(),
        (_, 1) => taus.iter().map(|&t| (t, primes[0])).collect(),
        (1, _) => primes.iter().map(|&t| (taus[0], t)).collect(),
        _ => {
            return Err(Error::Invalid(
                "`grid.tau_prime`: must have one entry or as many as `grid.tau`".into(),
            ))
        }
    };
    let base = OverlapConfig::in_plane(rapidity, p_e, p_prime_e, [transverse[0], transverse[1]], 0.0, 0.0)
        .map_err(|e| Error::Invalid(format!("overlap geometry: {e}")))?;
    let rows = pairs
        .par_iter()
        .map(|&(t, tp)| {
            let r = overlap(&base.with_offsets(units.time_in(t), units.time_in(tp)), &sigma)?;
            let q = r.q.0;
            Ok(vec![
                t.into(),
                tp.into(),
                q[0].into(),
                q[1].into(),
                q[2].into(),
                q[3].into(),
                mdot(r.q, r.q).into(),
                r.accessible.into(),
                r.amplitude.norm().into(),
                r.amplitude.arg().into(),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(Rows {
        columns: vec!["tau", "tau_prime", "q0", "q1", "q2", "q3", "q_squared", "accessible", "modulus", "phase"],
        rows,
    })
}

pub fn twopoint(sc: &Scenario, units: Units) -> Result<Rows> {
    allow(sc, &["grid.s", "grid.dtau", "twopoint.coupling"])?;
    let sigma = sc.spectral()?;
    let cfg = sc.quadrature()?;
    match sc.get("twopoint.coupling").unwrap_or("matched") {
        "matched" => {}
        other => {
            return Err(Error::Invalid(format!("`twopoint.coupling`: unknown coupling `{other}` (matched)")))
        }
    }
    let f = coupling_matched(&sigma)?;
    let grid = sc.require_list("grid.s")?;
    nonnegative("grid.s", &grid)?;
    let dtaus = sc.require_list("grid.dtau")?;
    let cases: Vec<(f64, f64)> = grid.iter().flat_map(|&s| dtaus.iter().map(move |&d| (s, d))).collect();
    let rows = cases
        .par_iter()
        .map(|&(s, d)| {
            let r = residual(&f, &sigma, s, units.time_in(d), &cfg)?;
            Ok(vec![s.into(), d.into(), r.re.into(), r.im.into(), r.norm().into()])
        })
        .collect::<Result<_>>()?;
    Ok(Rows { columns: vec!["s", "dtau", "re", "im", "abs"], rows })
}

//! Quadrature kernels shared by every integral in the crate.
//!
//! * [`integrate`]: adaptive Gauss–Kronrod (7/15) for smooth real integrands
//!   over a list of breakpoints.
//! * [`oscillatory`]: fixed-order Gauss–Legendre panels for complex integrands
//!   carrying a phase `exp(-i phi(x))` with `|phi'| <= omega`; the panel count
//!   doubles until two successive sums agree.
//! * [`gauss_legendre`] / [`gauss_hermite`]: node generators.

use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and budgets for the panel quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Error target, relative to the L1 mass of the integrand weight (1 for
    /// a normalized spectral density).
    pub rtol: f64,
    /// Upper bound on the number of panels in a single integral.
    pub max_panels: usize,
    /// Panels per half period of the fastest phase: panel width is at most
    /// `pi / (factor * omega)`.
    pub factor: f64,
    /// Relative target for the outer time integral in direct lifetimes.
    pub lifetime_rtol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rtol: 1e-8, max_panels: 1 << 22, factor: 8.0, lifetime_rtol: 1e-6 }
    }
}

impl QuadratureConfig {
    pub fn with_rtol(rtol: f64) -> Self {
        QuadratureConfig { rtol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rtol > 0.0) || !(self.lifetime_rtol > 0.0) {
            return Err(Error::invalid("quadrature tolerances must be positive"));
        }
        if !(self.factor >= 4.0) {
            return Err(Error::invalid("oscillation factor must be at least 4"));
        }
        if self.max_panels == 0 {
            return Err(Error::invalid("max_panels must be positive"));
        }
        Ok(())
    }
}

/// A quadrature value together with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Physicists' Gauss–Hermite rule: `int exp(-x^2) f(x) dx ~ sum w_i f(x_i)`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let pim4 = PI.powf(-0.25);
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    // ascending order
    x.reverse();
    w.reverse();
    (x, w)
}

const PANEL_ORDER: usize = 6;

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

fn panel_sum<F>(f: &F, breaks: &[f64], counts: &[usize]) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = panel_rule();
    let mut total = Complex64::new(0.0, 0.0);
    for (seg, &n) in breaks.windows(2).zip(counts) {
        let (a, b) = (seg[0], seg[1]);
        let h = (b - a) / n as f64;
        let half = 0.5 * h;
        let mut seg_sum = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let mid = a + (k as f64 + 0.5) * h;
            let mut panel = Complex64::new(0.0, 0.0);
            for (x, w) in nodes.iter().zip(weights) {
                panel += f(mid + half * x) * *w;
            }
            seg_sum += panel * half;
        }
        total += seg_sum;
    }
    total
}

/// Integrates a complex integrand over `breaks[0]..breaks[last]` with
/// Gauss–Legendre panels.
///
/// Each segment between consecutive breakpoints gets panels of width at most
/// `min(total / 64, pi / (cfg.factor * omega))`; all counts then double until
/// two successive sums differ by no more than `cfg.rtol * scale`. The
/// returned value is the finer sum and the error is that difference.
pub fn oscillatory<F>(
    f: F,
    breaks: &[f64],
    omega: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    if breaks.len() < 2 {
        return Ok(Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    let total = breaks[breaks.len() - 1] - breaks[0];
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::domain("integration interval must be finite and non-empty"));
    }
    let mut hmax = total / 64.0;
    if omega > 0.0 {
        hmax = hmax.min(PI / (cfg.factor * omega));
    }
    panels(f, breaks, hmax, scale, cfg)
}

/// Panel doubling as in [`oscillatory`], starting from panels of width at
/// most `hmax`.
pub fn panels<F>(
    f: F,
    breaks: &[f64],
    hmax: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    if breaks.len() < 2 {
        return Ok(Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    if !(hmax > 0.0) {
        return Err(Error::domain("panel width must be positive"));
    }
    let mut counts: Vec<usize> = breaks
        .windows(2)
        .map(|s| (((s[1] - s[0]) / hmax).ceil() as usize).max(1))
        .collect();
    let target = cfg.rtol * scale;
    let mut coarse = panel_sum(&f, breaks, &counts);
    loop {
        let panels: usize = counts.iter().sum::<usize>() * 2;
        if panels > cfg.max_panels {
            return Err(Error::Quadrature { achieved: f64::NAN, requested: target });
        }
        counts.iter_mut().for_each(|c| *c *= 2);
        let fine = panel_sum(&f, breaks, &counts);
        let err = (fine - coarse).norm();
        if err <= target {
            return Ok(Estimate { value: fine, error: err });
        }
        if panels * 2 > cfg.max_panels {
            return Err(Error::Quadrature { achieved: err, requested: target });
        }
        coarse = fine;
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive Gauss–Kronrod integration of a smooth real integrand across the
/// segments `breaks[i]..breaks[i+1]`. Stops once the summed error estimate is
/// below `max(abs_tol, rel_tol * |value|)`.
pub fn integrate<F>(f: F, breaks: &[f64], abs_tol: f64, rel_tol: f64) -> Result<Estimate<f64>>
where
    F: Fn(f64) -> f64,
{
    const MAX_INTERVALS: usize = 20_000;
    let mut heap = BinaryHeap::new();
    let (mut value, mut error) = (0.0, 0.0);
    for s in breaks.windows(2) {
        if s[1] <= s[0] {
            continue;
        }
        let (v, e) = kronrod15(&f, s[0], s[1]);
        value += v;
        error += e;
        heap.push(Interval { a: s[0], b: s[1], value: v, error: e });
    }
    while error > abs_tol.max(rel_tol * value.abs()) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature { achieved: error, requested: abs_tol.max(rel_tol * value.abs()) });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution; keep it and stop refining it
            heap.push(Interval { error: 0.0, ..worst });
            error -= worst.error;
            continue;
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Interval { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Interval { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // resum to shed accumulated cancellation in the running totals
    let mut parts: Vec<Interval> = heap.into_vec();
    parts.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = parts.iter().map(|i| i.value).sum();
    let error = parts.iter().map(|i| i.error).sum::<f64>().max(0.0);
    Ok(Estimate { value, error })
}

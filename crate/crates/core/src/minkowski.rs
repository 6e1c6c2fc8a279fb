//! Four-vectors, proper orthochronous Lorentz transformations and spacelike
//! hyperplanes, all under the `+---` metric with `c = 1`.
//!
//! Boosts are built from the rapidity (`cosh`/`sinh`) or directly from a unit
//! normal, never from `1 / sqrt(1 - u^2)` differences, so they stay accurate
//! up to `|u| = 1 - 1e-9`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest speed accepted by [`boost_from_velocity`].
pub const MAX_BOOST_SPEED: f64 = 1.0 - 1e-9;

/// Tolerance on `|mdot(n, n) - 1|` before a hyperplane normal is renormalized.
pub const NORMAL_TOLERANCE: f64 = 1e-6;

/// A real four-vector `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);
    /// The instantaneous normal `(1, 0, 0, 0)`.
    pub const TIME: FourVector = FourVector([1.0, 0.0, 0.0, 0.0]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// `(0, k)`: a purely spatial vector in the current frame.
    pub const fn spatial(k: [f64; 3]) -> Self {
        FourVector([0.0, k[0], k[1], k[2]])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn space(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Minkowski square `t^2 - x^2 - y^2 - z^2`.
    pub fn square(&self) -> f64 {
        mdot(*self, *self)
    }

    /// Largest absolute component; used as a scale for relative checks.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_future_timelike(&self) -> bool {
        self.t() > 0.0 && self.square() > 0.0
    }
}

/// Minkowski inner product with signature `+---`.
pub fn mdot(a: FourVector, b: FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for FourVector {
    fn add_assign(&mut self, rhs: FourVector) {
        *self = *self + rhs;
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(self.0.map(|c| -c))
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0.map(|c| c * rhs))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, rhs: FourVector) -> FourVector {
        rhs * self
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// A homogeneous Lorentz transformation, stored as the 4x4 matrix acting on
/// contravariant components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTransform {
    m: [[f64; 4]; 4],
}

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

impl LorentzTransform {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        LorentzTransform { m }
    }

    /// Wraps a raw matrix after checking it is proper orthochronous.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self> {
        let l = LorentzTransform { m };
        if l.metric_defect() > 1e-9 {
            return Err(Error::domain("matrix does not preserve the Minkowski metric"));
        }
        if l.m[0][0] < 1.0 - 1e-12 || l.determinant() < 0.0 {
            return Err(Error::domain("transformation is not proper orthochronous"));
        }
        Ok(l)
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    /// Rotation by `angle` (radians, right-handed) about `axis`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm3(axis);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::domain("rotation axis must be a non-zero finite vector"));
        }
        let [x, y, z] = axis.map(|c| c / n);
        let (s, c) = angle.sin_cos();
        let k = 1.0 - c;
        let r = [
            [c + x * x * k, x * y * k - z * s, x * z * k + y * s],
            [y * x * k + z * s, c + y * y * k, y * z * k - x * s],
            [z * x * k - y * s, z * y * k + x * s, c + z * z * k],
        ];
        let mut m = [[0.0; 4]; 4];
        m[0][0] = 1.0;
        for i in 0..3 {
            for j in 0..3 {
                m[i + 1][j + 1] = r[i][j];
            }
        }
        Ok(LorentzTransform { m })
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| {
            (0..4).map(|j| self.m[i][j] * v.0[j]).sum()
        }))
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        LorentzTransform { m }
    }

    /// Exact inverse `g L^T g`.
    pub fn inverse(&self) -> LorentzTransform {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = METRIC[i] * self.m[j][i] * METRIC[j];
            }
        }
        LorentzTransform { m }
    }

    /// Largest entry of `|L^T g L - g|`.
    pub fn metric_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| self.m[k][i] * METRIC[k] * self.m[k][j]).sum();
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let mut a = self.m;
        let mut det = 1.0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
                .unwrap_or(col);
            if a[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..4 {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
        det
    }

    /// Largest entry-wise difference to another transform.
    pub fn max_abs_diff(&self, other: &LorentzTransform) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }
}

/// Pure boost taking `(1, 0)` to the unit future-timelike vector `n`.
/// Uses `B^i_j = delta_ij + n_i n_j / (1 + n^0)`, which is exact in `n`.
fn boost_matrix(n: FourVector) -> LorentzTransform {
    let g = n.t();
    let v = n.space();
    let mut m = [[0.0; 4]; 4];
    m[0][0] = g;
    for i in 0..3 {
        m[0][i + 1] = v[i];
        m[i + 1][0] = v[i];
        for j in 0..3 {
            m[i + 1][j + 1] = if i == j { 1.0 } else { 0.0 } + v[i] * v[j] / (1.0 + g);
        }
    }
    LorentzTransform { m }
}

/// Pure boost with three-velocity `u`, mapping `(1, 0)` to `(1, u) / sqrt(1 - u^2)`.
///
/// Built from the rapidity `atanh |u|`; accepts `|u| <= MAX_BOOST_SPEED`.
pub fn boost_from_velocity(u: [f64; 3]) -> Result<LorentzTransform> {
    let speed = norm3(u);
    if !speed.is_finite() || speed >= 1.0 {
        return Err(Error::domain(format!("boost speed {speed} must be below 1")));
    }
    if speed > MAX_BOOST_SPEED {
        return Err(Error::domain(format!(
            "boost speed {speed} exceeds the supported range 1 - 1e-9"
        )));
    }
    if speed == 0.0 {
        return Ok(LorentzTransform::identity());
    }
    let zeta = speed.atanh();
    let (sh, ch) = (zeta.sinh(), zeta.cosh());
    let dir = u.map(|c| c / speed);
    Ok(boost_matrix(FourVector::new(ch, sh * dir[0], sh * dir[1], sh * dir[2])))
}

/// Boost along a unit direction by rapidity `zeta`.
pub fn boost_from_rapidity(direction: [f64; 3], zeta: f64) -> Result<LorentzTransform> {
    let n = norm3(direction);
    if n == 0.0 || !n.is_finite() || !zeta.is_finite() {
        return Err(Error::domain("boost direction must be non-zero and rapidity finite"));
    }
    let (sh, ch) = (zeta.sinh(), zeta.cosh());
    let d = direction.map(|c| c / n);
    Ok(boost_matrix(FourVector::new(ch, sh * d[0], sh * d[1], sh * d[2])))
}

/// The pure boost taking `(1, 0, 0, 0)` to the unit normal `eta`.
pub fn boost_to_normal(eta: FourVector) -> Result<LorentzTransform> {
    check_unit_future(eta)?;
    Ok(boost_matrix(eta))
}

fn check_unit_future(eta: FourVector) -> Result<()> {
    if !(eta.t() > 0.0) {
        return Err(Error::domain("normal must be future-pointing"));
    }
    let defect = (eta.square() - 1.0).abs();
    if defect > 1e-12 * eta.t() * eta.t() {
        return Err(Error::domain(format!(
            "normal is not unit timelike (|n.n - 1| = {defect:.3e})"
        )));
    }
    Ok(())
}

/// The spacelike hyperplane `{x : mdot(normal, x) = offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    normal: FourVector,
    offset: f64,
}

impl Hyperplane {
    /// Normalizes `normal`; rejects it if it is past-pointing or further than
    /// [`NORMAL_TOLERANCE`] from unit length.
    pub fn new(normal: FourVector, offset: f64) -> Result<Self> {
        if !(normal.t() > 0.0) {
            return Err(Error::domain("hyperplane normal must be future-pointing"));
        }
        let sq = normal.square();
        if !((sq - 1.0).abs() <= NORMAL_TOLERANCE) {
            return Err(Error::domain(format!(
                "hyperplane normal has mdot(n, n) = {sq}, expected 1"
            )));
        }
        if !offset.is_finite() {
            return Err(Error::domain("hyperplane offset must be finite"));
        }
        Ok(Hyperplane { normal: normal * (1.0 / sq.sqrt()), offset })
    }

    /// The instantaneous hyperplane `t = offset`.
    pub fn instantaneous(offset: f64) -> Self {
        Hyperplane { normal: FourVector::TIME, offset }
    }

    pub fn normal(&self) -> FourVector {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains(&self, x: FourVector, tol: f64) -> bool {
        (mdot(self.normal, x) - self.offset).abs() <= tol
    }

    /// The hyperplane with the same normal and a different offset.
    pub fn with_offset(&self, offset: f64) -> Self {
        Hyperplane { normal: self.normal, offset }
    }
}

/// Image of `h` under the inhomogeneous transformation `x -> L x + a`:
/// normal `L n`, offset `offset + mdot(a, L n)`.
pub fn transform_hyperplane(l: &LorentzTransform, a: FourVector, h: &Hyperplane) -> Hyperplane {
    let n = l.apply(h.normal);
    // renormalize away rounding drift
    let n = n * (1.0 / n.square().sqrt());
    Hyperplane { normal: n, offset: h.offset + mdot(a, n) }
}

/// Splits `q` into the part orthogonal to `eta` and the component along it:
/// `q = p + eta * eta_q`.
pub fn decompose(q: FourVector, eta: FourVector) -> (FourVector, f64) {
    let eta_q = mdot(eta, q);
    (q - eta * eta_q, eta_q)
}

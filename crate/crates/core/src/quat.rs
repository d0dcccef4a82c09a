//! Quaternion scalars: Hamilton product, polar form, principal logarithm and
//! exponential.
//!
//! The basis convention is `i*j = k`, `j*k = i`, `k*i = j`, `i^2 = j^2 = k^2 = -1`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default distance to `theta = pi` below which [`qlog`] refuses to evaluate.
pub const BRANCH_EPS: f64 = 1e-9;
/// Default imaginary-part norm below which the polar axis is degenerate.
pub const AXIS_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub re: f64,
    pub i: f64,
    pub j: f64,
    pub k: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, i: f64, j: f64, k: f64) -> Self {
        Self { re, i, j, k }
    }

    pub const fn real(re: f64) -> Self {
        Self::new(re, 0.0, 0.0, 0.0)
    }

    /// Purely imaginary quaternion `v[0] i + v[1] j + v[2] k`.
    pub const fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.i, -self.j, -self.k)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.i * self.i + self.j * self.j + self.k * self.k
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Imaginary part `i, j, k` coordinates.
    pub fn imag(self) -> [f64; 3] {
        [self.i, self.j, self.k]
    }

    pub fn imag_norm(self) -> f64 {
        (self.i * self.i + self.j * self.j + self.k * self.k).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.re * s, self.i * s, self.j * s, self.k * s)
    }

    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Unit quaternion in the direction of `self`.
    pub fn normalize(self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.re, self.i, self.j, self.k]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.re, self.i, self.j, self.k)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.re + o.re, self.i + o.i, self.j + o.j, self.k + o.k)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.re - o.re, self.i - o.i, self.j - o.j, self.k - o.k)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.re, -self.i, -self.j, -self.k)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        mul(self, q)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

/// Hamilton product `p * q`.
pub fn mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion::new(
        p.re * q.re - p.i * q.i - p.j * q.j - p.k * q.k,
        p.re * q.i + p.i * q.re + p.j * q.k - p.k * q.j,
        p.re * q.j - p.i * q.k + p.j * q.re + p.k * q.i,
        p.re * q.k + p.i * q.j - p.j * q.i + p.k * q.re,
    )
}

/// `q = modulus * (cos theta + sin theta * axis)` with `theta` in `[0, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub modulus: f64,
    pub theta: f64,
    pub axis: Quaternion,
    /// Set when the imaginary part is too small to define an axis; `axis` is then `i`.
    pub degenerate: bool,
}

impl PolarForm {
    pub fn reconstruct(&self) -> Quaternion {
        let (s, c) = self.theta.sin_cos();
        (Quaternion::real(c) + self.axis.scale(s)).scale(self.modulus)
    }
}

pub fn polar(q: Quaternion) -> Result<PolarForm> {
    polar_with(q, AXIS_EPS)
}

pub fn polar_with(q: Quaternion, axis_eps: f64) -> Result<PolarForm> {
    let modulus = q.norm();
    if modulus == 0.0 {
        return Err(Error::ZeroQuaternion);
    }
    let v = q.imag_norm();
    // atan2 equals arccos(re/|q|) on [0, pi] but keeps full accuracy near 0 and pi.
    let theta = v.atan2(q.re);
    let (axis, degenerate) = if v > axis_eps {
        (Quaternion::pure(q.imag()).scale(1.0 / v), false)
    } else {
        (Quaternion::I, true)
    };
    Ok(PolarForm {
        modulus,
        theta,
        axis,
        degenerate,
    })
}

/// Principal logarithm `ln|q| + theta * axis`.
pub fn qlog(q: Quaternion) -> Result<Quaternion> {
    qlog_with(q, BRANCH_EPS)
}

pub fn qlog_with(q: Quaternion, branch_eps: f64) -> Result<Quaternion> {
    let p = polar(q)?;
    if p.theta >= PI - branch_eps {
        return Err(Error::NegativeRealAxis { theta: p.theta });
    }
    let v = q.imag_norm();
    // Below the axis threshold theta/|v| -> 1/|q|; using the true imaginary part
    // keeps the tiny angle instead of rounding it to zero.
    let imag = if v > 0.0 {
        Quaternion::pure(q.imag()).scale(p.theta / v)
    } else {
        Quaternion::ZERO
    };
    Ok(Quaternion::real(p.modulus.ln()) + imag)
}

/// `e^{re} (cos|v| + sin|v| v/|v|)` with `v` the imaginary part.
pub fn qexp(q: Quaternion) -> Quaternion {
    let v = q.imag_norm();
    let scale = q.re.exp();
    let (s, c) = v.sin_cos();
    let sinc = if v > 1e-8 { s / v } else { 1.0 - v * v / 6.0 };
    Quaternion::new(c, q.i * sinc, q.j * sinc, q.k * sinc).scale(scale)
}

/// Same norm and same real part, each within `tol`.
pub fn similar(p: Quaternion, q: Quaternion, tol: f64) -> bool {
    (p.norm() - q.norm()).abs() <= tol && (p.re - q.re).abs() <= tol
}

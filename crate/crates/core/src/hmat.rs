//! Dense quaternionic vectors and square matrices.
//!
//! `HVector` is a column vector in the right module `H^n`: scalars act on the
//! right, matrices act on the left. With this convention `x * q * x^*` is a
//! column times a scalar times a row, and `A (v q) = (A v) q`.

use std::ops::{Add, Index, IndexMut, Sub};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Default Frobenius tolerance for `Sp(n)` membership.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct HVector(Vec<Quaternion>);

impl HVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        assert!(!entries.is_empty(), "HVector must have at least one entry");
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Quaternion::ZERO; n])
    }

    /// Standard basis vector `e_{index}` (zero-based).
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[index] = Quaternion::ONE;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quaternion> {
        self.0.iter()
    }

    /// Right scalar action `v * q`.
    pub fn scale_right(&self, q: Quaternion) -> HVector {
        HVector(self.0.iter().map(|&x| x * q).collect())
    }

    pub fn scale(&self, s: f64) -> HVector {
        HVector(self.0.iter().map(|&x| x.scale(s)).collect())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<HVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }
}

impl Index<usize> for HVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.0[i]
    }
}

impl IndexMut<usize> for HVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.0[i]
    }
}

impl Sub for &HVector {
    type Output = HVector;
    fn sub(self, o: &HVector) -> HVector {
        assert_eq!(self.len(), o.len());
        HVector(self.0.iter().zip(&o.0).map(|(&a, &b)| a - b).collect())
    }
}

impl Add for &HVector {
    type Output = HVector;
    fn add(self, o: &HVector) -> HVector {
        assert_eq!(self.len(), o.len());
        HVector(self.0.iter().zip(&o.0).map(|(&a, &b)| a + b).collect())
    }
}

/// `<x, y> = sum conj(x_i) y_i`.
pub fn inner(x: &HVector, y: &HVector) -> Result<Quaternion> {
    check_len(x.len(), y.len())?;
    Ok(x.0
        .iter()
        .zip(&y.0)
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + a.conj() * b))
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::SizeMismatch { expected, actual });
    }
    Ok(())
}

/// Square `n x n` quaternionic matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

impl HMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "HMatrix must be at least 1x1");
        Self {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn diag(entries: &[Quaternion]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &q) in entries.iter().enumerate() {
            m[(i, i)] = q;
        }
        m
    }

    /// Build from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_rows(entries: Vec<Quaternion>) -> Result<Self> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != entries.len() {
            return Err(Error::SizeMismatch {
                expected: n.max(1) * n.max(1),
                actual: entries.len(),
            });
        }
        Ok(Self { n, data: entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, c: usize) -> HVector {
        HVector::new((0..self.n).map(|r| self[(r, c)]).collect())
    }

    pub fn scale(&self, s: f64) -> HMatrix {
        HMatrix {
            n: self.n,
            data: self.data.iter().map(|q| q.scale(s)).collect(),
        }
    }
}

impl Index<(usize, usize)> for HMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for HMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.n + c]
    }
}

/// `(AB)[i,j] = sum_k A[i,k] B[k,j]`, factors kept in that order.
pub fn matmul(a: &HMatrix, b: &HMatrix) -> Result<HMatrix> {
    check_len(a.n, b.n)?;
    let n = a.n;
    let mut out = HMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = Quaternion::ZERO;
            for k in 0..n {
                acc += a[(r, k)] * b[(k, c)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn adjoint(a: &HMatrix) -> HMatrix {
    HMatrix::from_fn(a.n, |r, c| a[(c, r)].conj())
}

pub fn add(a: &HMatrix, b: &HMatrix) -> Result<HMatrix> {
    check_len(a.n, b.n)?;
    Ok(HMatrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| x + y).collect(),
    })
}

pub fn sub(a: &HMatrix, b: &HMatrix) -> Result<HMatrix> {
    check_len(a.n, b.n)?;
    Ok(HMatrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| x - y).collect(),
    })
}

pub fn fro_norm(a: &HMatrix) -> f64 {
    a.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// `||A - B||_F`.
pub fn distance(a: &HMatrix, b: &HMatrix) -> Result<f64> {
    check_len(a.n, b.n)?;
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

pub fn identity(n: usize) -> HMatrix {
    HMatrix::identity(n)
}

pub fn apply(a: &HMatrix, v: &HVector) -> Result<HVector> {
    check_len(a.n, v.len())?;
    Ok(HVector::new(
        (0..a.n)
            .map(|r| (0..a.n).fold(Quaternion::ZERO, |acc, c| acc + a[(r, c)] * v[c]))
            .collect(),
    ))
}

/// `||A^* A - I||_F`.
pub fn symplectic_residual(a: &HMatrix) -> f64 {
    let n = a.n;
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            let mut acc = Quaternion::ZERO;
            for k in 0..n {
                acc += a[(k, r)].conj() * a[(k, c)];
            }
            if r == c {
                acc = acc - Quaternion::ONE;
            }
            sum += acc.norm_sqr();
        }
    }
    sum.sqrt()
}

pub fn is_symplectic(a: &HMatrix, tol: f64) -> bool {
    symplectic_residual(a) <= tol
}

/// Block embedding `A -> diag(A, 1)` of `Sp(n)` into `Sp(n+1)`.
pub fn embed(a: &HMatrix) -> HMatrix {
    let n = a.n;
    let mut out = HMatrix::identity(n + 1);
    for r in 0..n {
        for c in 0..n {
            out[(r, c)] = a[(r, c)];
        }
    }
    out
}

/// The matrix `x q x^*`, entries `x_i q conj(x_j)`.
pub fn rank_one(x: &HVector, q: Quaternion) -> HMatrix {
    let xq: Vec<Quaternion> = x.iter().map(|&xi| xi * q).collect();
    HMatrix::from_fn(x.len(), |r, c| xq[r] * x[c].conj())
}

//! The quasi-projective space `Q_n` inside `Sp(n)`.
//!
//! A point is represented by a pair `(x, lambda)` with `x` on the unit sphere of
//! `H^n` and `lambda` a unit quaternion, realized as the matrix
//! `phi(x, lambda) = x (lambda - 1) x^* + I`. Different pairs can realize the same
//! matrix, so the matrix is what [`equivalent`] compares.

mod cells;
mod sample;

pub use cells::{cells, dim_sp, poincare_polynomial, NormalCell};
pub use sample::{
    derive_seed, random_unit_quaternion, random_unit_vector, sample_qn, sample_qn_rng,
    sample_sp_product,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hmat::{self, HMatrix, HVector};
use crate::quat::Quaternion;

/// Tolerance on `|<x,x>| - 1` and `|lambda| - 1` accepted by [`phi`].
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QPoint {
    x: HVector,
    lambda: Quaternion,
    matrix: HMatrix,
}

impl QPoint {
    pub fn x(&self) -> &HVector {
        &self.x
    }

    pub fn lambda(&self) -> Quaternion {
        self.lambda
    }

    pub fn matrix(&self) -> &HMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn into_matrix(self) -> HMatrix {
        self.matrix
    }
}

/// `phi(x, lambda) = x (lambda - 1) x^* + I`: sends `x` to `x lambda` and fixes
/// the orthogonal complement of `x`.
pub fn phi(x: &HVector, lambda: Quaternion) -> Result<QPoint> {
    let dx = (x.norm_sqr() - 1.0).abs();
    if dx > UNIT_TOL {
        return Err(Error::NotUnit {
            what: "x",
            deviation: dx,
        });
    }
    let dl = (lambda.norm() - 1.0).abs();
    if dl > UNIT_TOL {
        return Err(Error::NotUnit {
            what: "lambda",
            deviation: dl,
        });
    }
    let mut matrix = hmat::rank_one(x, lambda - Quaternion::ONE);
    for i in 0..x.len() {
        matrix[(i, i)] += Quaternion::ONE;
    }
    Ok(QPoint {
        x: x.clone(),
        lambda,
        matrix,
    })
}

/// The base point `(e_1, 1)`, realized as the identity.
pub fn base_point(n: usize) -> QPoint {
    QPoint {
        x: HVector::basis(n, 0),
        lambda: Quaternion::ONE,
        matrix: HMatrix::identity(n),
    }
}

/// Recover a representative `(x, lambda)` of a matrix in `Q_n`.
///
/// The largest column of `A - I` fixes the line of `x`, `lambda = <x, A x>`, and
/// the candidate is accepted only if `phi(x, lambda)` rebuilds `A` to within
/// `tol * (1 + ||A||_F)`.
pub fn recover(a: &HMatrix, tol: f64) -> Result<QPoint> {
    let n = a.dim();
    let residual = hmat::symplectic_residual(a);
    if residual > tol {
        return Err(Error::NotInQn { residual });
    }
    let b = hmat::sub(a, &HMatrix::identity(n))?;
    if hmat::fro_norm(&b) <= tol {
        return Ok(base_point(n));
    }
    let pivot = (0..n)
        .map(|c| (c, b.column(c).norm_sqr()))
        .max_by(|l, r| l.1.total_cmp(&r.1))
        .map(|(c, _)| c)
        .unwrap_or(0);
    let x = b.column(pivot).normalize()?;
    let lambda = hmat::inner(&x, &hmat::apply(a, &x)?)?.normalize()?;
    let candidate = phi(&x, lambda)?;
    let residual = hmat::distance(&candidate.matrix, a)?;
    if residual > tol * (1.0 + hmat::fro_norm(a)) {
        return Err(Error::NotInQn { residual });
    }
    Ok(candidate)
}

/// Whether two representatives name the same point of `Q_n`.
pub fn equivalent(p: &QPoint, q: &QPoint, tol: f64) -> bool {
    if p.dim() != q.dim() {
        return false;
    }
    let at_base = |l: Quaternion| (l - Quaternion::ONE).norm() <= tol;
    if at_base(p.lambda) && at_base(q.lambda) {
        return true;
    }
    hmat::distance(&p.matrix, &q.matrix).is_ok_and(|d| d <= tol)
}

/// Boundary-collapsing map from the closed 3-ball onto `S^3`:
/// `v -> cos(pi |v|) + sin(pi |v|) v/|v|`, sending the boundary sphere to `-1`.
pub fn rho(v: [f64; 3]) -> Quaternion {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r == 0.0 {
        return Quaternion::ONE;
    }
    let (s, c) = (PI * r).sin_cos();
    Quaternion::new(c, s * v[0] / r, s * v[1] / r, s * v[2] / r)
}

/// Characteristic map `h_n` of the top cell of `Q_n`.
///
/// `y` holds the first `n - 1` coordinates of a point of the ball `E^{4(n-1)}`;
/// the last coordinate is the non-negative real `sqrt(1 - |y|^2)`.
pub fn char_map(n: usize, y: &[Quaternion], v: [f64; 3]) -> Result<QPoint> {
    if n == 0 {
        return Err(Error::DomainError("n must be at least 1".into()));
    }
    if y.len() + 1 != n {
        return Err(Error::SizeMismatch {
            expected: n - 1,
            actual: y.len(),
        });
    }
    let y_sqr: f64 = y.iter().map(|q| q.norm_sqr()).sum();
    let y_norm = y_sqr.sqrt();
    if y_norm > 1.0 + UNIT_TOL {
        return Err(Error::OutOfBall { norm: y_norm });
    }
    let v_norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if v_norm > 1.0 + UNIT_TOL {
        return Err(Error::OutOfBall { norm: v_norm });
    }
    let mut entries = y.to_vec();
    entries.push(Quaternion::real((1.0 - y_sqr).max(0.0).sqrt()));
    let mut x = HVector::new(entries);
    if y_norm > 1.0 {
        x = x.normalize()?;
    }
    let v = if v_norm > 1.0 {
        [v[0] / v_norm, v[1] / v_norm, v[2] / v_norm]
    } else {
        v
    };
    phi(&x, rho(v))
}

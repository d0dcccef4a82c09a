//! Test-only oracles built on the real representation of quaternions.
#![allow(dead_code)]

use quatcat::{HMatrix, HVector, Quaternion};

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Real {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Real {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &Real) -> Real {
        assert_eq!(self.cols, o.rows);
        let mut out = Real::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                for c in 0..o.cols {
                    out.data[r * o.cols + c] += a * o.at(k, c);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Real {
        let mut out = Real::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    pub fn add(&self, o: &Real) -> Real {
        Real {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Real {
        Real {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, o: &Real) -> f64 {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }
}

/// 4x4 matrix of left multiplication by `q` on coordinates `(re, i, j, k)`,
/// written from the multiplication table rather than the library's product.
pub fn left(q: Quaternion) -> Real {
    let (a, b, c, d) = (q.re, q.i, q.j, q.k);
    Real {
        rows: 4,
        cols: 4,
        data: vec![
            a, -b, -c, -d, //
            b, a, -d, c, //
            c, d, a, -b, //
            d, -c, b, a,
        ],
    }
}

pub fn from_real_column(m: &Real) -> Quaternion {
    Quaternion::new(m.at(0, 0), m.at(1, 0), m.at(2, 0), m.at(3, 0))
}

/// `4n x 4n` image of a quaternionic matrix.
pub fn real_matrix(a: &HMatrix) -> Real {
    let n = a.dim();
    let mut out = Real::zeros(4 * n, 4 * n);
    for r in 0..n {
        for c in 0..n {
            let block = left(a[(r, c)]);
            for i in 0..4 {
                for j in 0..4 {
                    out.set(4 * r + i, 4 * c + j, block.at(i, j));
                }
            }
        }
    }
    out
}

/// `4n x 4` block column `(L(x_1); ...; L(x_n))`.
pub fn real_column(x: &HVector) -> Real {
    let n = x.len();
    let mut out = Real::zeros(4 * n, 4);
    for r in 0..n {
        let block = left(x[r]);
        for i in 0..4 {
            for j in 0..4 {
                out.set(4 * r + i, j, block.at(i, j));
            }
        }
    }
    out
}

/// `4n`-vector of coordinates.
pub fn real_vector(x: &HVector) -> Real {
    let mut out = Real::zeros(4 * x.len(), 1);
    for (r, q) in x.iter().enumerate() {
        for (i, v) in q.to_array().into_iter().enumerate() {
            out.set(4 * r + i, 0, v);
        }
    }
    out
}

/// Matrix exponential by scaling and squaring around a plain Taylor series.
pub fn expm(m: &Real, terms: usize) -> Real {
    let norm = m.max_abs() * m.rows as f64;
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let a = m.scale(1.0 / 2f64.powi(squarings));
    let mut sum = Real::identity(m.rows);
    let mut term = Real::identity(m.rows);
    for k in 1..=terms {
        term = term.mul(&a).scale(1.0 / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}

/// `sum_{k=0}^{terms} M^k / k!` evaluated directly in quaternionic matrices.
pub fn hmat_exp_series(m: &HMatrix, terms: usize) -> HMatrix {
    let n = m.dim();
    let mut sum = HMatrix::identity(n);
    let mut term = HMatrix::identity(n);
    for k in 1..=terms {
        term = quatcat::hmat::matmul(&term, m)
            .unwrap()
            .scale(1.0 / k as f64);
        sum = quatcat::hmat::add(&sum, &term).unwrap();
    }
    sum
}

/// Coefficients of `prod_{i=1}^n (1 + t^{4i-1})` by repeated polynomial multiplication.
pub fn expanded_poincare(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for i in 1..=n {
        let factor_deg = 4 * i - 1;
        let mut factor = vec![0u64; factor_deg + 1];
        factor[0] = 1;
        factor[factor_deg] = 1;
        let mut next = vec![0u64; poly.len() + factor.len() - 1];
        for (a, &pa) in poly.iter().enumerate() {
            for (b, &fb) in factor.iter().enumerate() {
                next[a + b] += pa * fb;
            }
        }
        poly = next;
    }
    poly
}

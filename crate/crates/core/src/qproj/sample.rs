//! Seeded random points of `S^{4n-1}`, `S^3`, `Q_n` and `Sp(n)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{phi, QPoint};
use crate::hmat::{self, HMatrix, HVector};
use crate::quat::Quaternion;

/// Mix a suite seed with a sample counter (splitmix64 finalizer) so each
/// sample has its own stream regardless of evaluation order.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    )
}

/// Uniform point of `S^{4n-1}` by normalizing a standard Gaussian in `R^{4n}`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HVector {
    loop {
        let v = HVector::new((0..n).map(|_| gaussian_quaternion(rng)).collect());
        if v.norm() > 1e-8 {
            return v.normalize().expect("nonzero");
        }
    }
}

pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let q = gaussian_quaternion(rng);
        if q.norm() > 1e-8 {
            return q.normalize().expect("nonzero");
        }
    }
}

pub fn sample_qn_rng<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QPoint {
    let x = random_unit_vector(rng, n);
    let lambda = random_unit_quaternion(rng);
    phi(&x, lambda).expect("normalized inputs are units")
}

pub fn sample_qn(n: usize, seed: u64) -> QPoint {
    sample_qn_rng(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Product of `k` random points of `Q_n`.
pub fn sample_sp_product(n: usize, k: usize, seed: u64) -> HMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).fold(HMatrix::identity(n), |acc, _| {
        let p = sample_qn_rng(&mut rng, n);
        hmat::matmul(&acc, p.matrix()).expect("same size")
    })
}

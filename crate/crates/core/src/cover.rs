//! The three-set cover `{O1, O2, O3}` of `Q_n` and its contraction homotopies.
//!
//! * `O1`: `phi(x, lambda)` with `lambda != 1, -1`, contracted by
//!   `Phi(A, t) = exp(x ((1 - t) Log lambda) x^*) = phi(x, exp((1 - t) Log lambda))`.
//! * `O2`: `phi(x, -1) = phi(x, i) phi(x, i)`, contracted by the two-piece path
//!   `Psi` below.
//! * `O3`: a neighbourhood of the identity, contracted with the `Phi` formula.
//!
//! [`verify_cover`] samples each set, walks every contraction over a uniform
//! time grid and records residuals in a [`HomotopyCertificate`].

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmat::{self, HMatrix, HVector};
use crate::qproj::{
    self, derive_seed, phi, random_unit_quaternion, random_unit_vector, sample_qn_rng, QPoint,
};
use crate::quat::{qexp, qlog, Quaternion};

pub const CLASS_EPS: f64 = 1e-12;
/// Maximal rotation angle of `lambda` for points sampled from the `O3` ball.
pub const O3_RADIUS: f64 = 0.1;
/// Endpoint and along-path symplectic thresholds a certificate must meet.
pub const ENDPOINT_TOL: f64 = 1e-10;
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Allowed disagreement of the two `Psi` branches at `t = 1/2`.
pub const BRANCH_AGREEMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoverClass {
    O1,
    O2,
    O3,
}

impl CoverClass {
    pub const ALL: [CoverClass; 3] = [CoverClass::O1, CoverClass::O2, CoverClass::O3];

    pub fn name(self) -> &'static str {
        match self {
            CoverClass::O1 => "O1",
            CoverClass::O2 => "O2",
            CoverClass::O3 => "O3",
        }
    }
}

impl std::str::FromStr for CoverClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "O1" => Ok(CoverClass::O1),
            "O2" => Ok(CoverClass::O2),
            "O3" => Ok(CoverClass::O3),
            other => Err(Error::DomainError(format!("unknown cover class {other:?}"))),
        }
    }
}

pub fn classify(p: &QPoint, class_eps: f64) -> CoverClass {
    let l = p.lambda();
    if (l + Quaternion::ONE).norm() <= class_eps {
        CoverClass::O2
    } else if (l - Quaternion::ONE).norm() <= class_eps {
        CoverClass::O3
    } else {
        CoverClass::O1
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DomainError(format!("t = {t} is outside [0, 1]")));
    }
    Ok(())
}

fn log_lambda(p: &QPoint) -> Result<Quaternion> {
    qlog(p.lambda()).map_err(|_| Error::BranchViolation {
        distance: (p.lambda() + Quaternion::ONE).norm(),
    })
}

/// `Log A = x (Log lambda) x^*`, skew-adjoint since `Log lambda` is imaginary.
pub fn log_matrix(p: &QPoint) -> Result<HMatrix> {
    Ok(hmat::rank_one(p.x(), log_lambda(p)?))
}

/// `exp(x mu x^*) = I + x (e^mu - 1) x^*` for unit `x`.
pub fn exp_rank_one(x: &HVector, mu: Quaternion) -> HMatrix {
    let mut m = hmat::rank_one(x, qexp(mu) - Quaternion::ONE);
    for i in 0..x.len() {
        m[(i, i)] += Quaternion::ONE;
    }
    m
}

/// `Phi(A, t) = phi(x, exp((1 - t) Log lambda))`; stays in `Q_n`.
pub fn contract_o1(p: &QPoint, t: f64) -> Result<QPoint> {
    check_time(t)?;
    let log = log_lambda(p)?;
    phi(p.x(), qexp(log.scale(1.0 - t)))
}

/// First piece of `Psi`: `phi(x, exp((1 - 2t) Log i)) phi(x, i)`.
pub fn psi_first_branch(x: &HVector, t: f64) -> Result<HMatrix> {
    let moving = phi(x, qexp(Quaternion::I.scale((1.0 - 2.0 * t) * FRAC_PI_2)))?;
    let fixed = phi(x, Quaternion::I)?;
    hmat::matmul(moving.matrix(), fixed.matrix())
}

/// Second piece of `Psi`: `phi(x, exp(2(1 - t) Log i))`.
pub fn psi_second_branch(x: &HVector, t: f64) -> Result<HMatrix> {
    Ok(phi(x, qexp(Quaternion::I.scale(2.0 * (1.0 - t) * FRAC_PI_2)))?.into_matrix())
}

/// `Psi(A, t)` for `A = phi(x, -1)`, using the stored representative `x`.
pub fn contract_o2(p: &QPoint, t: f64) -> Result<HMatrix> {
    check_time(t)?;
    if classify(p, CLASS_EPS) != CoverClass::O2 {
        return Err(Error::DomainError(
            "contract_o2 needs a point with lambda = -1".into(),
        ));
    }
    if t <= 0.5 {
        psi_first_branch(p.x(), t)
    } else {
        psi_second_branch(p.x(), t)
    }
}

/// Uniform grid `i / steps`, `i = 0..=steps`.
pub fn time_grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 / steps as f64).collect()
}

/// A path point that failed `recover`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub sample: usize,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyCertificate {
    pub n: usize,
    pub set: CoverClass,
    pub samples: usize,
    pub time_steps: usize,
    pub tol: f64,
    pub seed: u64,
    pub max_endpoint_residual: f64,
    pub max_symplectic_residual: f64,
    /// Largest `||path(t_{i+1}) - path(t_i)|| / (pi (2 + ||A||) dt)`; above 1 flags a jump.
    pub max_continuity_ratio: f64,
    /// `Psi` only: disagreement of the two branch formulas at `t = 1/2`.
    pub max_branch_disagreement: f64,
    /// `Psi` only: largest `||Psi_x(A,t) - Psi_{x nu}(A,t)||` over random `nu`.
    pub max_representative_discrepancy: Option<f64>,
    pub stays_in_qn: bool,
    pub left_qn_witness: Option<Witness>,
    /// Samples violating an endpoint, symplectic, continuity or branch bound.
    pub failures: usize,
}

impl HomotopyCertificate {
    /// Numerical bounds hold; for `O1` and `O3` the paths must also stay in `Q_n`.
    pub fn passed(&self) -> bool {
        self.failures == 0 && (self.set == CoverClass::O2 || self.stays_in_qn)
    }
}

#[derive(Debug, Default, Clone)]
struct PathStats {
    endpoint: f64,
    symplectic: f64,
    continuity: f64,
    branch: f64,
    discrepancy: f64,
    exit: Option<f64>,
}

impl PathStats {
    fn failed(&self) -> bool {
        !(self.endpoint <= ENDPOINT_TOL
            && self.symplectic <= SYMPLECTIC_TOL
            && self.continuity <= 1.0
            && self.branch <= BRANCH_AGREEMENT_TOL)
    }
}

/// Sample a point of the given cover set from an explicit seed.
pub fn sample_class(set: CoverClass, n: usize, seed: u64) -> QPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match set {
        CoverClass::O1 => loop {
            let p = sample_qn_rng(&mut rng, n);
            if classify(&p, CLASS_EPS) == CoverClass::O1 && qlog(p.lambda()).is_ok() {
                return p;
            }
        },
        CoverClass::O2 => {
            let x = random_unit_vector(&mut rng, n);
            phi(&x, -Quaternion::ONE).expect("unit inputs")
        }
        CoverClass::O3 => {
            let x = random_unit_vector(&mut rng, n);
            let axis = random_unit_quaternion(&mut rng);
            let axis = Quaternion::pure(axis.imag());
            let axis = axis.normalize().unwrap_or(Quaternion::I);
            let angle = rng.random_range(0.0..=O3_RADIUS);
            phi(&x, qexp(axis.scale(angle))).expect("unit inputs")
        }
    }
}

fn class_salt(set: CoverClass) -> u64 {
    match set {
        CoverClass::O1 => 0x4f31,
        CoverClass::O2 => 0x4f32,
        CoverClass::O3 => 0x4f33,
    }
}

/// The contraction path of `p` as a matrix at time `t`.
pub fn contraction(set: CoverClass, p: &QPoint, t: f64) -> Result<HMatrix> {
    match set {
        CoverClass::O2 => contract_o2(p, t),
        CoverClass::O1 | CoverClass::O3 => Ok(contract_o1(p, t)?.into_matrix()),
    }
}

fn walk(set: CoverClass, p: &QPoint, grid: &[f64], tol: f64, seed: u64) -> Result<PathStats> {
    let n = p.dim();
    let identity = HMatrix::identity(n);
    let a = p.matrix();
    let lipschitz = PI * (2.0 + hmat::fro_norm(a));
    let mut stats = PathStats::default();
    let mut prev: Option<(f64, HMatrix)> = None;
    for &t in grid {
        let m = contraction(set, p, t)?;
        stats.symplectic = stats.symplectic.max(hmat::symplectic_residual(&m));
        if t == 0.0 {
            stats.endpoint = stats.endpoint.max(hmat::distance(&m, a)?);
        }
        if t == 1.0 {
            stats.endpoint = stats.endpoint.max(hmat::distance(&m, &identity)?);
        }
        if stats.exit.is_none() && qproj::recover(&m, tol).is_err() {
            stats.exit = Some(t);
        }
        if let Some((pt, pm)) = &prev {
            let ratio = hmat::distance(&m, pm)? / (lipschitz * (t - pt));
            stats.continuity = stats.continuity.max(ratio);
        }
        prev = Some((t, m));
    }
    if set == CoverClass::O2 {
        let first = psi_first_branch(p.x(), 0.5)?;
        let second = psi_second_branch(p.x(), 0.5)?;
        stats.branch = hmat::distance(&first, &second)?;

        let nu = random_unit_quaternion(&mut ChaCha8Rng::seed_from_u64(seed));
        let moved = phi(&p.x().scale_right(nu), -Quaternion::ONE)?;
        for &t in grid {
            let d = hmat::distance(&contract_o2(p, t)?, &contract_o2(&moved, t)?)?;
            stats.discrepancy = stats.discrepancy.max(d);
        }
    }
    Ok(stats)
}

/// Run every contraction on `samples` random points of each cover set.
pub fn verify_cover(
    n: usize,
    samples: usize,
    time_steps: usize,
    tol: f64,
    seed: u64,
) -> Result<Vec<HomotopyCertificate>> {
    CoverClass::ALL
        .iter()
        .map(|&set| certify(set, n, samples, time_steps, tol, seed))
        .collect()
}

/// Certificate for a single cover set.
pub fn certify(
    set: CoverClass,
    n: usize,
    samples: usize,
    time_steps: usize,
    tol: f64,
    seed: u64,
) -> Result<HomotopyCertificate> {
    if n == 0 || samples == 0 || time_steps < 2 {
        return Err(Error::DomainError(
            "need n >= 1, samples >= 1 and time_steps >= 2".into(),
        ));
    }
    let grid = time_grid(time_steps);
    let class_seed = seed ^ class_salt(set);
    let results: Vec<PathStats> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let sample_seed = derive_seed(class_seed, i as u64);
            // sample 0 of the O3 ball is the identity itself, contracted by the constant path
            let p = if set == CoverClass::O3 && i == 0 {
                qproj::base_point(n)
            } else {
                sample_class(set, n, sample_seed)
            };
            walk(set, &p, &grid, tol, derive_seed(sample_seed, 0x6e75))
        })
        .collect::<Result<_>>()?;

    let mut cert = HomotopyCertificate {
        n,
        set,
        samples,
        time_steps,
        tol,
        seed,
        max_endpoint_residual: 0.0,
        max_symplectic_residual: 0.0,
        max_continuity_ratio: 0.0,
        max_branch_disagreement: 0.0,
        max_representative_discrepancy: (set == CoverClass::O2).then_some(0.0),
        stays_in_qn: true,
        left_qn_witness: None,
        failures: 0,
    };
    for (i, s) in results.iter().enumerate() {
        cert.max_endpoint_residual = cert.max_endpoint_residual.max(s.endpoint);
        cert.max_symplectic_residual = cert.max_symplectic_residual.max(s.symplectic);
        cert.max_continuity_ratio = cert.max_continuity_ratio.max(s.continuity);
        cert.max_branch_disagreement = cert.max_branch_disagreement.max(s.branch);
        if let Some(d) = cert.max_representative_discrepancy.as_mut() {
            *d = d.max(s.discrepancy);
        }
        if let Some(t) = s.exit {
            cert.stays_in_qn = false;
            if cert.left_qn_witness.is_none() {
                cert.left_qn_witness = Some(Witness { sample: i, t });
            }
        }
        if s.failed() {
            cert.failures += 1;
        }
    }
    Ok(cert)
}

/// Class frequencies over random points plus forced `O2` and `O3` constructions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassCensus {
    pub total: usize,
    pub random: usize,
    pub forced_o2: usize,
    pub forced_o3: usize,
    pub o1: usize,
    pub o2: usize,
    pub o3: usize,
}

/// Classify `samples` points of `Q_n`: every tenth is forced to `lambda = -1`,
/// the one after it to `lambda = 1`, the rest are uniform.
pub fn census(n: usize, samples: usize, seed: u64) -> ClassCensus {
    let tags: Vec<(usize, CoverClass)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
            let (kind, p) = match i % 10 {
                0 => {
                    let x = random_unit_vector(&mut rng, n);
                    (1, phi(&x, -Quaternion::ONE).expect("unit inputs"))
                }
                1 => {
                    let x = random_unit_vector(&mut rng, n);
                    (2, phi(&x, Quaternion::ONE).expect("unit inputs"))
                }
                _ => (0, sample_qn_rng(&mut rng, n)),
            };
            (kind, classify(&p, CLASS_EPS))
        })
        .collect();
    let mut c = ClassCensus {
        total: samples,
        ..Default::default()
    };
    for (kind, tag) in tags {
        match kind {
            1 => c.forced_o2 += 1,
            2 => c.forced_o3 += 1,
            _ => c.random += 1,
        }
        match tag {
            CoverClass::O1 => c.o1 += 1,
            CoverClass::O2 => c.o2 += 1,
            CoverClass::O3 => c.o3 += 1,
        }
    }
    c
}

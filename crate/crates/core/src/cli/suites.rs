use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{SuiteConfig, SuiteResult};
use crate::cover::{self, CoverClass, HomotopyCertificate};
use crate::error::{Error, Result};
use crate::hmat::{self, HMatrix, HVector};
use crate::qproj::{
    self, cells, derive_seed, dim_sp, phi, poincare_polynomial, random_unit_quaternion,
    random_unit_vector,
};
use crate::quat::{qexp, qlog, similar, Quaternion};

pub const ROUND_TRIP_TOL: f64 = 1e-11;
pub const ALGEBRA_TOL: f64 = 1e-12;
pub const MEMBERSHIP_TOL: f64 = 1e-10;
pub const COMPOSITION_TOL: f64 = 1e-11;

fn rng_for(config: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(config.seed, salt))
}

fn uniform_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

fn record(result: &mut SuiteResult, err: f64, bound: f64) {
    result.max_endpoint_residual = result.max_endpoint_residual.max(err);
    if err.is_nan() || err > bound {
        result.failures += 1;
    }
}

fn quat_round_trip(config: &SuiteConfig) -> SuiteResult {
    let mut rng = rng_for(config, 1);
    let mut r = SuiteResult::new("quat_log_exp_round_trip", config.samples);
    let mut done = 0;
    while done < config.samples {
        let modulus = 10f64.powf(rng.random_range(-3.0..=3.0));
        let q = random_unit_quaternion(&mut rng).scale(modulus);
        let Ok(log) = qlog(q) else { continue };
        done += 1;
        record(&mut r, (qexp(log) - q).norm() / modulus, ROUND_TRIP_TOL);
    }
    let neg = matches!(qlog(-Quaternion::ONE), Err(Error::NegativeRealAxis { .. }));
    let zero = matches!(qlog(Quaternion::ZERO), Err(Error::ZeroQuaternion));
    if !(neg && zero) {
        r.failures += 1;
    }
    r.details = Some(json!({ "rejects_negative_one": neg, "rejects_zero": zero }));
    r
}

fn hmat_algebra(config: &SuiteConfig) -> Result<SuiteResult> {
    let n = config.n;
    let mut rng = rng_for(config, 2);
    let mut r = SuiteResult::new("hmat_algebra", config.samples);
    for _ in 0..config.samples {
        let a = HMatrix::from_fn(n, |_, _| uniform_quaternion(&mut rng));
        let b = HMatrix::from_fn(n, |_, _| uniform_quaternion(&mut rng));
        let v = HVector::new((0..n).map(|_| uniform_quaternion(&mut rng)).collect());
        let l = uniform_quaternion(&mut rng);

        let module =
            (&hmat::apply(&a, &v.scale_right(l))? - &hmat::apply(&a, &v)?.scale_right(l)).norm();
        let adj = hmat::distance(
            &hmat::adjoint(&hmat::matmul(&a, &b)?),
            &hmat::matmul(&hmat::adjoint(&b), &hmat::adjoint(&a))?,
        )?;
        let proj = (&hmat::apply(&hmat::rank_one(&v, l), &a.column(0))?
            - &v.scale_right(l * hmat::inner(&v, &a.column(0))?))
            .norm();
        record(&mut r, module.max(adj).max(proj), ALGEBRA_TOL);
    }
    Ok(r)
}

fn qproj_membership(config: &SuiteConfig) -> SuiteResult {
    let mut r = SuiteResult::new("qproj_membership", config.samples);
    for i in 0..config.samples {
        let p = qproj::sample_qn(config.n, derive_seed(config.seed ^ 3, i as u64));
        let res = hmat::symplectic_residual(p.matrix());
        r.max_symplectic_residual = r.max_symplectic_residual.max(res);
        if res.is_nan() || res > MEMBERSHIP_TOL {
            r.failures += 1;
        }
    }
    r
}

fn qproj_composition(config: &SuiteConfig) -> Result<SuiteResult> {
    let mut rng = rng_for(config, 4);
    let mut r = SuiteResult::new("qproj_composition", config.samples);
    for _ in 0..config.samples {
        let x = random_unit_vector(&mut rng, config.n);
        let l = random_unit_quaternion(&mut rng);
        let m = random_unit_quaternion(&mut rng);
        let prod = hmat::matmul(phi(&x, l)?.matrix(), phi(&x, m)?.matrix())?;
        record(
            &mut r,
            hmat::distance(&prod, phi(&x, l * m)?.matrix())?,
            COMPOSITION_TOL,
        );
    }
    Ok(r)
}

fn qproj_equivalence(config: &SuiteConfig) -> Result<SuiteResult> {
    let mut rng = rng_for(config, 5);
    let mut r = SuiteResult::new("qproj_equivalence", config.samples);
    for _ in 0..config.samples {
        let x = random_unit_vector(&mut rng, config.n);
        let l = random_unit_quaternion(&mut rng);
        let nu = random_unit_quaternion(&mut rng);
        let a = phi(&x, l)?;
        let b = phi(&x.scale_right(nu), nu.conj() * l * nu)?;
        let d = hmat::distance(a.matrix(), b.matrix())?;
        record(&mut r, d, ALGEBRA_TOL);
        if !qproj::equivalent(&a, &b, config.tol) {
            r.failures += 1;
        }
    }
    Ok(r)
}

fn qproj_recover(config: &SuiteConfig) -> Result<SuiteResult> {
    let n = config.n;
    let mut rng = rng_for(config, 6);
    let mut r = SuiteResult::new("qproj_recover", config.samples);
    let mut rejected = 0;
    for _ in 0..config.samples {
        let x = random_unit_vector(&mut rng, n);
        let l = random_unit_quaternion(&mut rng);
        let p = phi(&x, l)?;
        match qproj::recover(p.matrix(), config.tol) {
            Ok(back) => {
                let d = hmat::distance(back.matrix(), p.matrix())?;
                r.max_endpoint_residual = r.max_endpoint_residual.max(d);
                if !(qproj::equivalent(&back, &p, config.tol)
                    && similar(back.lambda(), l, config.tol))
                {
                    r.failures += 1;
                }
            }
            Err(_) => r.failures += 1,
        }
        if n >= 2 {
            // phi(x, i) phi(y, j) with y orthogonal to x moves a 2-plane
            let y = random_unit_vector(&mut rng, n);
            let y = (&y - &x.scale_right(hmat::inner(&x, &y)?)).normalize()?;
            let prod = hmat::matmul(
                phi(&x, Quaternion::I)?.matrix(),
                phi(&y, Quaternion::J)?.matrix(),
            )?;
            match qproj::recover(&prod, config.tol) {
                Err(Error::NotInQn { .. }) => rejected += 1,
                _ => r.failures += 1,
            }
        }
    }
    r.details = Some(json!({ "rank_two_rejected": rejected }));
    Ok(r)
}

fn cover_census(config: &SuiteConfig) -> SuiteResult {
    let c = cover::census(config.n, config.samples, derive_seed(config.seed, 7));
    let mut r = SuiteResult::new("cover_classification", config.samples);
    if c.o1 + c.o2 + c.o3 != c.total || c.o2 < c.forced_o2 || c.o3 < c.forced_o3 {
        r.failures += 1;
    }
    r.details = Some(serde_json::to_value(&c).expect("census serializes"));
    r
}

fn cover_suite(cert: &HomotopyCertificate) -> SuiteResult {
    let mut r = SuiteResult::new(&format!("cover_{}", cert.set.name()), cert.samples);
    r.failures = cert.failures;
    r.max_endpoint_residual = cert.max_endpoint_residual;
    r.max_symplectic_residual = cert.max_symplectic_residual;
    r.witness = cert.left_qn_witness;
    r.stays_in_qn = Some(cert.stays_in_qn);
    let mut details = json!({
        "time_steps": cert.time_steps,
        "max_continuity_ratio": cert.max_continuity_ratio,
    });
    if cert.set == CoverClass::O2 {
        details["max_branch_disagreement"] = json!(cert.max_branch_disagreement);
        details["max_representative_discrepancy"] = json!(cert.max_representative_discrepancy);
    }
    r.details = Some(details);
    r
}

fn cell_structure(config: &SuiteConfig) -> SuiteResult {
    let n = config.n;
    let list = cells(n);
    let mut r = SuiteResult::new("cells", list.len());
    let mut expanded = vec![1u64];
    for i in 1..=n {
        let d = 4 * i - 1;
        let mut next = vec![0u64; expanded.len() + d];
        for (k, &c) in expanded.iter().enumerate() {
            next[k] += c;
            next[k + d] += c;
        }
        expanded = next;
    }
    let top = list.last().map_or(0, |c| c.dimension());
    if list.len() != 1 << n || top != dim_sp(n) || poincare_polynomial(n) != expanded {
        r.failures += 1;
    }
    r.details = Some(json!({ "count": list.len(), "top_dim": top }));
    r
}

/// Every property suite plus the three cover certificates, in report order.
pub fn run_suites(config: &SuiteConfig) -> Result<Vec<SuiteResult>> {
    let mut suites = vec![
        quat_round_trip(config),
        hmat_algebra(config)?,
        qproj_membership(config),
        qproj_composition(config)?,
        qproj_equivalence(config)?,
        qproj_recover(config)?,
        cover_census(config),
    ];
    let certs = cover::verify_cover(
        config.n,
        config.samples,
        config.time_steps,
        config.tol,
        config.seed,
    )?;
    suites.extend(certs.iter().map(cover_suite));
    if config.n <= 20 {
        suites.push(cell_structure(config));
    }
    Ok(suites)
}

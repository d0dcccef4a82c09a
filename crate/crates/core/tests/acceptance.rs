//! Acceptance criteria, one pass/fail line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::process::Command;

use common::{expanded_poincare, hmat_exp_series};
use quatcat::cover::{self, census, exp_rank_one, CoverClass, CLASS_EPS};
use quatcat::hmat::{self, rank_one};
use quatcat::qproj::{
    cells, derive_seed, dim_sp, equivalent, phi, poincare_polynomial, random_unit_quaternion,
    random_unit_vector, recover, sample_qn,
};
use quatcat::quat::{qexp, qlog, Quaternion};
use quatcat::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const RECOVER_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(SEED, salt))
}

fn scalar_round_trip() -> Outcome {
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 10_000 {
        let modulus = 10f64.powf(rng.random_range(-3.0..=3.0));
        let q = random_unit_quaternion(&mut rng).scale(modulus);
        // closed negative real axis excluded
        if q.imag_norm() == 0.0 && q.re < 0.0 {
            continue;
        }
        let back = qexp(qlog(q).expect("off the branch cut"));
        worst = worst.max((back - q).norm() / q.norm());
        count += 1;
    }
    let neg = matches!(qlog(-Quaternion::ONE), Err(Error::NegativeRealAxis { .. }));
    let zero = matches!(qlog(Quaternion::ZERO), Err(Error::ZeroQuaternion));
    outcome(
        worst <= 1e-11 && neg && zero,
        format!(
            "max rel err {worst:.2e} (<= 1e-11); Log(-1) rejected {neg}; Log(0) rejected {zero}"
        ),
    )
}

fn group_membership() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=5 {
        for i in 0..1000 {
            let p = sample_qn(n, derive_seed(SEED ^ 2, (n * 1000 + i) as u64));
            worst = worst.max(hmat::symplectic_residual(p.matrix()));
        }
    }
    outcome(
        worst <= 1e-10,
        format!("max ||A*A - I||_F {worst:.2e} (<= 1e-10), n = 1..5"),
    )
}

fn composition_identity() -> Outcome {
    let mut rng = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.random_range(1..=5);
        let x = random_unit_vector(&mut rng, n);
        let l = random_unit_quaternion(&mut rng);
        let m = random_unit_quaternion(&mut rng);
        let prod =
            hmat::matmul(phi(&x, l).unwrap().matrix(), phi(&x, m).unwrap().matrix()).unwrap();
        worst = worst.max(hmat::distance(&prod, phi(&x, l * m).unwrap().matrix()).unwrap());
    }
    // the particular case phi(x, -1) = phi(x, i) phi(x, i)
    let x = random_unit_vector(&mut rng, 4);
    let ii = hmat::matmul(
        phi(&x, Quaternion::I).unwrap().matrix(),
        phi(&x, Quaternion::I).unwrap().matrix(),
    )
    .unwrap();
    let minus = hmat::distance(&ii, phi(&x, -Quaternion::ONE).unwrap().matrix()).unwrap();
    worst = worst.max(minus);
    outcome(
        worst <= 1e-11,
        format!("max ||phi(x,l)phi(x,m) - phi(x,lm)||_F {worst:.2e} (<= 1e-11)"),
    )
}

fn recovery() -> Outcome {
    let mut rng = rng(4);
    let mut failures = 0;
    let mut rejected = 0;
    let mut pairs = 0;
    for n in 2..=5 {
        for _ in 0..1000 {
            let x = random_unit_vector(&mut rng, n);
            let l = random_unit_quaternion(&mut rng);
            let p = phi(&x, l).unwrap();
            match recover(p.matrix(), RECOVER_TOL) {
                Ok(back) if equivalent(&back, &p, RECOVER_TOL) => {}
                _ => failures += 1,
            }
        }
        for _ in 0..100 {
            let x = random_unit_vector(&mut rng, n);
            let y = random_unit_vector(&mut rng, n);
            let y = (&y - &x.scale_right(hmat::inner(&x, &y).unwrap()))
                .normalize()
                .unwrap();
            let a = hmat::matmul(
                phi(&x, Quaternion::I).unwrap().matrix(),
                phi(&y, Quaternion::J).unwrap().matrix(),
            )
            .unwrap();
            pairs += 1;
            if matches!(recover(&a, RECOVER_TOL), Err(Error::NotInQn { .. })) {
                rejected += 1;
            }
        }
    }
    outcome(
        failures == 0 && rejected == pairs,
        format!(
            "round-trip failures {failures}/4000; rank-two products rejected {rejected}/{pairs}"
        ),
    )
}

fn log_exp_collapse() -> Outcome {
    let mut rng = rng(5);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.random_range(1..=5);
        let x = random_unit_vector(&mut rng, n);
        let mu = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let series = hmat_exp_series(&rank_one(&x, mu), 20);
        worst = worst.max(hmat::distance(&exp_rank_one(&x, mu), &series).unwrap());
    }
    outcome(
        worst <= 1e-10,
        format!("max ||exp_rank_one - series_20||_F {worst:.2e} (<= 1e-10)"),
    )
}

fn phi_certificate() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let cert = cover::certify(CoverClass::O1, n, 100, 64, RECOVER_TOL, SEED).unwrap();
        let ok = cert.max_endpoint_residual <= 1e-10
            && cert.max_symplectic_residual <= 1e-10
            && cert.stays_in_qn
            && cert.passed();
        pass &= ok;
        parts.push(format!(
            "n={n}: endpoint {:.2e}, symplectic {:.2e}, stays in Q_n {}",
            cert.max_endpoint_residual, cert.max_symplectic_residual, cert.stays_in_qn
        ));
    }
    outcome(pass, parts.join("; "))
}

fn psi_certificate() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [1, 2, 3] {
        let cert = cover::certify(CoverClass::O2, n, 100, 64, RECOVER_TOL, SEED).unwrap();
        let ok = cert.max_endpoint_residual <= 1e-10
            && cert.max_branch_disagreement <= 1e-12
            && cert.max_symplectic_residual <= 1e-10;
        pass &= ok;
        let trace = match cert.left_qn_witness {
            Some(w) => format!("left Q_n at sample {} t={}", w.sample, w.t),
            None => "stays in Q_n on the whole grid".to_string(),
        };
        parts.push(format!(
            "n={n}: endpoint {:.2e}, branch gap {:.2e}, symplectic {:.2e}, {trace}, representative spread {:.2}",
            cert.max_endpoint_residual,
            cert.max_branch_disagreement,
            cert.max_symplectic_residual,
            cert.max_representative_discrepancy.unwrap_or(0.0)
        ));
    }
    outcome(pass, parts.join("; "))
}

fn cover_tags() -> Outcome {
    let c = census(3, 10_000, derive_seed(SEED, 8));
    // classification is exhaustive and follows the lambda rule
    let mut rule_ok = true;
    for s in 0..200 {
        let p = sample_qn(3, s);
        let tag = cover::classify(&p, CLASS_EPS);
        let l = p.lambda();
        let expected = if (l + Quaternion::ONE).norm() <= CLASS_EPS {
            CoverClass::O2
        } else if (l - Quaternion::ONE).norm() <= CLASS_EPS {
            CoverClass::O3
        } else {
            CoverClass::O1
        };
        rule_ok &= tag == expected;
    }
    let pass = rule_ok
        && c.o1 + c.o2 + c.o3 == 10_000
        && c.forced_o2 > 0
        && c.forced_o3 > 0
        && c.random > 0
        && c.o2 >= c.forced_o2
        && c.o3 >= c.forced_o3;
    outcome(
        pass,
        format!(
            "{} points: O1 {}, O2 {}, O3 {} (random {}, forced O2 {}, forced O3 {})",
            c.total, c.o1, c.o2, c.o3, c.random, c.forced_o2, c.forced_o3
        ),
    )
}

fn cell_structure() -> Outcome {
    let mut pass = true;
    for n in 1..=8 {
        let list = cells(n);
        let top = list.iter().map(|c| c.dimension()).max().unwrap();
        pass &= list.len() == 1 << n && top == dim_sp(n) && top == 2 * n * n + n;
        pass &= poincare_polynomial(n) == expanded_poincare(n);
    }
    outcome(
        pass,
        "n = 1..8: 2^n cells, top dim 2n^2+n, P(t) = prod(1+t^(4i-1))".to_string(),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_quatcat"))
            .args(["verify", "--n", "3", "--samples", "100", "--seed", "42"])
            .output()
            .expect("run quatcat")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let ok = a.status.code() == Some(0) && b.status.code() == Some(0);
    outcome(
        same && ok,
        format!(
            "{} report bytes, identical {same}, exit 0 {ok}",
            a.stdout.len()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 scalar log/exp round trip", scalar_round_trip),
        ("2 group membership", group_membership),
        ("3 composition identity", composition_identity),
        ("4 recovery", recovery),
        ("5 matrix log/exp collapse", log_exp_collapse),
        ("6 Phi certificate", phi_certificate),
        ("7 Psi certificate", psi_certificate),
        ("8 cover classification", cover_tags),
        ("9 cells", cell_structure),
        ("10 determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!(
            "[{}] criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

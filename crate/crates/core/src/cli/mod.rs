//! Verification report, cell listing and path traces behind the `quatcat` binary.

mod suites;

use std::fmt::Write as _;

use serde::Serialize;

use crate::cover::{self, CoverClass, Witness};
use crate::error::{Error, Result};
use crate::hmat::{self, HMatrix};
use crate::qproj::{self, cells, poincare_polynomial};

pub use suites::run_suites;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable holding the worker-count hint (`0` = automatic).
pub const THREADS_ENV: &str = "QUATCAT_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub samples: usize,
    pub time_steps: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n: 3,
            samples: 100,
            time_steps: 64,
            tol: 1e-9,
            seed: 42,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::DomainError("n must be at least 1".into()));
        }
        if self.samples < 1 {
            return Err(Error::DomainError("samples must be at least 1".into()));
        }
        if self.time_steps < 2 {
            return Err(Error::DomainError("steps must be at least 2".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::DomainError("tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Pass,
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub expectation: Expectation,
    pub samples: usize,
    pub failures: usize,
    pub max_endpoint_residual: f64,
    pub max_symplectic_residual: f64,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stays_in_qn: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl SuiteResult {
    pub(crate) fn new(name: &str, samples: usize) -> Self {
        Self {
            name: name.to_string(),
            expectation: Expectation::Pass,
            samples,
            failures: 0,
            max_endpoint_residual: 0.0,
            max_symplectic_residual: 0.0,
            witness: None,
            stays_in_qn: None,
            details: None,
        }
    }

    /// A `pass` suite passes with no failures and no witness; a `witness`
    /// suite must have recorded one.
    pub fn passed(&self) -> bool {
        match self.expectation {
            Expectation::Pass => self.failures == 0 && self.witness.is_none(),
            Expectation::Witness => self.failures == 0 && self.witness.is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub verdict: Verdict,
    pub version: String,
}

impl Report {
    pub fn from_suites(config: SuiteConfig, suites: Vec<SuiteResult>) -> Self {
        let verdict = if suites.iter().all(SuiteResult::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            config,
            suites,
            verdict,
            version: VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

pub fn cmd_verify(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let suites = run_suites(config)?;
    Ok(Report::from_suites(config.clone(), suites))
}

#[derive(Serialize)]
struct CellRecord {
    indices: Vec<usize>,
    dim: usize,
}

#[derive(Serialize)]
struct CellListing {
    n: usize,
    cells: Vec<CellRecord>,
    count: usize,
    top_dim: usize,
    poincare: Vec<u64>,
}

fn format_polynomial(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match (d, c) {
            (0, c) => c.to_string(),
            (d, 1) => format!("t^{d}"),
            (d, c) => format!("{c}t^{d}"),
        })
        .collect();
    format!("P(t)={}", terms.join("+"))
}

/// Normal cells of `Sp(n)` with dimensions, count and Poincaré polynomial.
pub fn cmd_cells(n: usize, json: bool) -> Result<String> {
    if !(1..=32).contains(&n) {
        return Err(Error::DomainError("n must be between 1 and 32".into()));
    }
    let list = cells(n);
    let poly = poincare_polynomial(n);
    if json {
        let listing = CellListing {
            n,
            count: list.len(),
            top_dim: list.last().map_or(0, |c| c.dimension()),
            cells: list
                .iter()
                .map(|c| CellRecord {
                    indices: c.indices().to_vec(),
                    dim: c.dimension(),
                })
                .collect(),
            poincare: poly,
        };
        let mut s = serde_json::to_string_pretty(&listing).expect("listing serializes");
        s.push('\n');
        return Ok(s);
    }
    let mut out = String::new();
    for c in list.iter().filter(|c| !c.is_zero_cell()) {
        writeln!(out, "{c}: dim {}", c.dimension()).unwrap();
    }
    writeln!(out, "cells {}", list.len()).unwrap();
    writeln!(out, "{}", format_polynomial(&poly)).unwrap();
    Ok(out)
}

/// CSV trace `t,sympl_residual,dist_to_I,in_qn` of one contraction path.
pub fn cmd_path(n: usize, set: CoverClass, steps: usize, tol: f64, seed: u64) -> Result<String> {
    if n < 1 || steps < 2 {
        return Err(Error::DomainError("need n >= 1 and steps >= 2".into()));
    }
    let p = cover::sample_class(set, n, seed);
    let identity = HMatrix::identity(n);
    let mut out = String::from("t,sympl_residual,dist_to_I,in_qn\n");
    for t in cover::time_grid(steps) {
        let m = cover::contraction(set, &p, t)?;
        let in_qn = qproj::recover(&m, tol).is_ok();
        writeln!(
            out,
            "{t},{:e},{:e},{in_qn}",
            hmat::symplectic_residual(&m),
            hmat::distance(&m, &identity)?
        )
        .unwrap();
    }
    Ok(out)
}

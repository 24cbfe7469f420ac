//! Executable checks of the quaternion-type composition rules and of the
//! subalgebra, Lie algebra and group statements built on them.
//!
//! Every check returns a [`CheckReport`]; violations are reported, not
//! raised. Exhaustive checks iterate basis pairs, which is complete because
//! the operations are bilinear and the projections linear. Random checks
//! draw integer coefficients so that comparisons stay exact.

mod checks;
pub mod rng;
pub mod sample;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::blade::Signature;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::qtype::Leak;

pub use checks::*;

/// Generators above this count switch the default strategy to sampling.
pub const EXHAUSTIVE_MAX_N: usize = 6;
/// Tolerance for unitarity and ambient-pattern leakage of exponentials.
pub const GROUP_TOL: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Random,
}

impl Strategy {
    pub fn default_for(sig: Signature) -> Strategy {
        if sig.n() <= EXHAUSTIVE_MAX_N {
            Strategy::Exhaustive
        } else {
            Strategy::Random
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckConfig {
    pub sig: Signature,
    pub seed: u64,
    /// Cases per relation in random mode; ignored by exhaustive checks.
    pub samples: usize,
    pub tol: f64,
    pub strategy: Strategy,
    pub exp_eps: f64,
    pub exp_max_terms: usize,
}

impl CheckConfig {
    pub fn new(sig: Signature) -> Self {
        CheckConfig {
            sig,
            seed: 0,
            samples: 200,
            tol: 1e-12,
            strategy: Strategy::default_for(sig),
            exp_eps: 1e-14,
            exp_max_terms: 200,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.strategy == Strategy::Random && self.samples == 0 {
            return Err(Error::InvalidConfig("random strategy needs samples >= 1".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidConfig(format!("tolerance must be >= 0, got {}", self.tol)));
        }
        if self.exp_eps.is_nan() || self.exp_eps <= 0.0 {
            return Err(Error::InvalidConfig(format!("exp_eps must be > 0, got {}", self.exp_eps)));
        }
        if self.exp_max_terms == 0 {
            return Err(Error::InvalidConfig("exp_max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub lhs: String,
    pub rhs: String,
    pub operation: String,
    pub projection: String,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub cases_run: u64,
    pub counterexample: Option<Counterexample>,
    pub notes: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn skipped(name: impl Into<String>, notes: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Skipped,
            cases_run: 0,
            counterexample: None,
            notes: notes.into(),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({} cases)", self.status, self.name, self.cases_run)?;
        if !self.notes.is_empty() {
            write!(f, ": {}", self.notes)?;
        }
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n    counterexample: {} of ({}) and ({}) leaks {} = {:e}",
                c.operation, c.lhs, c.rhs, c.projection, c.magnitude
            )?;
        }
        Ok(())
    }
}

/// Accumulates cases for one report and keeps the first violation.
pub(crate) struct Tally {
    name: String,
    cases: u64,
    counterexample: Option<Counterexample>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), cases: 0, counterexample: None, notes: Vec::new() }
    }

    pub(crate) fn case(&mut self) {
        self.cases += 1;
    }

    pub(crate) fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    pub(crate) fn fail(&mut self, c: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(c);
        }
    }

    pub(crate) fn leak(&mut self, op: &str, lhs: &Multivector, rhs: &Multivector, leak: Option<Leak>) {
        if let Some(l) = leak {
            self.fail(Counterexample {
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                operation: op.to_string(),
                projection: l.to_string(),
                magnitude: l.magnitude,
            });
        }
    }

    pub(crate) fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            status: if self.counterexample.is_some() { Status::Fail } else { Status::Pass },
            name: self.name,
            cases_run: self.cases,
            counterexample: self.counterexample,
            notes: self.notes.join("; "),
        }
    }
}

/// Merges reports under one name: fails if any part fails.
pub fn combine(name: &str, parts: Vec<CheckReport>) -> CheckReport {
    let status = if parts.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if parts.iter().all(|r| r.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    };
    CheckReport {
        name: name.to_string(),
        status,
        cases_run: parts.iter().map(|r| r.cases_run).sum(),
        counterexample: parts.iter().find_map(|r| r.counterexample.clone()),
        notes: parts.iter().map(|r| format!("{}: {}", r.name, r.notes)).collect::<Vec<_>>().join(" | "),
    }
}

/// Check identifiers accepted by [`run_suite`].
pub const CHECK_NAMES: &[&str] = &[
    "axioms",
    "grades",
    "tables",
    "subalgebras",
    "lie-quaternion",
    "lie-subalgebras",
    "groups",
    "theorems",
    "rank",
    "quaternions",
    "all",
];

#[derive(Copy, Clone, Debug)]
enum Job {
    Axioms,
    Grades,
    Tables,
    Subalgebras,
    LieQuaternion,
    LieSubalgebras,
    Groups,
    Rank,
    Quaternions,
}

fn expand(name: &str, jobs: &mut Vec<Job>) -> Result<()> {
    match name {
        "axioms" => jobs.push(Job::Axioms),
        "grades" => jobs.push(Job::Grades),
        "tables" => jobs.push(Job::Tables),
        "subalgebras" => jobs.push(Job::Subalgebras),
        "lie-quaternion" => jobs.push(Job::LieQuaternion),
        "lie-subalgebras" => jobs.push(Job::LieSubalgebras),
        "groups" => jobs.push(Job::Groups),
        "theorems" => jobs.extend([Job::Subalgebras, Job::LieQuaternion, Job::LieSubalgebras, Job::Groups]),
        "rank" => jobs.push(Job::Rank),
        "quaternions" => jobs.push(Job::Quaternions),
        "all" => {
            for n in ["axioms", "grades", "tables", "theorems", "rank", "quaternions"] {
                expand(n, jobs)?;
            }
        }
        other => return Err(Error::UnknownCheck(other.to_string())),
    }
    Ok(())
}

fn run_job(job: Job, cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    Ok(match job {
        Job::Axioms => vec![check_axioms(cfg)],
        Job::Grades => vec![check_grade_pattern(cfg)],
        Job::Tables => crate::qtype::OpKind::ALL.iter().map(|op| check_type_table(*op, cfg)).collect(),
        Job::Subalgebras => check_subalgebra_theorems(cfg),
        Job::LieQuaternion => vec![check_lie_quaternion(cfg)],
        Job::LieSubalgebras => check_lie_subalgebras(cfg),
        Job::Groups => check_groups(cfg)?,
        Job::Rank => vec![check_rank_coincidence(cfg)],
        Job::Quaternions => vec![check_quaternion_units()],
    })
}

/// Runs the named checks. Each check seeds itself from `(cfg.seed, name)`,
/// so reports do not depend on order or parallelism.
pub fn run_suite<S: AsRef<str>>(names: &[S], cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for n in names {
        expand(n.as_ref(), &mut jobs)?;
    }
    let results: Vec<Result<Vec<CheckReport>>> = jobs.par_iter().map(|j| run_job(*j, cfg)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

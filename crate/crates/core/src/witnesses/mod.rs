//! Witness and refuter constructions for the defining formulas, fixed
//! counterexamples, and the seeded check driver.

mod builders;
mod check;
mod counterexamples;
mod search;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::FieldElem;
use crate::formulas::FormulaError;
use crate::minkowski::{GeometryError, Point, RelKind};
use crate::transforms::TransformError;

pub use builders::{
    refuter_psi_ls, refuter_psi_st, refuter_psi_ts, refuter_wsl, witness_ets, witness_ets_hat,
    witness_psi_ls, witness_psi_st_inner, witness_psi_ts_inner, witness_wsl, WslWitness,
};
pub use check::{check_formula, CheckOptions, KindTally};
pub use counterexamples::{counterexample, Counterexample, CounterexampleName};
pub use search::search_existential;

/// Values of the variables of a formula.
pub type Assignment = BTreeMap<String, Point>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("expected a {expected} pair, got {got}")]
    WrongRelation { expected: String, got: RelKind },
    #[error("construction needs n {need}, got n = {got}")]
    WrongDimension { need: &'static str, got: usize },
    #[error("z coincides with a free point")]
    DegenerateZ,
    #[error("canonical frame needs square roots of {0:?}")]
    NotASquare(Vec<FieldElem>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction did not produce a witness: {0}")]
    NoConstruction(String),
    #[error("sampled point breaks the refutation")]
    SampledCounterexample(Assignment),
    #[error("{name} needs {regime}, got n = {n}")]
    RegimeViolation { name: String, regime: String, n: usize },
    #[error("unknown counterexample {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Transform(TransformError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

impl From<TransformError> for WitnessError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::NotASquare(v) => WitnessError::NotASquare(v),
            e => WitnessError::Transform(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// How a direction of a check was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Strategy {
    ExactWitness,
    ExactRefuterInstance,
    SampledNoCounterexample,
}

/// Outcome of a plan or formula check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub plan: String,
    pub status: Status,
    pub trials: usize,
    pub seed: u64,
    /// Per relation kind of the free pair.
    pub tallies: Vec<KindTally>,
    /// A few exact witness assignments.
    pub witnesses: Vec<Assignment>,
    /// A falsifying assignment when `status` is `Fail`.
    pub counterexample: Option<Assignment>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(plan: &str, trials: usize, seed: u64) -> Verdict {
        Verdict {
            plan: plan.to_string(),
            status: Status::Pass,
            trials,
            seed,
            tallies: Vec::new(),
            witnesses: Vec::new(),
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Records a failure; the first counterexample is kept.
    pub fn fail(&mut self, why: impl Into<String>, assignment: Option<Assignment>) {
        self.status = Status::Fail;
        self.note(why);
        if self.counterexample.is_none() {
            self.counterexample = assignment;
        }
    }

    /// Downgrades a passing verdict.
    pub fn inconclusive(&mut self, why: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
        }
        self.note(why);
    }

    /// Folds another verdict into this one.
    pub fn absorb(&mut self, other: Verdict) {
        match other.status {
            Status::Fail => self.status = Status::Fail,
            Status::Inconclusive if self.status == Status::Pass => self.status = Status::Inconclusive,
            _ => {}
        }
        self.tallies.extend(other.tallies);
        self.witnesses.extend(other.witnesses);
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        let prefix = other.plan;
        self.notes.extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
    }
}

/// Builds an assignment from `(name, point)` pairs.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, Point)>) -> Assignment {
    crate::formulas::env(pairs)
}

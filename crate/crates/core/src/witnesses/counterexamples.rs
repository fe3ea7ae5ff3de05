//! Fixed point sets showing the two-dimensional σ→τ formulas fail for n = 3.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{assignment, Assignment, WitnessError};
use crate::formulas::{builtin, FormulaName};
use crate::minkowski::{rel, Point, RelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CounterexampleName {
    EstLightlike3D,
    EstSpacelike3D,
    EstHatLightlike3D,
}

impl CounterexampleName {
    pub const ALL: [CounterexampleName; 3] = [
        CounterexampleName::EstLightlike3D,
        CounterexampleName::EstSpacelike3D,
        CounterexampleName::EstHatLightlike3D,
    ];
}

impl fmt::Display for CounterexampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CounterexampleName {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CounterexampleName::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| WitnessError::UnknownName(s.to_string()))
    }
}

/// An assignment satisfying an existential matrix whose free pair is not
/// of the formula's target kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub name: CounterexampleName,
    pub formula: FormulaName,
    pub assignment: Assignment,
    pub pair_kind: RelKind,
}

impl Counterexample {
    /// Whether the matrix holds and the pair misses the target.
    pub fn verify(&self) -> bool {
        let nf = builtin(self.formula);
        let (_, matrix) = nf.formula.existential_prefix();
        let p = &self.assignment["p"];
        let q = &self.assignment["q"];
        matrix.eval_qf(&self.assignment).unwrap_or(false)
            && rel(p, q) == self.pair_kind
            && self.pair_kind != nf.target
    }
}

pub fn counterexample(name: CounterexampleName) -> Counterexample {
    let pt = Point::ints;
    let (formula, pairs, pair_kind) = match name {
        CounterexampleName::EstLightlike3D => (
            FormulaName::Est,
            vec![
                ("p", pt(&[-2, -2, 0])),
                ("q", pt(&[2, 2, 0])),
                ("s", pt(&[0, 0, 0])),
                ("x", pt(&[-2, 0, 0])),
                ("z", pt(&[2, 0, 0])),
                ("r", pt(&[0, 0, 1])),
            ],
            RelKind::Lightlike,
        ),
        CounterexampleName::EstSpacelike3D => (
            FormulaName::Est,
            vec![
                ("p", pt(&[0, -2, 0])),
                ("q", pt(&[0, 2, 0])),
                ("x", pt(&[3, 2, -2])),
                ("s", pt(&[3, 0, 1])),
                ("z", pt(&[3, -2, -2])),
                ("r", pt(&[0, 0, -3])),
            ],
            RelKind::Spacelike,
        ),
        CounterexampleName::EstHatLightlike3D => (
            FormulaName::EstHat,
            vec![
                ("p", pt(&[-2, -2, 0])),
                ("q", pt(&[2, 2, 0])),
                ("x", pt(&[-2, 0, 3])),
                ("y", pt(&[0, 0, 0])),
                ("z", pt(&[2, 0, 3])),
            ],
            RelKind::Lightlike,
        ),
    };
    Counterexample { name, formula, assignment: assignment(pairs), pair_kind }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_verify() {
        for name in CounterexampleName::ALL {
            assert!(counterexample(name).verify(), "{name}");
        }
    }

    #[test]
    fn perturbed_fixture_fails() {
        let mut c = counterexample(CounterexampleName::EstLightlike3D);
        c.assignment.insert("r".into(), Point::ints(&[5, 0, 0]));
        assert!(!c.verify());
    }

    #[test]
    fn names_parse() {
        assert_eq!(
            "esthatlightlike3d".parse::<CounterexampleName>().unwrap(),
            CounterexampleName::EstHatLightlike3D
        );
        assert!("nope".parse::<CounterexampleName>().is_err());
    }
}

//! The relation algebra generated by one relation `ρ ∈ {τ, λ, σ}` and `=`
//! over the atoms `=`, `ρ`, `ρ̄≠`, and a witness-backed check of its
//! composition table.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::minkowski::{rel, Point, RelKind, RelSet};
use crate::sampling::{self, trial_rng};
use crate::witnesses::{assignment, Assignment, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Atom {
    Id,
    Rho,
    RhoBarNe,
}

impl Atom {
    pub const ALL: [Atom; 3] = [Atom::Id, Atom::Rho, Atom::RhoBarNe];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    /// The Minkowski kinds this atom stands for when `ρ = rho`.
    pub fn kinds(self, rho: RelKind) -> RelSet {
        match self {
            Atom::Id => RelSet::EQ,
            Atom::Rho => RelSet::of(rho),
            Atom::RhoBarNe => (!RelSet::of(rho)).without_eq(),
        }
    }
}

/// A union of atoms, i.e. one of the eight relations `∅, =, ≠, ρ, ρ̄, ρ̄≠, ρ∪=, U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AtomSet(u8);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);
    pub const UNIVERSAL: AtomSet = AtomSet(0b111);
    pub const ID: AtomSet = AtomSet(0b001);
    pub const RHO: AtomSet = AtomSet(0b010);
    pub const RHO_BAR_NE: AtomSet = AtomSet(0b100);
    pub const NE: AtomSet = AtomSet(0b110);

    pub fn of(atoms: &[Atom]) -> AtomSet {
        AtomSet(atoms.iter().fold(0, |m, a| m | a.bit()))
    }

    pub fn from_bits(bits: u8) -> AtomSet {
        AtomSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 & a.bit() != 0
    }

    pub fn atoms(self) -> impl Iterator<Item = Atom> {
        Atom::ALL.into_iter().filter(move |a| self.contains(*a))
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn kinds(self, rho: RelKind) -> RelSet {
        self.atoms().fold(RelSet::EMPTY, |s, a| s | a.kinds(rho))
    }

    /// The atom set whose kinds are exactly `target`, if there is one.
    pub fn from_kinds(target: RelSet, rho: RelKind) -> Option<AtomSet> {
        let s = AtomSet::of(
            &Atom::ALL
                .into_iter()
                .filter(|a| (a.kinds(rho) & target) == a.kinds(rho))
                .collect::<Vec<_>>(),
        );
        (s.kinds(rho) == target).then_some(s)
    }

    /// Symbolic name in terms of `ρ`.
    pub fn name(self) -> &'static str {
        ["∅", "=", "ρ", "ρ∪=", "ρ̄≠", "ρ̄", "≠", "U"][self.0 as usize]
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for AtomSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 | o.0)
    }
}

impl BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & o.0)
    }
}

impl Not for AtomSet {
    type Output = AtomSet;
    fn not(self) -> AtomSet {
        AtomSet(!self.0 & 0b111)
    }
}

/// Composition of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionTable {
    entries: [[AtomSet; 3]; 3],
}

impl CompositionTable {
    pub fn new(entries: [[AtomSet; 3]; 3]) -> CompositionTable {
        CompositionTable { entries }
    }

    /// `ρ;ρ = ρ̄≠;ρ̄≠ = U`, `ρ;ρ̄≠ = ρ̄≠;ρ = ≠`, `=` the identity. The same for
    /// all three choices of `ρ`.
    pub fn standard() -> CompositionTable {
        use AtomSet as S;
        CompositionTable::new([
            [S::ID, S::RHO, S::RHO_BAR_NE],
            [S::RHO, S::UNIVERSAL, S::NE],
            [S::RHO_BAR_NE, S::NE, S::UNIVERSAL],
        ])
    }

    pub fn get(&self, a: Atom, b: Atom) -> AtomSet {
        self.entries[a as usize][b as usize]
    }

    /// Composition of unions, atom by atom.
    pub fn compose(&self, r: AtomSet, s: AtomSet) -> AtomSet {
        r.atoms()
            .flat_map(|a| s.atoms().map(move |b| (a, b)))
            .fold(AtomSet::EMPTY, |acc, (a, b)| acc | self.get(a, b))
    }

    pub fn is_symmetric(&self) -> bool {
        Atom::ALL
            .into_iter()
            .all(|a| Atom::ALL.into_iter().all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn id_is_identity(&self) -> bool {
        Atom::ALL.into_iter().all(|a| {
            let s = AtomSet::of(&[a]);
            self.get(Atom::Id, a) == s && self.get(a, Atom::Id) == s
        })
    }
}

/// Least set containing `start` and `=` closed under union, intersection,
/// complement, composition and converse (the identity on symmetric atoms).
pub fn closure(start: &[AtomSet], table: &CompositionTable) -> BTreeSet<AtomSet> {
    let mut set: BTreeSet<AtomSet> = start.iter().copied().collect();
    set.insert(AtomSet::ID);
    loop {
        let items: Vec<AtomSet> = set.iter().copied().collect();
        let before = set.len();
        for &r in &items {
            set.insert(!r);
            for &s in &items {
                set.insert(r | s);
                set.insert(r & s);
                set.insert(table.compose(r, s));
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Cover relation of the closure ordered by inclusion.
pub fn hasse_edges(elems: &BTreeSet<AtomSet>) -> Vec<(AtomSet, AtomSet)> {
    let mut out = Vec::new();
    for &a in elems {
        for &b in elems {
            if a != b && a.is_subset(b) {
                let covered = elems
                    .iter()
                    .all(|&c| c == a || c == b || !(a.is_subset(c) && c.is_subset(b)));
                if covered {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Whether `target` can be defined from `rho` with three variables: it must
/// be a union of atoms lying in the closure of `{ρ, =}`.
pub fn decide_3var_definable(rho: RelKind, target: RelSet) -> bool {
    match AtomSet::from_kinds(target, rho) {
        Some(s) => closure(&[AtomSet::RHO], &CompositionTable::standard()).contains(&s),
        None => false,
    }
}

/// A triple `(p, w, q)` with `p a w`, `w b q` and `rel(p, q) = want`,
/// built forwards: `w` from `p` and `q` from `w` (or `q = p`).
fn composition_witness(
    a: Atom,
    b: Atom,
    want: RelKind,
    rho: RelKind,
    n: usize,
    seed: u64,
) -> Option<Assignment> {
    let mut rng = trial_rng(seed, &format!("relalg/{a:?}/{b:?}/{want:?}"), 0);
    let step = |rng: &mut sampling::TrialRng, from: &Point, atom: Atom| -> Point {
        let kinds: Vec<RelKind> = atom.kinds(rho).kinds().collect();
        match kinds[rng.gen_range(0..kinds.len())] {
            RelKind::Equal => from.clone(),
            k => from + &sampling::offset_of_kind(rng, k, n, 3, 2),
        }
    };
    let fits = |x: &Point, y: &Point, atom: Atom| atom.kinds(rho).contains(rel(x, y));
    for _ in 0..2000 {
        let p = sampling::point(&mut rng, n, 2, 1);
        let w = step(&mut rng, &p, a);
        let q = if want == RelKind::Equal { p.clone() } else { step(&mut rng, &w, b) };
        if fits(&p, &w, a) && fits(&w, &q, b) && rel(&p, &q) == want {
            return Some(assignment([("p", p), ("w", w), ("q", q)]));
        }
    }
    None
}

/// Checks every table entry on points of `Qⁿ`: each kind claimed in
/// `a;b` gets an exact witness triple, and each excluded kind must follow
/// from a direct clash.
pub fn validate_table(table: &CompositionTable, rho: RelKind, n: usize, seed: u64) -> Verdict {
    let mut v = Verdict::new(&format!("relalg-{}", rho.letter()), 1, seed);
    for a in Atom::ALL {
        for b in Atom::ALL {
            let claimed = table.get(a, b).kinds(rho);
            for want in RelKind::ALL {
                let found = composition_witness(a, b, want, rho, n, seed);
                match (claimed.contains(want), found) {
                    (true, Some(w)) => v.witnesses.push(w),
                    (true, None) => v.fail(format!("no witness for {want} in {a:?};{b:?}"), None),
                    (false, Some(w)) => {
                        v.fail(format!("{want} found in {a:?};{b:?} but excluded"), Some(w))
                    }
                    (false, None) => {
                        let clash = want == RelKind::Equal
                            && (a.kinds(rho) & b.kinds(rho)).is_empty()
                            || a == Atom::Id && !b.kinds(rho).contains(want)
                            || b == Atom::Id && !a.kinds(rho).contains(want);
                        if !clash {
                            v.inconclusive(format!(
                                "{want} excluded from {a:?};{b:?} by sampling only"
                            ));
                        }
                    }
                }
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_sizes() {
        let t = CompositionTable::standard();
        assert_eq!(closure(&[AtomSet::RHO], &t).len(), 8);
        let small: Vec<AtomSet> = closure(&[], &t).into_iter().collect();
        assert_eq!(small, vec![AtomSet::EMPTY, AtomSet::ID, AtomSet::NE, AtomSet::UNIVERSAL]);
        assert_eq!(closure(&[AtomSet::ID], &t).len(), 4);
    }

    #[test]
    fn table_shape() {
        let t = CompositionTable::standard();
        assert!(t.is_symmetric());
        assert!(t.id_is_identity());
        assert_eq!(t.compose(AtomSet::RHO, AtomSet::RHO_BAR_NE), AtomSet::NE);
    }

    #[test]
    fn three_variable_definability() {
        use RelKind::*;
        let set = |ks: &[RelKind]| ks.iter().fold(RelSet::EMPTY, |s, k| s | RelSet::of(*k));
        assert!(!decide_3var_definable(Timelike, set(&[Lightlike])));
        assert!(!decide_3var_definable(Timelike, set(&[Spacelike])));
        assert!(!decide_3var_definable(Spacelike, set(&[Timelike])));
        assert!(decide_3var_definable(Timelike, set(&[Equal, Lightlike, Spacelike])));
        assert!(decide_3var_definable(Lightlike, set(&[Timelike, Spacelike])));
    }

    #[test]
    fn hasse_of_boolean_cube() {
        let s = closure(&[AtomSet::RHO], &CompositionTable::standard());
        assert_eq!(hasse_edges(&s).len(), 12);
    }

    #[test]
    fn table_validates() {
        for rho in RelKind::DISTINCT {
            let v = validate_table(&CompositionTable::standard(), rho, 2, 0);
            assert_eq!(v.status, crate::witnesses::Status::Pass, "{rho}: {:?}", v.notes);
        }
    }
}

//! First-order formulas over the signature {τ, λ, σ, =}.
//!
//! Atoms carry a [`RelSet`], so negated relations such as τ̄ or σ̄_≠ are
//! single atoms. Text form: see [`parse`].

mod builtin;
mod parse;
mod prefix;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::minkowski::{rel, Point, RelKind, RelSet};

pub use builtin::{builtin, FormulaName, NamedFormula, Regime};
pub use parse::parse;
pub use prefix::{classify_prefix, Block, PrefixClass, Quant};

pub type Var = String;

/// Variable assignment used by [`Formula::eval_qf`].
pub type Env = BTreeMap<Var, Point>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown relation {token:?} at {pos}")]
    UnknownRelation { pos: usize, token: String },
    #[error("unbound variable {0}")]
    UnboundVariable(Var),
    #[error("formula is not quantifier free")]
    NotQuantifierFree,
    #[error("unknown formula name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Var, RelSet, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(a: &str, r: RelSet, b: &str) -> Formula {
        Formula::Atom(a.to_string(), r, b.to_string())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; a single conjunct is returned as is.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        if fs.len() == 1 {
            fs.pop().expect("one element")
        } else {
            Formula::And(fs)
        }
    }

    /// Disjunction; a single disjunct is returned as is.
    pub fn or(mut fs: Vec<Formula>) -> Formula {
        if fs.len() == 1 {
            fs.pop().expect("one element")
        } else {
            Formula::Or(fs)
        }
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        fn walk(f: &Formula, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
            let mut add = |v: &Var, bound: &Vec<Var>| {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            };
            match f {
                Formula::Atom(a, _, b) => {
                    add(a, bound);
                    add(b, bound);
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| walk(g, bound, out)),
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(v.clone());
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable name, free or bound.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(a, _, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    /// Number of distinct variable names.
    pub fn count_variables(&self) -> usize {
        self.all_vars().len()
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.visit(f)),
        }
    }

    /// Number of atoms.
    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| n += matches!(f, Formula::Atom(..)) as usize);
        n
    }

    /// Rewrites every atom's relation set.
    pub fn map_relations(&self, m: &impl Fn(RelSet) -> RelSet) -> Formula {
        match self {
            Formula::Atom(a, r, b) => Formula::Atom(a.clone(), m(*r), b.clone()),
            Formula::Not(g) => Formula::not(g.map_relations(m)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map_relations(m)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map_relations(m)).collect()),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(g.map_relations(m))),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(g.map_relations(m))),
        }
    }

    /// Interchanges τ and σ in every atom.
    pub fn swap_time_space(&self) -> Formula {
        self.map_relations(&RelSet::swap_time_space)
    }

    /// Replaces the base relation `from` by `to` in atoms built from
    /// {=, from, the complement of from among distinct pairs}. Returns `None`
    /// if some atom is not such a union.
    pub fn replace_base(&self, from: RelKind, to: RelKind) -> Option<Formula> {
        let from_other = RelSet::NE & !RelSet::of(from);
        let to_other = RelSet::NE & !RelSet::of(to);
        let ok = std::cell::Cell::new(true);
        let f = self.map_relations(&|r| {
            let other = r & from_other;
            if !other.is_empty() && other != from_other {
                ok.set(false);
            }
            let mut out = r & RelSet::EQ;
            if r.contains(from) {
                out = out | RelSet::of(to);
            }
            if !other.is_empty() {
                out = out | to_other;
            }
            out
        });
        ok.get().then_some(f)
    }

    /// The conjuncts of a (possibly nested) conjunction.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(fs) => fs.iter().flat_map(Formula::conjuncts).collect(),
            f => vec![f],
        }
    }

    /// Splits `∃v₁…∃vₖ M` into `([v₁…vₖ], M)`.
    pub fn existential_prefix(&self) -> (Vec<Var>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let Formula::Exists(v, body) = cur {
            vars.push(v.clone());
            cur = body;
        }
        (vars, cur)
    }

    /// Truth value of a quantifier-free formula under `env`.
    pub fn eval_qf(&self, env: &Env) -> Result<bool, FormulaError> {
        match self {
            Formula::Atom(a, r, b) => {
                let pa = env.get(a).ok_or_else(|| FormulaError::UnboundVariable(a.clone()))?;
                let pb = env.get(b).ok_or_else(|| FormulaError::UnboundVariable(b.clone()))?;
                Ok(r.contains(rel(pa, pb)))
            }
            Formula::Not(g) => Ok(!g.eval_qf(env)?),
            Formula::And(gs) => {
                for g in gs {
                    if !g.eval_qf(env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(gs) => {
                for g in gs {
                    if g.eval_qf(env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Exists(..) | Formula::Forall(..) => Err(FormulaError::NotQuantifierFree),
        }
    }

    /// Prefix class after merging quantifier blocks; see [`classify_prefix`].
    pub fn prefix_class(&self) -> PrefixClass {
        classify_prefix(self)
    }

    fn fmt_level(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // 0: top, 1: operand of |, 2: operand of &, 3: operand of !
        match self {
            Formula::Atom(a, r, b) => {
                if level >= 3 {
                    write!(f, "({a} {r} {b})")
                } else {
                    write!(f, "{a} {r} {b}")
                }
            }
            Formula::Not(g) => {
                write!(f, "!")?;
                g.fmt_level(f, 3)
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let (sep, own, child) = match self {
                    Formula::And(_) => (" & ", 2, 2),
                    _ => (" | ", 1, 1),
                };
                let wrap = level >= own;
                if wrap {
                    write!(f, "(")?;
                }
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    g.fmt_level(f, child)?;
                }
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                let q = if matches!(self, Formula::Exists(..)) { "exists" } else { "forall" };
                write!(f, "{q} {v} (")?;
                g.fmt_level(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_level(f, 0)
    }
}

impl FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Builds an environment from `(name, point)` pairs.
pub fn env<'a>(pairs: impl IntoIterator<Item = (&'a str, Point)>) -> Env {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

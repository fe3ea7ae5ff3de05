//! Quantifier prefix classes.
//!
//! Negations are pushed inward, quantifiers pulled out, and sibling prefixes
//! interleaved so that the number of alternations is minimal.

use std::fmt;

use serde::Serialize;

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    fn letter(self) -> char {
        match self {
            Quant::Exists => 'E',
            Quant::Forall => 'A',
        }
    }
}

/// A maximal run of like quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub quant: Quant,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrefixClass {
    QuantifierFree,
    Exists(usize),
    Forall(usize),
    ExistsForall(usize, usize),
    ForallExists(usize, usize),
    Other(Vec<Block>),
}

impl PrefixClass {
    pub fn from_blocks(blocks: &[Block]) -> PrefixClass {
        use Quant::*;
        match blocks {
            [] => PrefixClass::QuantifierFree,
            [Block { quant: Exists, count }] => PrefixClass::Exists(*count),
            [Block { quant: Forall, count }] => PrefixClass::Forall(*count),
            [Block { quant: Exists, count: a }, Block { count: b, .. }] => PrefixClass::ExistsForall(*a, *b),
            [Block { quant: Forall, count: a }, Block { count: b, .. }] => PrefixClass::ForallExists(*a, *b),
            _ => PrefixClass::Other(blocks.to_vec()),
        }
    }

    pub fn blocks(&self) -> Vec<Block> {
        let b = |quant, count| Block { quant, count };
        match self {
            PrefixClass::QuantifierFree => vec![],
            PrefixClass::Exists(k) => vec![b(Quant::Exists, *k)],
            PrefixClass::Forall(k) => vec![b(Quant::Forall, *k)],
            PrefixClass::ExistsForall(x, y) => vec![b(Quant::Exists, *x), b(Quant::Forall, *y)],
            PrefixClass::ForallExists(x, y) => vec![b(Quant::Forall, *x), b(Quant::Exists, *y)],
            PrefixClass::Other(v) => v.clone(),
        }
    }

    /// True unless the prefix has more than one alternation.
    pub fn is_prenex_class(&self) -> bool {
        !matches!(self, PrefixClass::Other(_))
    }
}

impl fmt::Display for PrefixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        if blocks.is_empty() {
            return f.write_str("QF");
        }
        let body: String = blocks.iter().map(|b| format!("{}{}", b.quant.letter(), b.count)).collect();
        match self {
            PrefixClass::Other(_) => write!(f, "Other({body})"),
            _ => f.write_str(&body),
        }
    }
}

impl Serialize for PrefixClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn push(out: &mut Vec<Block>, b: Block) {
    match out.last_mut() {
        Some(last) if last.quant == b.quant => last.count += b.count,
        _ => out.push(b),
    }
}

fn prepend(b: Block, rest: Vec<Block>) -> Vec<Block> {
    let mut out = vec![b];
    for x in rest {
        push(&mut out, x);
    }
    out
}

/// Interleaves two prefixes with as few blocks as possible; ties favour `a`.
fn merge(a: &[Block], b: &[Block]) -> Vec<Block> {
    match (a.split_first(), b.split_first()) {
        (None, _) => b.to_vec(),
        (_, None) => a.to_vec(),
        (Some((x, ra)), Some((y, rb))) if x.quant == y.quant => {
            prepend(Block { quant: x.quant, count: x.count + y.count }, merge(ra, rb))
        }
        (Some((x, ra)), Some((y, rb))) => {
            let first = prepend(*x, merge(ra, b));
            let second = prepend(*y, merge(a, rb));
            if second.len() < first.len() {
                second
            } else {
                first
            }
        }
    }
}

fn blocks(f: &Formula, positive: bool) -> Vec<Block> {
    match f {
        Formula::Atom(..) => vec![],
        Formula::Not(g) => blocks(g, !positive),
        Formula::And(gs) | Formula::Or(gs) => gs
            .iter()
            .fold(Vec::new(), |acc, g| merge(&acc, &blocks(g, positive))),
        Formula::Exists(_, g) | Formula::Forall(_, g) => {
            let exists = matches!(f, Formula::Exists(..)) == positive;
            let quant = if exists { Quant::Exists } else { Quant::Forall };
            prepend(Block { quant, count: 1 }, blocks(g, positive))
        }
    }
}

/// The prefix class of a prenex form of `f`.
pub fn classify_prefix(f: &Formula) -> PrefixClass {
    PrefixClass::from_blocks(&blocks(f, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse;

    fn class(s: &str) -> String {
        classify_prefix(&parse(s).unwrap()).to_string()
    }

    #[test]
    fn classes() {
        assert_eq!(class("x tau y"), "QF");
        assert_eq!(class("exists u exists v (u tau v)"), "E2");
        assert_eq!(class("!exists u (u tau v)"), "A1");
        assert_eq!(class("forall z (z eq x | exists u (u tau z))"), "A1E1");
        assert_eq!(class("!forall z (z eq x | exists u (u tau z))"), "E1A1");
        assert_eq!(class("exists a (a eq b) & exists c (c eq b)"), "E2");
        assert_eq!(class("exists a (a eq b) & forall c (c eq b)"), "E1A1");
        assert_eq!(class("exists a forall b exists c (a tau c)"), "Other(E1A1E1)");
    }

    #[test]
    fn merge_minimises_alternations() {
        // E1A1 with A1E1 interleaves to A1E1A1 or E1A1E1 (3 blocks) at best.
        assert_eq!(
            class("exists a forall b (a eq b) & forall c exists d (c eq d)"),
            "Other(E1A2E1)"
        );
        // A1 with E1A1 gives E1A2.
        assert_eq!(class("forall c (c eq d) & exists a forall b (a eq b)"), "E1A2");
    }
}

//! The named defining formulas.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{parse, Formula, FormulaError, PrefixClass};
use crate::minkowski::RelKind;

/// Dimension and field hypotheses under which a formula defines its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    AnyOrdered,
    /// n = 2, or any n over a Euclidean field.
    EuclideanOrN2,
    /// n ≥ 3 over a Euclidean field.
    EuclideanAndN3,
    /// n = 2 only.
    N2Only,
}

impl Regime {
    /// Whether dimension `n` is allowed. Field conditions are handled by
    /// restricting to pairs that canonicalize in the ambient field.
    pub fn admits_dim(self, n: usize) -> bool {
        match self {
            Regime::AnyOrdered | Regime::EuclideanOrN2 => n >= 2,
            Regime::EuclideanAndN3 => n >= 3,
            Regime::N2Only => n == 2,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::AnyOrdered => "any ordered field",
            Regime::EuclideanOrN2 => "n = 2 or Euclidean field",
            Regime::EuclideanAndN3 => "n >= 3 and Euclidean field",
            Regime::N2Only => "n = 2",
        })
    }
}

macro_rules! names {
    ($($v:ident),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum FormulaName { $($v),* }

        impl FormulaName {
            pub const ALL: [FormulaName; 18] = [$(FormulaName::$v),*];

            pub fn as_str(self) -> &'static str {
                match self { $(FormulaName::$v => stringify!($v)),* }
            }
        }
    };
}

names!(
    PsiTS, PsiTL, PsiST, PsiSL, PsiLS, PsiLT, Ets, Utl, Est, Usl, EtsHat, UtlHat, EstHat, UslHat,
    Wsl, Wst, WslMirror, WstMirror,
);

impl fmt::Display for FormulaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaName {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| FormulaError::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedFormula {
    pub name: FormulaName,
    #[serde(serialize_with = "as_text")]
    pub formula: Formula,
    /// The two free variables, in argument order.
    pub params: (String, String),
    /// Relation the formula is written in.
    pub source: RelKind,
    /// Relation it defines.
    pub target: RelKind,
    pub regime: Regime,
    pub claimed_vars: usize,
    pub claimed_prefix: PrefixClass,
    /// For `¬B ∧ …` formulas, the negated base formula `B`.
    pub negates: Option<FormulaName>,
}

fn as_text<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl NamedFormula {
    /// The quantifier-free conjuncts next to the negated base formula.
    pub fn side_conditions(&self) -> Vec<&Formula> {
        match self.negates {
            Some(_) => self.formula.conjuncts().into_iter().skip(1).collect(),
            None => vec![],
        }
    }
}

const PSI_TS: &str =
    "x != y & forall z (z eq x | z eq y | exists u (u tau z & u ntau x & u ntau y))";
const PSI_LS: &str =
    "x nlam y & exists z (x lam z & y nlam z & !exists u (u lam x & u lam y & u lam z))";
const E_TS: &str = "exists r exists x exists s exists z \
    (r T,T p q & x T,~T p q & s ~T,~T p q & z ~T,T p q & r ~T,T,~T x s z)";
const E_TS_HAT: &str = "exists x exists y exists z \
    (x T,T,~T_ne,~T_ne p y q z & y ~T_ne,~T_ne,T p q z & z ~T_ne,T p q)";
const W_SL: &str = "x nsig y & x != y & forall u forall v exists zu exists zv \
    (zu ~S,S,S u x y | zv ~S,S,S v x y | u nsig v)";

fn text(s: &str) -> Formula {
    parse(s).expect("built-in formula text parses")
}

/// `¬base ∧ side`.
fn negation_of(base: Formula, side: &str) -> Formula {
    let mut parts = vec![Formula::not(base)];
    parts.extend(text(side).conjuncts().into_iter().cloned());
    Formula::and(parts)
}

fn formula_of(name: FormulaName) -> Formula {
    use FormulaName::*;
    match name {
        PsiTS => text(PSI_TS),
        PsiST => text(PSI_TS).swap_time_space(),
        PsiTL => negation_of(formula_of(PsiTS), "x ntau y & x != y"),
        PsiSL => negation_of(formula_of(PsiST), "x nsig y & x != y"),
        PsiLS => text(PSI_LS),
        PsiLT => negation_of(formula_of(PsiLS), "x nlam y & x != y"),
        Ets => text(E_TS),
        Est => text(E_TS).swap_time_space(),
        Utl => negation_of(formula_of(Ets), "p != q & p ntau q"),
        Usl => negation_of(formula_of(Est), "p != q & p nsig q"),
        EtsHat => text(E_TS_HAT),
        EstHat => text(E_TS_HAT).swap_time_space(),
        UtlHat => negation_of(formula_of(EtsHat), "p != q & p ntau q"),
        UslHat => negation_of(formula_of(EstHat), "p != q & p nsig q"),
        Wsl => text(W_SL),
        Wst => negation_of(formula_of(Wsl), "x nsig y & x != y"),
        WslMirror => formula_of(Wsl)
            .replace_base(RelKind::Spacelike, RelKind::Timelike)
            .expect("W uses only σ-based atoms"),
        WstMirror => formula_of(Wst)
            .replace_base(RelKind::Spacelike, RelKind::Timelike)
            .expect("W uses only σ-based atoms"),
    }
}

/// The named formula with its claimed complexity and regime.
pub fn builtin(name: FormulaName) -> NamedFormula {
    use FormulaName::*;
    use PrefixClass as P;
    use RelKind::{Lightlike as L, Spacelike as S, Timelike as T};
    let (source, target, regime, vars, prefix, negates) = match name {
        PsiTS => (T, S, Regime::EuclideanOrN2, 4, P::ForallExists(1, 1), None),
        PsiTL => (T, L, Regime::EuclideanOrN2, 4, P::ExistsForall(1, 1), Some(PsiTS)),
        PsiST => (S, T, Regime::EuclideanOrN2, 4, P::ForallExists(1, 1), None),
        PsiSL => (S, L, Regime::EuclideanOrN2, 4, P::ExistsForall(1, 1), Some(PsiST)),
        PsiLS => (L, S, Regime::EuclideanAndN3, 4, P::ExistsForall(1, 1), None),
        PsiLT => (L, T, Regime::EuclideanAndN3, 4, P::ForallExists(1, 1), Some(PsiLS)),
        Ets => (T, S, Regime::EuclideanOrN2, 6, P::Exists(4), None),
        Utl => (T, L, Regime::EuclideanOrN2, 6, P::Forall(4), Some(Ets)),
        Est => (S, T, Regime::N2Only, 6, P::Exists(4), None),
        Usl => (S, L, Regime::N2Only, 6, P::Forall(4), Some(Est)),
        EtsHat => (T, S, Regime::EuclideanOrN2, 5, P::Exists(3), None),
        UtlHat => (T, L, Regime::EuclideanOrN2, 5, P::Forall(3), Some(EtsHat)),
        EstHat => (S, T, Regime::N2Only, 5, P::Exists(3), None),
        UslHat => (S, L, Regime::N2Only, 5, P::Forall(3), Some(EstHat)),
        Wsl => (S, L, Regime::EuclideanOrN2, 6, P::ForallExists(2, 2), None),
        Wst => (S, T, Regime::EuclideanOrN2, 6, P::ExistsForall(2, 2), Some(Wsl)),
        WslMirror => (T, L, Regime::N2Only, 6, P::ForallExists(2, 2), None),
        WstMirror => (T, S, Regime::N2Only, 6, P::ExistsForall(2, 2), Some(WslMirror)),
    };
    let formula = formula_of(name);
    let free = formula.free_vars();
    let params = (free[0].clone(), free[1].clone());
    NamedFormula {
        name,
        formula,
        params,
        source,
        target,
        regime,
        claimed_vars: vars,
        claimed_prefix: prefix,
        negates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::RelSet;

    #[test]
    fn claims_match_recomputed_values() {
        for name in FormulaName::ALL {
            let nf = builtin(name);
            assert_eq!(nf.formula.count_variables(), nf.claimed_vars, "{name}");
            assert_eq!(nf.formula.prefix_class(), nf.claimed_prefix, "{name}");
            assert_eq!(nf.formula.free_vars().len(), 2, "{name}");
        }
    }

    #[test]
    fn round_trip_through_text() {
        for name in FormulaName::ALL {
            let f = builtin(name).formula;
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{name}");
        }
    }

    #[test]
    fn time_space_mirrors() {
        use FormulaName::*;
        for (a, b) in [(PsiTS, PsiST), (PsiTL, PsiSL), (Ets, Est), (Utl, Usl), (EtsHat, EstHat), (UtlHat, UslHat)] {
            assert_eq!(builtin(a).formula.swap_time_space(), builtin(b).formula, "{a}/{b}");
        }
    }

    #[test]
    fn w_mirrors_replace_sigma_by_tau() {
        let wst = builtin(FormulaName::Wst).formula;
        let by_map = wst.map_relations(&|r: RelSet| {
            let mut out = r & RelSet::EQ;
            if r.contains(RelKind::Spacelike) {
                out = out | RelSet::TAU;
            }
            if r.contains(RelKind::Timelike) || r.contains(RelKind::Lightlike) {
                out = out | RelSet::LAM | RelSet::SIG;
            }
            out
        });
        assert_eq!(builtin(FormulaName::WstMirror).formula, by_map);
        assert_eq!(
            builtin(FormulaName::WslMirror).formula.to_string(),
            "x ntau y & x != y & forall u (forall v (exists zu (exists zv \
             (zu ntau u & zu tau x & zu tau y | zv ntau v & zv tau x & zv tau y | u ntau v))))"
        );
    }

    #[test]
    fn derived_formulas_negate_their_base() {
        let tl = builtin(FormulaName::PsiTL);
        assert_eq!(
            tl.formula,
            Formula::And(vec![
                Formula::not(builtin(FormulaName::PsiTS).formula),
                Formula::atom("x", !RelSet::TAU, "y"),
                Formula::atom("x", RelSet::NE, "y"),
            ])
        );
        // U is the complement of E within p ≠ q, p τ̄ q.
        let utl = builtin(FormulaName::Utl);
        let conj = utl.formula.conjuncts();
        assert_eq!(conj[0], &Formula::not(builtin(FormulaName::Ets).formula));
        assert_eq!(utl.side_conditions().len(), 2);
        for c in utl.side_conditions() {
            assert!(c.is_quantifier_free());
        }
    }

    #[test]
    fn atom_counts() {
        assert_eq!(builtin(FormulaName::Ets).formula.atom_count(), 11);
        assert_eq!(builtin(FormulaName::EtsHat).formula.atom_count(), 9);
    }

    #[test]
    fn printed_existential_text() {
        assert_eq!(
            builtin(FormulaName::EtsHat).formula.to_string(),
            "exists x (exists y (exists z (x tau p & x tau y & x ntau_ne q & x ntau_ne z & \
             y ntau_ne p & y ntau_ne q & y tau z & z ntau_ne p & z tau q)))"
        );
    }

    #[test]
    fn names_parse() {
        assert_eq!("psits".parse::<FormulaName>().unwrap(), FormulaName::PsiTS);
        assert!("Nope".parse::<FormulaName>().is_err());
    }
}

//! Guided rejection sampling for existential witnesses.

use rand::Rng;

use super::Assignment;
use crate::formulas::{Formula, FormulaError};
use crate::minkowski::{Point, RelKind};
use crate::sampling::{self, TrialRng};

/// Conjuncts mentioning only variables in `known` plus `v`, and mentioning `v`.
fn local_atoms<'a>(matrix: &'a Formula, v: &str, known: &Assignment) -> Vec<&'a Formula> {
    matrix
        .conjuncts()
        .into_iter()
        .filter(|c| {
            let fv = c.free_vars();
            fv.iter().any(|x| x == v) && fv.iter().all(|x| x == v || known.contains_key(x))
        })
        .collect()
}

/// A random point near the already fixed ones.
pub(super) fn propose(rng: &mut TrialRng, fixed: &Assignment, n: usize) -> Point {
    let pts: Vec<&Point> = fixed.values().collect();
    if pts.is_empty() || rng.gen_range(0..3) == 0 {
        return sampling::point(rng, n, 3, 4);
    }
    let base = pts[rng.gen_range(0..pts.len())];
    let kind = RelKind::DISTINCT[rng.gen_range(0..3)];
    base + &sampling::offset_of_kind(rng, kind, n, 2, 4)
}

/// Evaluates `f` with quantifiers ranging over supplied finite sets:
/// `∃v` holds when some supplied point works, `∀v` when all do. The
/// provider gets the variable, the current assignment and whether the
/// choice is the verifier's (∃ under even negations, ∀ under odd).
pub fn eval_with(
    f: &Formula,
    env: &mut Assignment,
    positive: bool,
    provider: &mut dyn FnMut(&str, &Assignment, bool) -> Vec<Point>,
) -> Result<bool, FormulaError> {
    match f {
        Formula::Atom(..) => f.eval_qf(env),
        Formula::Not(g) => Ok(!eval_with(g, env, !positive, provider)?),
        Formula::And(gs) => {
            for g in gs {
                if !eval_with(g, env, positive, provider)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(gs) => {
            for g in gs {
                if eval_with(g, env, positive, provider)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let exists = matches!(f, Formula::Exists(..));
            let cands = provider(v, env, exists == positive);
            let saved = env.remove(v);
            let mut result = !exists;
            for c in cands {
                env.insert(v.clone(), c);
                if eval_with(body, env, positive, provider)? == exists {
                    result = exists;
                    break;
                }
            }
            match saved {
                Some(old) => env.insert(v.clone(), old),
                None => env.remove(v),
            };
            Ok(result)
        }
    }
}

/// Tries `attempts` times to extend `env` by values of `vars` making
/// `matrix` true, fixing one variable at a time and rejecting values that
/// already break a conjunct. Returns the first full satisfying assignment.
pub fn search_existential(
    matrix: &Formula,
    vars: &[String],
    env: &Assignment,
    rng: &mut TrialRng,
    attempts: usize,
    tries_per_var: usize,
) -> Option<Assignment> {
    let n = env.values().next()?.dim();
    'attempt: for _ in 0..attempts {
        let mut cur = env.clone();
        for v in vars {
            let atoms = local_atoms(matrix, v, &cur);
            let mut placed = false;
            for _ in 0..tries_per_var {
                let cand = propose(rng, &cur, n);
                cur.insert(v.clone(), cand);
                if atoms.iter().all(|a| a.eval_qf(&cur).unwrap_or(false)) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        if matrix.eval_qf(&cur).unwrap_or(false) {
            return Some(cur);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{builtin, parse, FormulaName};
    use crate::witnesses::assignment;

    #[test]
    fn supplied_quantifier_ranges() {
        let f = parse("forall z exists u (u tau z)").unwrap();
        let mut env = Assignment::new();
        let zs = [Point::ints(&[0, 0]), Point::ints(&[0, 3])];
        let mut provider = |v: &str, e: &Assignment, verifier: bool| -> Vec<Point> {
            match v {
                "z" => {
                    assert!(!verifier);
                    zs.to_vec()
                }
                _ => {
                    assert!(verifier);
                    vec![&e["z"] + &Point::ints(&[1, 0])]
                }
            }
        };
        assert!(eval_with(&f, &mut env, true, &mut provider).unwrap());
        assert!(env.is_empty());
        let g = parse("!exists u (u tau z)").unwrap();
        let mut env = assignment([("z", Point::ints(&[0, 0]))]);
        let mut none = |_: &str, _: &Assignment, verifier: bool| {
            assert!(!verifier);
            vec![Point::ints(&[0, 1])]
        };
        assert!(eval_with(&g, &mut env, true, &mut none).unwrap());
    }

    #[test]
    fn finds_easy_witnesses() {
        let f = parse("exists u (u tau x & u sig y)").unwrap();
        let (vars, m) = f.existential_prefix();
        let env = assignment([("x", Point::ints(&[0, 0])), ("y", Point::ints(&[0, 1]))]);
        let mut rng = sampling::trial_rng(0, "search", 0);
        let a = search_existential(m, &vars, &env, &mut rng, 20, 50).unwrap();
        assert!(m.eval_qf(&a).unwrap());
    }

    #[test]
    fn ets_on_spacelike_pair_is_found() {
        let f = builtin(FormulaName::EtsHat).formula;
        let (vars, m) = f.existential_prefix();
        let env = assignment([("p", Point::ints(&[0, 0])), ("q", Point::ints(&[0, 1]))]);
        let mut rng = sampling::trial_rng(0, "search", 1);
        assert!(search_existential(m, &vars, &env, &mut rng, 400, 60).is_some());
    }
}

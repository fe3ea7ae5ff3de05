//! The registry of runnable checks, one per definability or
//! non-definability result.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldCtx, FieldElem};
use crate::formulas::{parse, Formula, FormulaName};
use crate::graphembed::{nrf2_relation_report, Budget};
use crate::minkowski::{rel, Point, RelKind, RelSet};
use crate::relalg::{closure, decide_3var_definable, validate_table, AtomSet, CompositionTable};
use crate::sampling::{self, random_pair, trial_rng, TrialRng};
use crate::transforms::{
    escape_iteration, hyperbolic_inversion, lifted_conjugation, swap_tx, time_compress,
    time_stretch, EscapeRegime, PartialMap,
};
use crate::witnesses::{
    assignment, check_formula, counterexample, Assignment, CheckOptions, CounterexampleName,
    Status, Verdict, WitnessError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("unknown plan {0:?}")]
    UnknownPlan(String),
    #[error("{plan} needs {need}, got n = {n}")]
    RegimeViolation { plan: String, need: String, n: usize },
    #[error(transparent)]
    Witness(WitnessError),
}

impl From<WitnessError> for PlanError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::RegimeViolation { name, regime, n } => {
                PlanError::RegimeViolation { plan: name, need: regime, n }
            }
            e => PlanError::Witness(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub id: &'static str,
    pub summary: &'static str,
}

const fn plan(id: &'static str, summary: &'static str) -> Plan {
    Plan { id, summary }
}

pub const PLANS: [Plan; 23] = [
    plan("psi-ts", "Ψ defines σ from τ with one ∀ and one ∃"),
    plan("psi-tl", "the ∃∀ negation of Ψ defines λ from τ"),
    plan("psi-st", "Ψ defines τ from σ with one ∀ and one ∃"),
    plan("psi-sl", "the ∃∀ negation of Ψ defines λ from σ"),
    plan("psi-ls", "Ψ defines σ from λ when n ≥ 3"),
    plan("psi-lt", "the ∀∃ negation of Ψ defines τ from λ when n ≥ 3"),
    plan("nondef-3var", "no relation defines another with three variables"),
    plan("e-ts", "an ∃⁴ formula defines σ from τ"),
    plan("u-tl", "an ∀⁴ formula defines λ from τ"),
    plan("e-st-2d", "an ∃⁴ formula defines τ from σ in the plane only"),
    plan("u-sl-2d", "an ∀⁴ formula defines λ from σ in the plane only"),
    plan("nrf2-suite", "every nrf2 graph embeds with each relation between p and q"),
    plan("no-e2-def", "no ∃² or ∀² definitions between τ and σ"),
    plan("e-ts-hat", "an ∃³ formula defines σ from τ"),
    plan("u-tl-hat", "an ∀³ formula defines λ from τ"),
    plan("e-st-hat-2d", "an ∃³ formula defines τ from σ in the plane only"),
    plan("t-eps-no-exist-lambda", "existential formulas over τ or σ cannot isolate λ"),
    plan("h-inversion-no-def-from-lambda", "hyperbolic inversion keeps λ and can turn a τ pair into a σ pair"),
    plan("w-sl", "an ∀²∃² formula defines λ from σ"),
    plan("w-st", "an ∃²∀² formula defines τ from σ"),
    plan("w-mirror-2d", "the τ/σ mirror of W works in the plane"),
    plan("swap-2d", "exchanging time and space keeps λ in the plane"),
    plan("non-eucl-q-sqrt2", "over Q(√2) λ does not define τ"),
];

pub fn find_plan(id: &str) -> Option<&'static Plan> {
    PLANS.iter().find(|p| p.id == id)
}

fn formula_of(id: &str) -> Option<FormulaName> {
    use FormulaName::*;
    Some(match id {
        "psi-ts" => PsiTS,
        "psi-tl" => PsiTL,
        "psi-st" => PsiST,
        "psi-sl" => PsiSL,
        "psi-ls" => PsiLS,
        "psi-lt" => PsiLT,
        "e-ts" => Ets,
        "u-tl" => Utl,
        "e-st-2d" => Est,
        "u-sl-2d" => Usl,
        "e-ts-hat" => EtsHat,
        "u-tl-hat" => UtlHat,
        "e-st-hat-2d" => EstHat,
        "w-sl" => Wsl,
        "w-st" => Wst,
        _ => return None,
    })
}

/// Ambient regime and effort for a plan run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanOptions {
    pub n: usize,
    pub field: FieldCtx,
    pub check: CheckOptions,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions { n: 2, field: FieldCtx::Rationals, check: CheckOptions::default() }
    }
}

pub fn run_plan(id: &str, opts: &PlanOptions) -> Result<Verdict, PlanError> {
    let plan = find_plan(id).ok_or_else(|| PlanError::UnknownPlan(id.to_string()))?;
    let (n, c) = (opts.n, &opts.check);
    let mut v = match plan.id {
        "e-st-2d" | "u-sl-2d" | "e-st-hat-2d" if n >= 3 => plane_only_failure(plan.id, n, c),
        "w-mirror-2d" => {
            let mut v = Verdict::new(plan.id, c.trials, c.seed);
            v.absorb(check_formula(FormulaName::WslMirror, n, &opts.field, c)?);
            v.absorb(check_formula(FormulaName::WstMirror, n, &opts.field, c)?);
            v
        }
        "nondef-3var" => nondef_3var(n, c.seed),
        "nrf2-suite" => nrf2_plan(plan.id, &[RelKind::Timelike], n, c.seed),
        "no-e2-def" => nrf2_plan(plan.id, &[RelKind::Timelike, RelKind::Spacelike], n, c.seed),
        "t-eps-no-exist-lambda" => t_eps(n, c),
        "h-inversion-no-def-from-lambda" => h_inversion(n, c),
        "swap-2d" => swap_plane(n, c)?,
        "non-eucl-q-sqrt2" => non_euclidean(c),
        other => {
            let name = formula_of(other).expect("registered formula plan");
            let mut v = check_formula(name, n, &opts.field, c)?;
            v.plan = other.to_string();
            v
        }
    };
    v.plan = plan.id.to_string();
    Ok(v)
}

fn pad(a: &Assignment, n: usize) -> Assignment {
    a.iter().map(|(k, p)| (k.clone(), p.padded(n))).collect()
}

fn plane_only_failure(id: &str, n: usize, c: &CheckOptions) -> Verdict {
    let mut v = Verdict::new(id, c.trials, c.seed);
    let names: &[CounterexampleName] = match id {
        "e-st-hat-2d" => &[CounterexampleName::EstHatLightlike3D],
        _ => &[CounterexampleName::EstLightlike3D, CounterexampleName::EstSpacelike3D],
    };
    for &name in names {
        let cx = counterexample(name);
        let a = pad(&cx.assignment, n);
        if cx.verify() {
            v.fail(
                format!("{name}: matrix of {} holds on a {} pair", cx.formula, cx.pair_kind),
                Some(a),
            );
        } else {
            v.inconclusive(format!("{name} does not verify"));
        }
    }
    if id == "u-sl-2d" {
        v.note("the negation is false on the same pairs");
    }
    v
}

fn nondef_3var(n: usize, seed: u64) -> Verdict {
    let mut v = Verdict::new("nondef-3var", 1, seed);
    let table = CompositionTable::standard();
    let s = closure(&[AtomSet::RHO], &table);
    if s.len() == 8 {
        v.note("closure size 8");
    } else {
        v.fail(format!("closure size {}", s.len()), None);
    }
    for rho in RelKind::DISTINCT {
        for target in RelKind::DISTINCT.into_iter().filter(|&k| k != rho) {
            if decide_3var_definable(rho, RelSet::of(target)) {
                v.fail(format!("{target} reported definable from {rho}"), None);
            }
        }
        let t = validate_table(&table, rho, n, seed);
        v.absorb(t);
    }
    v
}

fn nrf2_plan(id: &str, rhos: &[RelKind], n: usize, seed: u64) -> Verdict {
    let mut v = Verdict::new(id, 1, seed);
    let budget = Budget { seed, ..Budget::default() };
    for &rho in rhos {
        let r = nrf2_relation_report(rho, n, &budget);
        v.note(format!(
            "ρ = {rho}: {} graphs, {} orbits, {} embeddings",
            r.graphs,
            r.orbits,
            r.embeddings.len()
        ));
        if let Some(e) = r.embeddings.first() {
            v.witnesses.push(e.coords.clone());
        }
        if r.passed() {
            v.note(format!("ρ = {rho}: {}", r.conclusion()));
        } else {
            // A missing embedding is a search failure, not a refutation.
            v.inconclusive(format!(
                "ρ = {rho}: {} missing, {} transform failures",
                r.missing.len(),
                r.transform_failures
            ));
        }
    }
    v
}

/// A random full diagram over `base` atoms on a lightlike pair plus up to
/// three further points.
fn diagram(rng: &mut TrialRng, n: usize, base: RelKind) -> (Vec<Point>, Formula) {
    let (p, q) = random_pair(rng, RelKind::Lightlike, n);
    let extra = 1 + (rng_index(rng) % 3);
    let mut pts = vec![p, q];
    for _ in 0..extra {
        pts.push(sampling::point(rng, n, 3, 2));
    }
    let names = var_names(pts.len());
    let word = if base == RelKind::Timelike { "tau" } else { "sig" };
    let mut atoms = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let r = rel(&pts[i], &pts[j]);
            let w = match (r == base, r == RelKind::Equal) {
                (true, _) => word.to_string(),
                (false, true) => "=".into(),
                (false, false) => format!("n{word}_ne"),
            };
            if (i, j) != (0, 1) {
                atoms.push(format!("{} {w} {}", names[i], names[j]));
            }
        }
    }
    (pts, parse(&atoms.join(" & ")).expect("generated diagram parses"))
}

fn rng_index(rng: &mut TrialRng) -> usize {
    use rand::Rng;
    rng.gen_range(0..3)
}

fn var_names(k: usize) -> Vec<String> {
    let mut v = vec!["p".to_string(), "q".to_string()];
    v.extend((0..k.saturating_sub(2)).map(|i| format!("v{i}")));
    v
}

fn t_eps(n: usize, c: &CheckOptions) -> Verdict {
    let mut v = Verdict::new("t-eps-no-exist-lambda", c.trials, c.seed);
    for (base, want) in [(RelKind::Timelike, RelKind::Spacelike), (RelKind::Spacelike, RelKind::Timelike)] {
        let results: Vec<Result<(Assignment, Assignment), String>> = (0..c.trials as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(c.seed, &format!("t-eps/{base}"), i);
                let (pts, matrix) = diagram(&mut rng, n, base);
                let names = var_names(pts.len());
                let before = assignment(names.iter().map(String::as_str).zip(pts.iter().cloned()));
                if !matrix.eval_qf(&before).unwrap_or(false) {
                    return Err("diagram does not hold on its own points".into());
                }
                let images = match base {
                    RelKind::Timelike => time_compress(&pts, (0, 1)),
                    _ => time_stretch(&pts, (0, 1)),
                }
                .map_err(|e| e.to_string())?
                .1;
                let after = assignment(names.iter().map(String::as_str).zip(images.iter().cloned()));
                if matrix.eval_qf(&after).unwrap_or(false) && rel(&images[0], &images[1]) == want {
                    Ok((before, after))
                } else {
                    Err(format!("image of {} is not a satisfying {want} pair", matrix))
                }
            })
            .collect();
        let mut kept = false;
        for r in results {
            match r {
                Ok((before, after)) if !kept => {
                    v.witnesses.extend([before, after]);
                    kept = true;
                }
                Ok(_) => {}
                Err(e) => v.fail(e, None),
            }
        }
        v.note(format!("{} {base} diagrams on lightlike pairs moved to {want} pairs", c.trials));
    }
    v
}

fn h_inversion(n: usize, c: &CheckOptions) -> Verdict {
    let mut v = Verdict::new("h-inversion-no-def-from-lambda", c.trials, c.seed);
    let h = PartialMap::HyperbolicInversion;
    let apply = |p: &Point| h.apply(p).expect("domain point");
    let mut rng = trial_rng(c.seed, "h/involution", 0);
    let (mut inv_ok, mut lam_ok) = (0, 0);
    while inv_ok < c.trials {
        let p = sampling::point(&mut rng, n, 4, 4);
        if !h.in_domain(&p) {
            continue;
        }
        if apply(&apply(&p)) != p {
            v.fail("h is not an involution", Some(assignment([("p", p)])));
            break;
        }
        inv_ok += 1;
    }
    while lam_ok < c.trials {
        let (p, q) = random_pair(&mut rng, RelKind::Lightlike, n);
        if !h.in_domain(&p) || !h.in_domain(&q) {
            continue;
        }
        if rel(&apply(&p), &apply(&q)) != RelKind::Lightlike {
            v.fail("h breaks a lightlike pair", Some(assignment([("p", p), ("q", q)])));
            break;
        }
        lam_ok += 1;
    }
    v.note(format!("involution on {inv_ok} points, λ kept on {lam_ok} pairs"));
    let at = |t: (i64, i64), x: (i64, i64)| {
        Point::new([FieldElem::frac(t.0, t.1), FieldElem::frac(x.0, x.1)].to_vec())
            .expect("plane point")
            .padded(n)
    };
    for (regime, p, q, want) in [
        (EscapeRegime::TimelikePair, at((0, 1), (1, 1)), at((3, 2), (1, 1)), RelKind::Spacelike),
        (EscapeRegime::SpacelikePair, at((1, 1), (0, 1)), at((1, 1), (3, 2)), RelKind::Timelike),
    ] {
        let (hp, hq) = (apply(&p), apply(&q));
        if rel(&hp, &hq) == want {
            v.witnesses.push(assignment([("p", p.clone()), ("q", q.clone()), ("hp", hp), ("hq", hq)]));
        } else {
            v.fail(format!("fixture pair does not become {want}"), Some(assignment([("p", p.clone()), ("q", q.clone())])));
        }
        let (replayed, odd) = lambda_replay(&p, &q, regime, want, n, c);
        v.note(format!("{regime:?}: {replayed} λ-diagrams carried to {want} pairs"));
        if odd > 0 {
            v.fail(format!("{odd} λ-diagrams not preserved under {regime:?}"), None);
        }
    }
    v
}

/// Random λ/λ̄ diagrams around the fixture pair, moved off the origin's
/// light cone and inverted.
fn lambda_replay(p: &Point, q: &Point, regime: EscapeRegime, want: RelKind, n: usize, c: &CheckOptions) -> (usize, usize) {
    let results: Vec<bool> = (0..c.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(c.seed, &format!("h/replay/{regime:?}"), i);
            let mut pts = vec![p.clone(), q.clone()];
            for _ in 0..1 + rng_index(&mut rng) {
                let base = pts[rng_index(&mut rng) % pts.len()].clone();
                pts.push(&base + &sampling::lightlike_offset(&mut rng, n, 3, 2));
            }
            let Ok(moved) = escape_iteration(&pts, regime) else { return false };
            let images: Vec<Point> = moved.iter().map(|x| hyperbolic_inversion(x).expect("off cone")).collect();
            let kept = (0..pts.len()).all(|a| {
                (a + 1..pts.len()).all(|b| {
                    let before = rel(&pts[a], &pts[b]);
                    let after = rel(&images[a], &images[b]);
                    (before == RelKind::Lightlike) == (after == RelKind::Lightlike)
                        && (before == RelKind::Equal) == (after == RelKind::Equal)
                })
            });
            kept && rel(&images[0], &images[1]) == want
        })
        .collect();
    let ok = results.iter().filter(|&&b| b).count();
    (ok, results.len() - ok)
}

fn swap_plane(n: usize, c: &CheckOptions) -> Result<Verdict, PlanError> {
    let s = swap_tx(n).map_err(|_| PlanError::RegimeViolation {
        plan: "swap-2d".into(),
        need: "n = 2".into(),
        n,
    })?;
    let mut v = Verdict::new("swap-2d", c.trials, c.seed);
    for kind in RelKind::ALL {
        for i in 0..c.trials as u64 {
            let mut rng = trial_rng(c.seed, &format!("swap/{kind}"), i);
            let (p, q) = random_pair(&mut rng, kind, n);
            let got = rel(&s.apply(&p), &s.apply(&q));
            if got != kind.swap_time_space() {
                v.fail(format!("{kind} pair became {got}"), Some(assignment([("p", p), ("q", q)])));
                break;
            }
        }
    }
    v.note("λ and = kept, τ and σ exchanged");
    Ok(v)
}

fn non_euclidean(c: &CheckOptions) -> Verdict {
    let mut v = Verdict::new("non-eucl-q-sqrt2", c.trials, c.seed);
    let ctx = FieldCtx::quadratic(2).expect("2 is square-free");
    let conj = lifted_conjugation(&ctx).expect("quadratic context");
    let r2 = FieldElem::root(&ctx).expect("root of ctx");
    let half_r2 = &r2 * &FieldElem::frac(1, 2);
    let o = Point::origin(2);
    let tau = Point::new(vec![FieldElem::one(), FieldElem::one() - half_r2.clone()]).expect("plane");
    let sig = Point::new(vec![FieldElem::one(), FieldElem::one() + half_r2]).expect("plane");
    let image = conj.apply(&tau).expect("in context");
    if rel(&o, &tau) == RelKind::Timelike && image == sig && rel(&o, &image) == RelKind::Spacelike {
        v.witnesses.push(assignment([("p", o.clone()), ("q", tau), ("conj_q", image)]));
    } else {
        v.fail("conjugation does not carry the timelike fixture to a spacelike one", None);
    }
    let mut rng = trial_rng(c.seed, "conj/lambda", 0);
    let mut checked = 0;
    for _ in 0..c.trials {
        let p = lift_random(&mut rng, &r2);
        let d = sampling::pythagorean_unit(&mut rng, 1);
        let s = lift_random(&mut rng, &r2).time().clone();
        if s.is_zero() {
            continue;
        }
        let q = &p + &Point::new(vec![s.clone(), &s * &FieldElem::rational(d[0].clone())]).expect("plane");
        if rel(&p, &q) != RelKind::Lightlike {
            continue;
        }
        checked += 1;
        let got = rel(&conj.apply(&p).expect("ctx"), &conj.apply(&q).expect("ctx"));
        if got != RelKind::Lightlike {
            v.fail(format!("conjugation sends a λ pair to {got}"), Some(assignment([("p", p), ("q", q)])));
            break;
        }
    }
    v.note(format!("λ kept on {checked} pairs over Q(rt2)"));
    if v.status == Status::Pass {
        v.note("τ is not definable from λ over Q(rt2)");
    }
    v
}

fn lift_random(rng: &mut TrialRng, r2: &FieldElem) -> Point {
    let a = sampling::point(rng, 2, 3, 4);
    let b = sampling::point(rng, 2, 3, 4);
    let coords = a.coords().iter().zip(b.coords()).map(|(x, y)| x + &(y * r2)).collect();
    Point::new(coords).expect("plane")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(n: usize) -> PlanOptions {
        PlanOptions { n, check: CheckOptions { trials: 20, ..CheckOptions::default() }, ..PlanOptions::default() }
    }

    #[test]
    fn registry_is_complete() {
        assert_eq!(PLANS.len(), 23);
        for p in PLANS {
            assert!(find_plan(p.id).is_some());
        }
        assert!(matches!(run_plan("nope", &quick(2)), Err(PlanError::UnknownPlan(_))));
    }

    #[test]
    fn regime_errors() {
        for (id, n) in [("psi-ls", 2), ("w-mirror-2d", 3), ("swap-2d", 3)] {
            assert!(matches!(run_plan(id, &quick(n)), Err(PlanError::RegimeViolation { .. })), "{id}");
        }
    }

    #[test]
    fn plane_only_plans_fail_in_space() {
        let v = run_plan("e-st-2d", &quick(3)).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.counterexample.unwrap()["p"], Point::ints(&[-2, -2, 0]));
    }

    #[test]
    fn transform_plans_pass() {
        for (id, n) in [
            ("nondef-3var", 2),
            ("t-eps-no-exist-lambda", 2),
            ("t-eps-no-exist-lambda", 3),
            ("h-inversion-no-def-from-lambda", 2),
            ("swap-2d", 2),
            ("non-eucl-q-sqrt2", 2),
            ("no-e2-def", 2),
        ] {
            let v = run_plan(id, &quick(n)).unwrap();
            assert_eq!(v.status, Status::Pass, "{id} n={n}: {:?}", v.notes);
        }
    }
}

//! Seeded checks that a named formula holds exactly on pairs of its target kind.

use rayon::prelude::*;
use serde::Serialize;

use super::builders::{frame, psi_st_cone_samples, psi_ts_cone_samples};
use super::search::{eval_with, propose};
use super::{
    refuter_psi_ls, refuter_wsl, search_existential, witness_ets, witness_ets_hat, witness_psi_ls,
    witness_psi_st_inner, witness_psi_ts_inner, witness_wsl, Assignment, Status, Strategy, Verdict,
    WitnessError, WslWitness,
};
use crate::exactfield::{FieldCtx, FieldElem};
use crate::formulas::{builtin, Formula, FormulaName, NamedFormula};
use crate::minkowski::{minkowski_dot, quad_form, rel, Point, RelKind, RelSet};
use crate::sampling::{self, trial_rng, TrialRng};
use crate::transforms::{swap_tx, AffineMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOptions {
    pub trials: usize,
    pub seed: u64,
    /// Sampled points per universally quantified variable.
    pub inner_samples: usize,
    /// Restarts of the guided witness search on non-target pairs.
    pub search_attempts: usize,
    pub kinds: Vec<RelKind>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            trials: 200,
            seed: 0,
            inner_samples: 8,
            search_attempts: 30,
            kinds: RelKind::ALL.to_vec(),
        }
    }
}

/// Results for the pairs of one relation kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KindTally {
    pub formula: String,
    pub kind: RelKind,
    /// Whether the formula should hold on pairs of this kind.
    pub expected: bool,
    pub trials: usize,
    pub exact: usize,
    pub sampled: usize,
    pub skipped: usize,
    pub undetermined: usize,
    pub disagreements: usize,
    pub strategies: Vec<Strategy>,
}

struct Outcome {
    holds: Option<bool>,
    exact: bool,
    witness: Option<Assignment>,
    note: Option<String>,
}

impl Outcome {
    fn settled(holds: bool, exact: bool) -> Outcome {
        Outcome { holds: Some(holds), exact, witness: None, note: None }
    }

    fn open(note: String) -> Outcome {
        Outcome { holds: None, exact: false, witness: None, note: Some(note) }
    }
}

enum Trial {
    Done(Outcome),
    Skipped(String),
}

fn lift(p: Point, ctx: &FieldCtx) -> Point {
    if ctx.is_rational() {
        return p;
    }
    p.map_coords(|c| c.in_ctx(ctx)).expect("rational coordinates lift")
}

/// Atoms forced by `f` through conjunctions and existential quantifiers.
fn forced_atoms(f: &Formula) -> Vec<(&str, RelSet, &str)> {
    match f {
        Formula::Atom(a, r, b) => vec![(a.as_str(), *r, b.as_str())],
        Formula::And(gs) => gs.iter().flat_map(forced_atoms).collect(),
        Formula::Exists(_, g) => forced_atoms(g),
        _ => vec![],
    }
}

/// For `a = b`: two forced atoms `v ρ a`, `v δ b` with disjoint `ρ`, `δ`.
fn equal_pair_clash(f: &Formula, a: &str, b: &str) -> Option<String> {
    let atoms = forced_atoms(f);
    let oriented: Vec<(&str, RelSet, &str)> = atoms
        .iter()
        .flat_map(|&(x, r, y)| [(x, r, y), (y, r, x)])
        .collect();
    for &(v, r, s) in &oriented {
        for &(w, r2, t) in &oriented {
            if v == w && s == a && t == b && (r & r2).is_empty() {
                return Some(format!("{v} {r} {a} and {v} {r2} {b} clash when {a} = {b}"));
            }
        }
    }
    None
}

fn linf(v: &Point) -> FieldElem {
    v.coords().iter().map(FieldElem::abs).max().unwrap_or_else(FieldElem::zero)
}

/// Random points near the pair plus points on the segment between them.
fn points_near(p: &Point, q: &Point, rng: &mut TrialRng, count: usize) -> Vec<Point> {
    let fixed = super::assignment([("p", p.clone()), ("q", q.clone())]);
    let mut out = vec![p.midpoint(q), p + &(q - p).scale(&FieldElem::frac(1, 4))];
    while out.len() < count {
        out.push(propose(rng, &fixed, p.dim()));
    }
    out
}

struct Ctx<'a> {
    nf: &'a NamedFormula,
    p: &'a Point,
    q: &'a Point,
    env: Assignment,
    opts: &'a CheckOptions,
    swap: Option<AffineMap>,
}

impl Ctx<'_> {
    fn to_frame(&self, x: &Point) -> Point {
        match &self.swap {
            Some(s) => s.apply(x),
            None => x.clone(),
        }
    }

    /// Runs `provider` and accepts the result only in the intended direction.
    fn run(
        &self,
        intended: bool,
        exact: bool,
        provider: &mut dyn FnMut(&str, &Assignment, bool) -> Vec<Point>,
    ) -> Outcome {
        let mut env = self.env.clone();
        match eval_with(&self.nf.formula, &mut env, true, provider) {
            Ok(r) if r == intended => Outcome::settled(r, exact),
            Ok(r) => Outcome::open(format!(
                "constructions gave {r} on {} {}",
                self.p, self.q
            )),
            Err(e) => Outcome::open(e.to_string()),
        }
    }
}

fn evaluate(nf: &NamedFormula, p: &Point, q: &Point, rng: &mut TrialRng, opts: &CheckOptions) -> Trial {
    let (a, b) = (&nf.params.0, &nf.params.1);
    let env = super::assignment([(a.as_str(), p.clone()), (b.as_str(), q.clone())]);
    for c in nf.formula.conjuncts() {
        if c.is_quantifier_free() && !c.eval_qf(&env).unwrap_or(false) {
            return Trial::Done(Outcome::settled(false, true));
        }
    }
    if let Some(base) = nf.negates {
        return match evaluate(&builtin(base), p, q, rng, opts) {
            Trial::Done(mut o) => {
                o.holds = o.holds.map(|h| !h);
                Trial::Done(o)
            }
            t => t,
        };
    }
    if p == q {
        return match equal_pair_clash(&nf.formula, a, b) {
            Some(note) => Trial::Done(Outcome { note: Some(note), ..Outcome::settled(false, true) }),
            None => Trial::Done(Outcome::open("no clash found for equal pair".into())),
        };
    }
    let n = p.dim();
    let swap = match nf.name {
        FormulaName::Est | FormulaName::EstHat | FormulaName::WslMirror => {
            Some(swap_tx(n).expect("regime restricts to n = 2"))
        }
        _ => None,
    };
    let cx = Ctx { nf, p, q, env, opts, swap };
    let result = match nf.name {
        FormulaName::PsiTS => psi_ts(&cx, rng),
        FormulaName::PsiST => psi_st(&cx, rng),
        FormulaName::PsiLS => psi_ls(&cx, rng),
        FormulaName::Ets | FormulaName::Est | FormulaName::EtsHat | FormulaName::EstHat => e_formula(&cx, rng),
        FormulaName::Wsl | FormulaName::WslMirror => w_formula(&cx, rng),
        other => unreachable!("{other} negates a base formula"),
    };
    match result {
        Ok(o) => Trial::Done(o),
        Err(WitnessError::NotASquare(v)) => {
            Trial::Skipped(format!("canonical frame needs square roots of {}", fmt_list(&v)))
        }
        Err(e) => Trial::Done(Outcome::open(e.to_string())),
    }
}

fn fmt_list(v: &[FieldElem]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn psi_ts(cx: &Ctx, rng: &mut TrialRng) -> Result<Outcome, WitnessError> {
    let (p, q, m) = (cx.p, cx.q, cx.opts.inner_samples);
    if rel(p, q) == RelKind::Spacelike {
        let (_, inv) = frame(p, q)?;
        let mut zs = points_near(p, q, rng, m);
        zs.extend([p.clone(), q.clone()]);
        for _ in 0..m / 2 + 1 {
            let c = sampling::point(rng, p.dim(), 3, 4).with_coord(0, FieldElem::zero());
            zs.push(inv.apply(&c));
        }
        Ok(cx.run(true, false, &mut |v, env, _| match v {
            "z" => zs.clone(),
            _ => witness_psi_ts_inner(&env["z"], p, q).into_iter().collect(),
        }))
    } else {
        let z = p.midpoint(q);
        let us = psi_ts_cone_samples(p, q, &z, rng, m);
        Ok(cx.run(false, false, &mut |v, _, _| match v {
            "z" => vec![z.clone()],
            _ => us.clone(),
        }))
    }
}

fn psi_st(cx: &Ctx, rng: &mut TrialRng) -> Result<Outcome, WitnessError> {
    let (p, q, m) = (cx.p, cx.q, cx.opts.inner_samples);
    if rel(p, q) == RelKind::Timelike {
        let (_, inv) = frame(p, q)?;
        let mut zs = points_near(p, q, rng, m);
        zs.extend([p.clone(), q.clone()]);
        for _ in 0..m / 2 + 1 {
            let t = sampling::rational(rng, 3, 4);
            zs.push(inv.apply(&Point::origin(p.dim()).with_coord(0, FieldElem::rational(t))));
        }
        Ok(cx.run(true, false, &mut |v, env, _| match v {
            "z" => zs.clone(),
            _ => witness_psi_st_inner(&env["z"], p, q).into_iter().collect(),
        }))
    } else {
        let z = p.midpoint(q);
        let us = psi_st_cone_samples(p, q, &z, rng, m);
        Ok(cx.run(false, false, &mut |v, _, _| match v {
            "z" => vec![z.clone()],
            _ => us.clone(),
        }))
    }
}

/// Points `x + s·(z − x)` of the null line through `x` and `z`, including
/// the only one that can be lightlike to `y`.
fn null_line_points(x: &Point, y: &Point, z: &Point) -> Vec<Point> {
    let d = z - x;
    let w = x - y;
    let c0 = quad_form(&w);
    let c1 = minkowski_dot(&d, &w) * FieldElem::int(2);
    let mut ss = vec![FieldElem::int(-1), FieldElem::frac(1, 2), FieldElem::int(2)];
    if let Ok(s) = (-c0).checked_div(&c1) {
        ss.push(s);
    }
    ss.into_iter().map(|s| x + &d.scale(&s)).collect()
}

fn psi_ls(cx: &Ctx, rng: &mut TrialRng) -> Result<Outcome, WitnessError> {
    let (p, q, m) = (cx.p, cx.q, cx.opts.inner_samples);
    if rel(p, q) == RelKind::Spacelike {
        let z = witness_psi_ls(p, q)?;
        // Λ_x ∩ Λ_z is the null line through x and z when n ≥ 3, and the
        // supplied points include its only candidate lightlike to y.
        let mut out = cx.run(true, true, &mut |v, env, _| match v {
            "z" => vec![z.clone()],
            _ => null_line_points(p, q, &env["z"]),
        });
        out.witness = Some(super::assignment([("x", p.clone()), ("y", q.clone()), ("z", z)]));
        Ok(out)
    } else {
        let scale = linf(&(q - p));
        let zs: Vec<Point> = (0..m)
            .map(|_| p + &sampling::lightlike_offset(rng, p.dim(), 3, 4).scale(&scale))
            .collect();
        Ok(cx.run(false, false, &mut |v, env, _| match v {
            "z" => zs.clone(),
            _ => refuter_psi_ls(p, q, &env["z"]).into_iter().collect(),
        }))
    }
}

fn e_formula(cx: &Ctx, rng: &mut TrialRng) -> Result<Outcome, WitnessError> {
    let (p, q) = (cx.p, cx.q);
    let (vars, matrix) = cx.nf.formula.existential_prefix();
    if rel(p, q) == cx.nf.target {
        let (fp, fq) = (cx.to_frame(p), cx.to_frame(q));
        let w = match cx.nf.name {
            FormulaName::Ets | FormulaName::Est => witness_ets(&fp, &fq)?,
            _ => witness_ets_hat(&fp, &fq)?,
        };
        let w: Assignment = w.into_iter().map(|(k, v)| (k, cx.to_frame(&v))).collect();
        let ok = matrix.eval_qf(&w)?;
        let mut out = if ok {
            Outcome::settled(true, true)
        } else {
            Outcome::open("template witness fails the matrix".into())
        };
        out.witness = Some(w);
        return Ok(out);
    }
    match search_existential(matrix, &vars, &cx.env, rng, cx.opts.search_attempts, 40) {
        Some(found) => Ok(Outcome {
            witness: Some(found),
            note: Some("guided search found a witness".into()),
            ..Outcome::settled(true, true)
        }),
        None => Ok(Outcome::settled(false, false)),
    }
}

fn w_formula(cx: &Ctx, rng: &mut TrialRng) -> Result<Outcome, WitnessError> {
    let (p, q, m) = (cx.p, cx.q, cx.opts.inner_samples);
    let (fp, fq) = (cx.to_frame(p), cx.to_frame(q));
    if rel(p, q) == cx.nf.target {
        let mut us = points_near(p, q, rng, m);
        us.push(p + &(q - p).scale(&FieldElem::frac(3, 4)));
        let extra = points_near(p, q, rng, 3);
        let mut provider = |v: &str, env: &Assignment, _: bool| -> Vec<Point> {
            match v {
                "u" => us.clone(),
                "v" => {
                    let mut vs = extra.clone();
                    vs.push(env["u"].clone());
                    vs
                }
                _ => {
                    let (u, w) = (cx.to_frame(&env["u"]), cx.to_frame(&env["v"]));
                    match witness_wsl(&fp, &fq, &u, &w) {
                        Ok(WslWitness::Zu(z)) if v == "zu" => vec![cx.to_frame(&z)],
                        Ok(WslWitness::Zv(z)) if v == "zv" => vec![cx.to_frame(&z)],
                        Ok(_) => vec![p.clone()],
                        Err(_) => vec![],
                    }
                }
            }
        };
        Ok(cx.run(true, false, &mut provider))
    } else {
        let (u, v) = refuter_wsl(&fp, &fq)?;
        let (u, v) = (cx.to_frame(&u), cx.to_frame(&v));
        let base = cx.nf.source;
        let fixed = super::assignment([("p", p.clone()), ("q", q.clone()), ("u", u.clone()), ("v", v.clone())]);
        let mut zs = Vec::new();
        let mut attempts = 0;
        while zs.len() < m && attempts < 60 * m {
            attempts += 1;
            let z = propose(rng, &fixed, p.dim());
            if rel(&z, p) == base && rel(&z, q) == base {
                zs.push(z);
            }
        }
        let mut out = cx.run(false, false, &mut |name, _, _| match name {
            "u" => vec![u.clone()],
            "v" => vec![v.clone()],
            _ => zs.clone(),
        });
        out.witness = Some(super::assignment([("x", p.clone()), ("y", q.clone()), ("u", u.clone()), ("v", v.clone())]));
        Ok(out)
    }
}

/// Checks `name` on `trials` seeded pairs of each requested kind.
pub fn check_formula(
    name: FormulaName,
    n: usize,
    ctx: &FieldCtx,
    opts: &CheckOptions,
) -> Result<Verdict, WitnessError> {
    let nf = builtin(name);
    if !nf.regime.admits_dim(n) {
        return Err(WitnessError::RegimeViolation {
            name: name.to_string(),
            regime: nf.regime.to_string(),
            n,
        });
    }
    let mut verdict = Verdict::new(name.as_str(), opts.trials, opts.seed);
    let mut sampled_any = false;
    for &kind in &opts.kinds {
        let label = format!("{name}/{}", kind.name());
        let results: Vec<(Point, Point, Trial)> = (0..opts.trials as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(opts.seed, &label, i);
                let (p, q) = sampling::random_pair(&mut rng, kind, n);
                let (p, q) = (lift(p, ctx), lift(q, ctx));
                let t = evaluate(&nf, &p, &q, &mut rng, opts);
                (p, q, t)
            })
            .collect();
        let expected = kind == nf.target;
        let mut tally = KindTally {
            formula: name.to_string(),
            kind,
            expected,
            trials: opts.trials,
            exact: 0,
            sampled: 0,
            skipped: 0,
            undetermined: 0,
            disagreements: 0,
            strategies: Vec::new(),
        };
        let mut kept_witness = false;
        for (p, q, t) in results {
            match t {
                Trial::Skipped(why) => {
                    if tally.skipped == 0 {
                        verdict.note(format!("{kind} pairs skipped: {why}"));
                    }
                    tally.skipped += 1;
                }
                Trial::Done(o) => match o.holds {
                    None => {
                        if tally.undetermined == 0 {
                            verdict.note(format!("{kind}: {}", o.note.unwrap_or_default()));
                        }
                        tally.undetermined += 1;
                    }
                    Some(h) if h != expected => {
                        tally.disagreements += 1;
                        let mut a = o.witness.unwrap_or_default();
                        a.insert(nf.params.0.clone(), p);
                        a.insert(nf.params.1.clone(), q);
                        verdict.fail(
                            format!("{name} evaluates {h} on a {kind} pair"),
                            Some(a),
                        );
                    }
                    Some(h) => {
                        let strategy = match (o.exact, h) {
                            (true, true) => Strategy::ExactWitness,
                            (true, false) => Strategy::ExactRefuterInstance,
                            (false, _) => Strategy::SampledNoCounterexample,
                        };
                        if o.exact {
                            tally.exact += 1;
                        } else {
                            tally.sampled += 1;
                            sampled_any = true;
                        }
                        if !tally.strategies.contains(&strategy) {
                            tally.strategies.push(strategy);
                        }
                        if let (false, Some(w)) = (kept_witness, o.witness) {
                            verdict.witnesses.push(w);
                            kept_witness = true;
                        }
                    }
                },
            }
        }
        tally.strategies.sort();
        if tally.undetermined > 0 || tally.skipped == tally.trials && tally.trials > 0 {
            verdict.inconclusive(format!("{kind}: {} undetermined, {} skipped", tally.undetermined, tally.skipped));
        }
        verdict.tallies.push(tally);
    }
    if sampled_any && verdict.status != Status::Fail {
        verdict.note("universal directions rest on sampling evidence");
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: usize) -> CheckOptions {
        CheckOptions { trials, ..CheckOptions::default() }
    }

    #[test]
    fn clash_detection() {
        let ets = builtin(FormulaName::Ets).formula;
        assert!(equal_pair_clash(&ets, "p", "q").is_some());
        let ls = builtin(FormulaName::PsiLS).formula;
        assert!(equal_pair_clash(&ls, "x", "y").is_some());
        let w = builtin(FormulaName::Wsl).formula;
        assert!(equal_pair_clash(&w, "x", "y").is_none());
    }

    #[test]
    fn small_checks_pass() {
        let q = FieldCtx::Rationals;
        for (name, n) in [
            (FormulaName::PsiTS, 2),
            (FormulaName::PsiSL, 2),
            (FormulaName::PsiLS, 3),
            (FormulaName::Ets, 2),
            (FormulaName::EstHat, 2),
            (FormulaName::Wsl, 2),
            (FormulaName::WstMirror, 2),
        ] {
            let v = check_formula(name, n, &q, &quick(6)).unwrap();
            assert_eq!(v.status, Status::Pass, "{name}: {:?}", v.notes);
        }
    }

    #[test]
    fn regime_is_enforced() {
        let err = check_formula(FormulaName::PsiLS, 2, &FieldCtx::Rationals, &quick(1));
        assert!(matches!(err, Err(WitnessError::RegimeViolation { .. })));
        let err = check_formula(FormulaName::Est, 3, &FieldCtx::Rationals, &quick(1));
        assert!(matches!(err, Err(WitnessError::RegimeViolation { .. })));
    }

    #[test]
    fn reports_are_reproducible() {
        let a = check_formula(FormulaName::EtsHat, 3, &FieldCtx::Rationals, &quick(4)).unwrap();
        let b = check_formula(FormulaName::EtsHat, 3, &FieldCtx::Rationals, &quick(4)).unwrap();
        assert_eq!(a, b);
    }
}

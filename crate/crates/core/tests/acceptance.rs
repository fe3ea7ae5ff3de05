//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use causaldef::cli;
use causaldef::exactfield::{FieldCtx, FieldElem};
use causaldef::formulas::FormulaName;
use causaldef::graphembed::{nrf2_relation_report, Budget};
use causaldef::matrix::{status_matrix, Cell, Direction};
use causaldef::minkowski::{rel, relate, Point, RelKind, RelSet};
use causaldef::plans::{run_plan, PlanOptions};
use causaldef::relalg::{closure, decide_3var_definable, AtomSet, CompositionTable};
use causaldef::sampling::{self, random_pair, trial_rng};
use causaldef::transforms::{self, canonical_pair, canonicalize_pair, AffineMap, TransformError};
use causaldef::witnesses::{
    check_formula, counterexample, CheckOptions, CounterexampleName, Status,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_relation_fixtures() -> Outcome {
    let q = FieldCtx::Rationals;
    let r2 = FieldCtx::quadratic(2).unwrap();
    let pt = |s: &str, c: &FieldCtx| Point::parse(s, c).unwrap();
    let cases = [
        (pt("(-2,-2,0)", &q), pt("(2,2,0)", &q), RelKind::Lightlike),
        (pt("(0,-2,0)", &q), pt("(0,2,0)", &q), RelKind::Spacelike),
        (pt("(0,0,0)", &r2), pt("(1,1-1/2*rt,0)", &r2), RelKind::Timelike),
        (pt("(0,0,0)", &r2), pt("(1,1+1/2*rt,0)", &r2), RelKind::Spacelike),
    ];
    for (p, q, want) in &cases {
        let got = relate(p, q).map_err(|e| e.to_string())?;
        ensure(got == *want, format!("{p} {q}: {got}, expected {want}"))?;
    }
    Ok(format!("{} fixture pairs, exact", cases.len()))
}

fn c2_automorphisms() -> Outcome {
    const PAIRS: u64 = 10_000;
    let n = 3;
    let v35 = FieldElem::frac(3, 5);
    let mut rng = trial_rng(0, "acceptance/maps", 0);
    let classes: Vec<(&str, AffineMap)> = vec![
        ("translation", transforms::translation(&Point::fracs(&[(1, 2), (-3, 1), (2, 3)]))),
        ("scaling", transforms::scaling(n, &FieldElem::frac(7, 3)).unwrap()),
        ("time reversal", transforms::time_reversal(n)),
        ("rotation", sampling::random_rotation(&mut rng, n)),
        ("boost 3/5", transforms::boost(n, 1, &v35).unwrap()),
        (
            "B_tau",
            transforms::boost_scale_tau(n, &FieldElem::int(5), &FieldElem::int(3)).unwrap(),
        ),
        (
            "B_sigma",
            transforms::boost_scale_sigma(n, &FieldElem::int(3), &FieldElem::int(5)).unwrap(),
        ),
    ];
    for (name, map) in &classes {
        for i in 0..PAIRS {
            let mut r = trial_rng(0, &format!("acceptance/{name}"), i);
            let kind = RelKind::ALL[(i % 4) as usize];
            let (p, q) = random_pair(&mut r, kind, n);
            let got = rel(&map.apply(&p), &map.apply(&q));
            ensure(got == kind, format!("{name} sends a {kind} pair to {got}"))?;
        }
    }
    for i in 0..PAIRS {
        let mut r = trial_rng(0, "acceptance/canonical", i);
        let kind = RelKind::DISTINCT[(i % 3) as usize];
        let (p, q) = random_pair(&mut r, kind, 2);
        let (alpha, k) = match canonicalize_pair(&p, &q) {
            Ok(x) => x,
            Err(TransformError::NotASquare(v)) => return Err(format!("n=2 asked for roots of {v:?}")),
            Err(e) => return Err(e.to_string()),
        };
        let (cp, cq) = canonical_pair(k, 2);
        ensure(k == kind && alpha.apply(&p) == cp && alpha.apply(&q) == cq, "canonical image")?;
        let back = alpha.inverse();
        ensure(back.apply(&cp) == p && back.apply(&cq) == q, "round trip")?;
    }
    Ok(format!("{} classes x {PAIRS} pairs, {PAIRS} canonicalizations in n=2", classes.len()))
}

fn c3_three_variables() -> Outcome {
    let table = CompositionTable::standard();
    let s = closure(&[AtomSet::RHO], &table);
    let proof_s: Vec<u8> = (0..8).collect();
    ensure(
        s.iter().map(|a| a.bits()).collect::<Vec<_>>() == proof_s,
        format!("closure has {} elements", s.len()),
    )?;
    for rho in RelKind::DISTINCT {
        for target in RelKind::DISTINCT.into_iter().filter(|&k| k != rho) {
            ensure(!decide_3var_definable(rho, RelSet::of(target)), format!("{target} from {rho}"))?;
        }
    }
    let v = run_plan("nondef-3var", &PlanOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::Pass, format!("table validation: {:?}", v.notes))?;
    Ok("closure of {ρ, =} has 8 elements; 6 cross targets undefinable".into())
}

fn c4_formula_suite() -> Outcome {
    const TRIALS: usize = 1000;
    let suite = [
        (FormulaName::PsiTS, 2),
        (FormulaName::PsiST, 2),
        (FormulaName::PsiLS, 3),
        (FormulaName::Ets, 2),
        (FormulaName::EtsHat, 2),
        (FormulaName::Est, 2),
        (FormulaName::EstHat, 2),
        (FormulaName::Wsl, 2),
        (FormulaName::WslMirror, 2),
    ];
    let opts = CheckOptions { trials: TRIALS, search_attempts: 6, ..CheckOptions::default() };
    for (name, n) in suite {
        let v = check_formula(name, n, &FieldCtx::Rationals, &opts).map_err(|e| e.to_string())?;
        ensure(v.status == Status::Pass, format!("{name} n={n}: {:?} {:?}", v.status, v.notes))?;
        for t in &v.tallies {
            let settled = t.exact + t.sampled;
            ensure(settled == TRIALS, format!("{name} {}: {settled} of {TRIALS} settled", t.kind))?;
        }
    }
    Ok(format!("{} formulas x 4 kinds x {TRIALS} pairs, no violations (sampling evidence)", suite.len()))
}

fn c5_counterexamples() -> Outcome {
    for name in CounterexampleName::ALL {
        let c = counterexample(name);
        ensure(c.verify(), format!("{name} does not verify"))?;
    }
    let kinds: Vec<RelKind> = CounterexampleName::ALL.iter().map(|&n| counterexample(n).pair_kind).collect();
    ensure(
        kinds == [RelKind::Lightlike, RelKind::Spacelike, RelKind::Lightlike],
        format!("pair kinds {kinds:?}"),
    )?;
    Ok("3 fixed point sets satisfy their matrices off τ".into())
}

fn plan_with(id: &str, n: usize, trials: usize) -> Result<causaldef::witnesses::Verdict, String> {
    let opts = PlanOptions { n, check: CheckOptions { trials, ..CheckOptions::default() }, ..PlanOptions::default() };
    run_plan(id, &opts).map_err(|e| e.to_string())
}

fn c6_time_compression() -> Outcome {
    for n in [2, 3] {
        let v = plan_with("t-eps-no-exist-lambda", n, 100)?;
        ensure(v.status == Status::Pass, format!("n={n}: {:?}", v.notes))?;
    }
    Ok("100 τ- and 100 σ-diagrams per dimension moved off λ exactly".into())
}

fn c7_inversion() -> Outcome {
    let v = plan_with("h-inversion-no-def-from-lambda", 2, 1000)?;
    ensure(v.status == Status::Pass, format!("{:?}", v.notes))?;
    let h = |x: &Point| transforms::hyperbolic_inversion(x).unwrap();
    let p = Point::fracs(&[(0, 1), (1, 1)]);
    let q = Point::fracs(&[(3, 2), (1, 1)]);
    ensure(rel(&p, &q) == RelKind::Timelike, "fixture is timelike")?;
    ensure(h(&q) == Point::fracs(&[(6, 5), (4, 5)]), "h(q)")?;
    ensure(rel(&h(&p), &h(&q)) == RelKind::Spacelike, "image is spacelike")?;
    Ok("involution and λ on 1000 samples each; fixture τ pair becomes σ".into())
}

fn c8_embeddings() -> Outcome {
    for rho in [RelKind::Timelike, RelKind::Spacelike] {
        let r = nrf2_relation_report(rho, 2, &Budget::default());
        ensure(r.graphs == 32 && r.orbits == 14, format!("{} graphs, {} orbits", r.graphs, r.orbits))?;
        ensure(r.embeddings.len() == 96 && r.passed(), format!("ρ={rho}: missing {:?}", r.missing))?;
    }
    Ok("32 graphs x 3 relations embedded in Q² for ρ = τ and σ, O1-O4 verified".into())
}

fn c9_matrix() -> Outcome {
    // Rows as printed in the two result tables: X impossible, ? open,
    // V definable, otherwise the formula named in the cell.
    let plane = [
        ("E2/A2", "X X X X X X"),
        ("E3", "EtsHat X EstHat X X X"),
        ("A3", "X UtlHat X UslHat X X"),
        ("E4", "Ets X Est X X X"),
        ("A4", "X Utl X Usl X X"),
        ("E1A1", "? PsiTL ? PsiSL X X"),
        ("A1E1", "PsiTS ? PsiST ? X X"),
        ("E2A1/E1A2", "? V ? V X X"),
        ("A2E1/A1E2", "V ? V ? X X"),
        ("E2A2", "WstMirror V Wst V X X"),
        ("A2E2", "V WslMirror V Wsl X X"),
    ];
    let space = [
        ("E2/A2", "X X X X X X"),
        ("E3", "EtsHat X ? X X X"),
        ("A3", "X UtlHat X ? X X"),
        ("E4", "Ets X ? X X X"),
        ("A4", "X Utl X ? X X"),
        ("E*", "V X ? X X X"),
        ("A*", "X V X ? X X"),
        ("E1A1", "? PsiTL ? PsiSL ? PsiLS"),
        ("A1E1", "PsiTS ? PsiST ? PsiLT ?"),
        ("E2A1/E1A2", "? V ? V ? V"),
        ("A2E1/A1E2", "V ? V ? V ?"),
        ("E2A2", "? V Wst V ? V"),
        ("A2E2", "V ? V Wsl V ?"),
        ("E*A*", "V V V V ? V"),
        ("A*E*", "V V V V V ?"),
    ];
    let mut cells = 0;
    for (n, table) in [(2, &plane[..]), (3, &space[..])] {
        let m = status_matrix(n, &FieldCtx::Rationals);
        ensure(m.rows.len() == table.len(), format!("n={n}: {} rows", m.rows.len()))?;
        for (prefix, expected) in table {
            for (d, e) in Direction::ALL.into_iter().zip(expected.split(' ')) {
                let got = m.cell(prefix, d).ok_or(format!("no row {prefix}"))?;
                let ok = match (e, got) {
                    ("X", Cell::Impossible) | ("?", Cell::Open) | ("V", Cell::Yes) => true,
                    (name, Cell::Formula(f)) => f.to_string() == name,
                    _ => false,
                };
                ensure(ok, format!("n={n} {prefix} {}: {got}, expected {e}", d.label()))?;
                cells += 1;
            }
        }
        ensure(m.inconsistencies().is_empty(), format!("{:?}", m.inconsistencies()))?;
    }
    Ok(format!("{cells} cells match, every positive cell backed by a formula"))
}

fn c10_determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["verify", "psi-ts", "--trials", "30", "--seed", "7"],
        &["verify", "e-ts-hat", "--n", "3", "--trials", "10", "--seed", "3"],
        &["verify", "t-eps-no-exist-lambda", "--trials", "20"],
        &["verify", "nrf2-suite"],
    ];
    for args in runs {
        let go = || cli::run(std::iter::once("causaldef").chain(args.iter().copied()));
        let (a, b) = (go(), go());
        ensure(a == b, format!("{args:?} differs between runs"))?;
        ensure(a.1 == cli::EXIT_PASS, format!("{args:?} exit {}", a.1))?;
    }
    Ok(format!("{} verify reports byte-identical on rerun", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relation kernel fixtures", c1_relation_fixtures),
        ("automorphism suite", c2_automorphisms),
        ("3-variable theorem", c3_three_variables),
        ("defining-formula suite", c4_formula_suite),
        ("counterexample fixtures", c5_counterexamples),
        ("T_eps replay", c6_time_compression),
        ("h-inversion replay", c7_inversion),
        ("graph-embedding suite", c8_embeddings),
        ("status matrix", c9_matrix),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

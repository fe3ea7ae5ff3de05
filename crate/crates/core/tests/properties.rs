use proptest::prelude::*;

use causaldef::exactfield::{FieldCtx, FieldElem};
use causaldef::formulas::{builtin, parse, Formula, FormulaName};
use causaldef::graphembed::{enumerate_nrf2, perturb_pq, verify_embedding, Embedding};
use causaldef::minkowski::{quad_form, rel, Point, RelKind, RelSet};
use causaldef::sampling::{random_automorphism, random_pair, trial_rng};
use causaldef::transforms::{canonical_pair, canonicalize_pair, hyperbolic_inversion, time_compress};
use causaldef::witnesses::{witness_ets, witness_ets_hat, witness_psi_st_inner, witness_psi_ts_inner, witness_wsl, WslWitness};

fn kind() -> impl Strategy<Value = RelKind> {
    prop::sample::select(RelKind::ALL.to_vec())
}

fn distinct_kind() -> impl Strategy<Value = RelKind> {
    prop::sample::select(RelKind::DISTINCT.to_vec())
}

fn sqrt2_elem() -> impl Strategy<Value = FieldElem> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, da, b, db)| {
        let ctx = FieldCtx::quadratic(2).unwrap();
        let r = FieldElem::root(&ctx).unwrap();
        &FieldElem::frac(a, da) + &(&FieldElem::frac(b, db) * &r)
    })
}

fn atom_text() -> impl Strategy<Value = String> {
    let vars = prop::sample::select(vec!["x", "y", "z"]);
    let rels = prop::sample::select(vec!["tau", "lam", "sig", "ntau", "nsig_ne", "=", "!=", "T,~T"]);
    (vars.clone(), rels, vars).prop_map(|(a, r, b)| {
        if r.contains(',') {
            format!("{a} {r} {b} {a}")
        } else {
            format!("{a} {r} {b}")
        }
    })
}

fn formula_text() -> impl Strategy<Value = String> {
    atom_text().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| format!("!({f})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) & ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) | ({b})")),
            inner.clone().prop_map(|f| format!("exists z ({f})")),
            inner.prop_map(|f| format!("forall y ({f})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_ring_laws(a in sqrt2_elem(), b in sqrt2_elem()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a.clone());
        }
        prop_assert_eq!(a.square().sqrt_exact().unwrap(), a.abs());
    }

    #[test]
    fn relation_is_symmetric_and_invariant(seed in any::<u64>(), k in kind(), n in 2usize..=4) {
        let mut rng = trial_rng(seed, "prop/relate", 0);
        let (p, q) = random_pair(&mut rng, k, n);
        prop_assert_eq!(rel(&p, &q), k);
        prop_assert_eq!(rel(&q, &p), k);
        let a = random_automorphism(&mut rng, n);
        prop_assert_eq!(rel(&a.apply(&p), &a.apply(&q)), k);
    }

    #[test]
    fn canonical_form_in_the_plane(seed in any::<u64>(), k in distinct_kind()) {
        let mut rng = trial_rng(seed, "prop/canonical", 0);
        let (p, q) = random_pair(&mut rng, k, 2);
        let (alpha, got) = canonicalize_pair(&p, &q).unwrap();
        let (cp, cq) = canonical_pair(k, 2);
        prop_assert_eq!(got, k);
        prop_assert_eq!(alpha.apply(&p), cp);
        prop_assert_eq!(alpha.apply(&q), cq);
    }

    #[test]
    fn printing_round_trips(text in formula_text()) {
        let f: Formula = parse(&text).unwrap();
        let again = parse(&f.to_string()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(f.swap_time_space().swap_time_space(), f.clone());
        prop_assert_eq!(f.swap_time_space().prefix_class(), f.prefix_class());
    }

    #[test]
    fn e_witnesses_satisfy_matrices(seed in any::<u64>(), hat in any::<bool>()) {
        let mut rng = trial_rng(seed, "prop/ets", 0);
        let (p, q) = random_pair(&mut rng, RelKind::Spacelike, 2);
        let (name, w) = if hat {
            (FormulaName::EtsHat, witness_ets_hat(&p, &q).unwrap())
        } else {
            (FormulaName::Ets, witness_ets(&p, &q).unwrap())
        };
        let f = builtin(name).formula;
        let (_, matrix) = f.existential_prefix();
        prop_assert!(matrix.eval_qf(&w).unwrap());
    }

    #[test]
    fn psi_inner_witnesses(seed in any::<u64>(), zt in -8i64..8, zx in -8i64..8) {
        let mut rng = trial_rng(seed, "prop/psi", 0);
        let z = Point::fracs(&[(zt, 4), (zx, 4)]);
        let (p, q) = random_pair(&mut rng, RelKind::Spacelike, 2);
        if z != p && z != q {
            let u = witness_psi_ts_inner(&z, &p, &q).unwrap();
            prop_assert_eq!(rel(&u, &z), RelKind::Timelike);
            prop_assert!(rel(&u, &p) != RelKind::Timelike && rel(&u, &q) != RelKind::Timelike);
        }
        let (p, q) = random_pair(&mut rng, RelKind::Timelike, 2);
        if z != p && z != q {
            let u = witness_psi_st_inner(&z, &p, &q).unwrap();
            prop_assert_eq!(rel(&u, &z), RelKind::Spacelike);
            prop_assert!(rel(&u, &p) != RelKind::Spacelike && rel(&u, &q) != RelKind::Spacelike);
        }
    }

    #[test]
    fn w_witnesses(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = trial_rng(seed, "prop/w", 0);
        let (p, q) = random_pair(&mut rng, RelKind::Lightlike, n);
        let (u, v) = random_pair(&mut rng, RelKind::ALL[(seed % 4) as usize], n);
        let pattern = |z: &Point, w: &Point| {
            rel(z, w) != RelKind::Spacelike
                && rel(z, &p) == RelKind::Spacelike
                && rel(z, &q) == RelKind::Spacelike
        };
        match witness_wsl(&p, &q, &u, &v).unwrap() {
            WslWitness::Zu(z) => prop_assert!(pattern(&z, &u)),
            WslWitness::Zv(z) => prop_assert!(pattern(&z, &v)),
            WslWitness::NonSpacelikeUV => prop_assert!(rel(&u, &v) != RelKind::Spacelike),
        }
    }

    #[test]
    fn time_compression_keeps_tau_diagram(seed in any::<u64>(), extra in 1usize..4) {
        let mut rng = trial_rng(seed, "prop/teps", 0);
        let (p, q) = random_pair(&mut rng, RelKind::Lightlike, 3);
        let mut pts = vec![p, q];
        for _ in 0..extra {
            pts.push(random_pair(&mut rng, RelKind::Timelike, 3).1);
        }
        let (_, img) = time_compress(&pts, (0, 1)).unwrap();
        prop_assert_eq!(rel(&img[0], &img[1]), RelKind::Spacelike);
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let before = rel(&pts[i], &pts[j]) == RelKind::Timelike;
                prop_assert_eq!(rel(&img[i], &img[j]) == RelKind::Timelike, before);
            }
        }
    }

    #[test]
    fn inversion_is_an_involution(t in -30i64..30, x in -30i64..30, y in -30i64..30) {
        let p = Point::fracs(&[(t, 3), (x, 5), (y, 7)]);
        if !quad_form(&p).is_zero() {
            let h = hyperbolic_inversion(&p).unwrap();
            prop_assert_eq!(hyperbolic_inversion(&h).unwrap(), p);
        }
    }

    #[test]
    fn perturbation_keeps_labels(g in 0usize..32, want in distinct_kind()) {
        let graph = enumerate_nrf2(RelKind::Timelike).swap_remove(g);
        let e = causaldef::graphembed::embed(
            &graph.clone().with_edge("p", "q", RelSet::LAM),
            2,
            &Default::default(),
        ).unwrap();
        if let Ok(moved) = perturb_pq(&e, &graph, want) {
            prop_assert!(verify_embedding(&graph, &moved));
            prop_assert_eq!(rel(&moved["p"], &moved["q"]), want);
            let unchanged: Embedding = moved.iter().filter(|(k, _)| k.as_str() != "q").map(|(k, v)| (k.clone(), v.clone())).collect();
            prop_assert!(unchanged.iter().all(|(k, v)| &e[k] == v));
        }
    }
}

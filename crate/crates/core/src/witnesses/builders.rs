//! Constructions stated in canonical coordinates and pulled back.

use rand::Rng;

use super::{assignment, Assignment, WitnessError};
use crate::exactfield::{rational_sqrt_bounds, FieldElem};
use crate::minkowski::{minkowski_dot, quad_form, rel, Point, RelKind, RelSet};
use crate::sampling::{self, TrialRng};
use crate::transforms::{canonicalize_pair, AffineMap};

fn expect_kind(p: &Point, q: &Point, allowed: RelSet, label: &str) -> Result<RelKind, WitnessError> {
    let k = crate::minkowski::relate(p, q)?;
    if allowed.contains(k) {
        Ok(k)
    } else {
        Err(WitnessError::WrongRelation { expected: label.to_string(), got: k })
    }
}

/// `(α, α⁻¹)` with `α` sending `(p, q)` to the canonical pair.
pub(super) fn frame(p: &Point, q: &Point) -> Result<(AffineMap, AffineMap), WitnessError> {
    let (alpha, _) = canonicalize_pair(p, q)?;
    let inv = alpha.inverse();
    Ok((alpha, inv))
}

/// A point given by its first coordinates, zero-padded to `n`.
fn template(n: usize, head: &[(i64, i64)]) -> Point {
    Point::fracs(head).padded(n)
}

fn linf(v: &Point) -> FieldElem {
    v.coords().iter().map(FieldElem::abs).max().unwrap_or_else(FieldElem::zero)
}

fn spatial_linf(v: &Point) -> FieldElem {
    v.spatial().iter().map(FieldElem::abs).max().unwrap_or_else(FieldElem::zero)
}

/// `r, x, s, z` for a spacelike pair, with `p, q` included.
pub fn witness_ets(p: &Point, q: &Point) -> Result<Assignment, WitnessError> {
    expect_kind(p, q, RelSet::SIG, "spacelike")?;
    let (_, inv) = frame(p, q)?;
    let n = p.dim();
    let pts = [
        ("r", template(n, &[(3, 4), (1, 2)])),
        ("x", template(n, &[(3, 8), (-1, 8)])),
        ("s", template(n, &[(0, 1), (1, 2)])),
        ("z", template(n, &[(3, 8), (9, 8)])),
    ];
    let mut out = assignment([("p", p.clone()), ("q", q.clone())]);
    for (name, pt) in pts {
        out.insert(name.to_string(), inv.apply(&pt));
    }
    Ok(out)
}

/// `x, y, z` for a spacelike pair, with `p, q` included.
pub fn witness_ets_hat(p: &Point, q: &Point) -> Result<Assignment, WitnessError> {
    expect_kind(p, q, RelSet::SIG, "spacelike")?;
    let (_, inv) = frame(p, q)?;
    let n = p.dim();
    let pts = [
        ("x", template(n, &[(3, 4), (0, 1)])),
        ("y", template(n, &[(0, 1), (1, 2)])),
        ("z", template(n, &[(3, 4), (1, 1)])),
    ];
    let mut out = assignment([("p", p.clone()), ("q", q.clone())]);
    for (name, pt) in pts {
        out.insert(name.to_string(), inv.apply(&pt));
    }
    Ok(out)
}

/// `u` with `u τ z`, `u τ̄ p`, `u τ̄ q` for a spacelike pair `p, q`.
pub fn witness_psi_ts_inner(z: &Point, p: &Point, q: &Point) -> Result<Point, WitnessError> {
    expect_kind(p, q, RelSet::SIG, "spacelike")?;
    if z == p || z == q {
        return Err(WitnessError::DegenerateZ);
    }
    let (alpha, inv) = frame(p, q)?;
    let zc = alpha.apply(z);
    let n = z.dim();
    let u = if !zc.time().is_zero() {
        zc.with_coord(0, FieldElem::zero())
    } else {
        let (pc, qc) = (Point::origin(n), Point::unit(n, 1));
        let dp = spatial_linf(&(&zc - &pc));
        let dq = spatial_linf(&(&zc - &qc));
        let delta = dp.min(dq) * FieldElem::frac(1, 2);
        zc.with_coord(0, delta)
    };
    Ok(inv.apply(&u))
}

/// `u` with `u σ z`, `u σ̄ p`, `u σ̄ q` for a timelike pair `p, q`.
pub fn witness_psi_st_inner(z: &Point, p: &Point, q: &Point) -> Result<Point, WitnessError> {
    expect_kind(p, q, RelSet::TAU, "timelike")?;
    if z == p || z == q {
        return Err(WitnessError::DegenerateZ);
    }
    let (alpha, inv) = frame(p, q)?;
    let zc = alpha.apply(z);
    let n = z.dim();
    let on_axis = zc.spatial().iter().all(FieldElem::is_zero);
    let u = if !on_axis {
        Point::origin(n).with_coord(0, zc.time().clone())
    } else {
        let t = zc.time();
        let delta = t.abs().min((t - &FieldElem::one()).abs()) * FieldElem::frac(1, 2);
        zc.with_coord(1, delta)
    };
    Ok(inv.apply(&u))
}

/// Points in the timelike cone of `z`, scaled to the pair `p, q`.
pub(super) fn psi_ts_cone_samples(p: &Point, q: &Point, z: &Point, rng: &mut TrialRng, samples: usize) -> Vec<Point> {
    let scale = linf(&(q - p));
    (0..samples)
        .map(|_| z + &sampling::timelike_offset(rng, p.dim(), 4, 4).scale(&scale))
        .collect()
}

/// Midpoint `z` of a timelike or lightlike pair, after checking `samples`
/// points `u τ z` all satisfy `u τ p ∨ u τ q`.
pub fn refuter_psi_ts(
    p: &Point,
    q: &Point,
    rng: &mut TrialRng,
    samples: usize,
) -> Result<Point, WitnessError> {
    expect_kind(p, q, RelSet::TAU | RelSet::LAM, "timelike or lightlike")?;
    let z = p.midpoint(q);
    for u in psi_ts_cone_samples(p, q, &z, rng, samples) {
        if rel(&u, p) != RelKind::Timelike && rel(&u, q) != RelKind::Timelike {
            return Err(WitnessError::SampledCounterexample(assignment([
                ("x", p.clone()),
                ("y", q.clone()),
                ("z", z),
                ("u", u),
            ])));
        }
    }
    Ok(z)
}

/// Points in the causal cones of both `p` and `q`: two far vertical
/// points over `z` and rejection-sampled causal offsets.
pub(super) fn psi_st_cone_samples(p: &Point, q: &Point, z: &Point, rng: &mut TrialRng, samples: usize) -> Vec<Point> {
    let n = p.dim();
    let scale = linf(&(q - p));
    let far = (&scale * &FieldElem::int(2)) + FieldElem::one();
    let mut out = vec![z.with_coord(0, z.time() + &far), z.with_coord(0, z.time() - &far)];
    let mut attempts = 0;
    while out.len() < samples + 2 && attempts < 40 * samples {
        attempts += 1;
        let base = if rng.gen::<bool>() { p } else { q };
        let kind = if rng.gen_range(0..4) == 0 { RelKind::Lightlike } else { RelKind::Timelike };
        let u = base + &sampling::offset_of_kind(rng, kind, n, 4, 4).scale(&scale);
        if rel(&u, p) != RelKind::Spacelike && rel(&u, q) != RelKind::Spacelike {
            out.push(u);
        }
    }
    out
}

/// Midpoint `z` of a spacelike or lightlike pair, after checking sampled
/// points `u` in both causal cones all satisfy `u σ̄ z`.
pub fn refuter_psi_st(
    p: &Point,
    q: &Point,
    rng: &mut TrialRng,
    samples: usize,
) -> Result<Point, WitnessError> {
    expect_kind(p, q, RelSet::SIG | RelSet::LAM, "spacelike or lightlike")?;
    let z = p.midpoint(q);
    for u in psi_st_cone_samples(p, q, &z, rng, samples) {
        if rel(&u, &z) == RelKind::Spacelike {
            return Err(WitnessError::SampledCounterexample(assignment([
                ("x", p.clone()),
                ("y", q.clone()),
                ("z", z),
                ("u", u),
            ])));
        }
    }
    Ok(z)
}

/// `z` with `p λ z` and `q λ̄ z` for a spacelike pair; needs `n ≥ 3`.
pub fn witness_psi_ls(p: &Point, q: &Point) -> Result<Point, WitnessError> {
    if p.dim() < 3 {
        return Err(WitnessError::WrongDimension { need: ">= 3", got: p.dim() });
    }
    expect_kind(p, q, RelSet::SIG, "spacelike")?;
    let (_, inv) = frame(p, q)?;
    Ok(inv.apply(&template(p.dim(), &[(1, 1), (0, 1), (1, 1)])))
}

/// For a timelike pair and `z λ p`, `z λ̄ q`: the point `u` on the line
/// `pz` lightlike to `p`, `q` and `z`.
pub fn refuter_psi_ls(p: &Point, q: &Point, z: &Point) -> Result<Point, WitnessError> {
    expect_kind(p, q, RelSet::TAU, "timelike")?;
    if rel(z, p) != RelKind::Lightlike || rel(z, q) == RelKind::Lightlike {
        return Err(WitnessError::Precondition("need z λ p and z λ̄ q".into()));
    }
    let d1 = z - p;
    let d2 = q - p;
    let b = minkowski_dot(&d1, &d2) * FieldElem::int(2);
    let s = quad_form(&d2)
        .checked_div(&b)
        .map_err(|_| WitnessError::NoConstruction("lightlike and timelike directions are orthogonal".into()))?;
    let u = p + &d1.scale(&s);
    for other in [p, q, z] {
        if rel(&u, other) != RelKind::Lightlike {
            return Err(WitnessError::NoConstruction(format!("intersection point {u} is not lightlike to {other}")));
        }
    }
    Ok(u)
}

/// What [`witness_wsl`] found for a pair `u, v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WslWitness {
    Zu(Point),
    Zv(Point),
    /// Both points on the segment `pq`, so `u σ̄ v`.
    NonSpacelikeUV,
}

/// A point `z` of one of the horizontal slices through `p, q` (canonical
/// frame) with `z σ̄ u`, `z σ p`, `z σ q`.
fn wsl_point(u: &Point) -> Option<Point> {
    let n = u.dim();
    let (p, q) = (Point::origin(n), &Point::unit(n, 0) + &Point::unit(n, 1));
    // (slice time, centre of the ball z must avoid)
    let slices = [(FieldElem::zero(), Point::unit(n, 1)), (FieldElem::one(), Point::origin(n))];
    for (t, centre) in slices {
        let radius = (u.time() - &t).abs();
        let us: Vec<FieldElem> = u.spatial().to_vec();
        let g: Vec<FieldElem> = us.iter().zip(centre.spatial()).map(|(a, c)| a - c).collect();
        let g2 = g.iter().fold(FieldElem::zero(), |acc, x| acc + x * x);
        let dirs: Vec<(Vec<FieldElem>, FieldElem)> = if g2.is_zero() {
            let mut e = vec![FieldElem::zero(); n - 1];
            e[0] = FieldElem::one();
            vec![(e, FieldElem::one())]
        } else {
            [8u32, 16, 32, 64, 128, 256]
                .into_iter()
                .map(|bits| {
                    let hi = rational_sqrt_bounds(&g2.upper_bound(bits), bits).1;
                    (g.clone(), FieldElem::rational(hi))
                })
                .collect()
        };
        for (dir, bound) in dirs {
            let k = radius.checked_div(&bound).ok()?;
            let coords: Vec<FieldElem> = std::iter::once(t.clone())
                .chain(us.iter().zip(&dir).map(|(a, d)| a + &(&k * d)))
                .collect();
            let z = Point::new(coords).ok()?;
            if rel(&z, u) != RelKind::Spacelike
                && rel(&z, &p) == RelKind::Spacelike
                && rel(&z, &q) == RelKind::Spacelike
            {
                return Some(z);
            }
        }
    }
    None
}

/// For a lightlike pair `p, q` and any `u, v`: a witness for the body of
/// `W_{σ→λ}`.
pub fn witness_wsl(p: &Point, q: &Point, u: &Point, v: &Point) -> Result<WslWitness, WitnessError> {
    expect_kind(p, q, RelSet::LAM, "lightlike")?;
    let (alpha, inv) = frame(p, q)?;
    if let Some(z) = wsl_point(&alpha.apply(u)) {
        return Ok(WslWitness::Zu(inv.apply(&z)));
    }
    if let Some(z) = wsl_point(&alpha.apply(v)) {
        return Ok(WslWitness::Zv(inv.apply(&z)));
    }
    if rel(u, v) != RelKind::Spacelike {
        return Ok(WslWitness::NonSpacelikeUV);
    }
    Err(WitnessError::NoConstruction(format!("no slice point for u = {u} or v = {v}")))
}

/// Spacelike `u, v`, both lightlike to the timelike pair `p, q`.
pub fn refuter_wsl(p: &Point, q: &Point) -> Result<(Point, Point), WitnessError> {
    expect_kind(p, q, RelSet::TAU, "timelike")?;
    let (_, inv) = frame(p, q)?;
    let n = p.dim();
    let u = inv.apply(&template(n, &[(1, 2), (1, 2)]));
    let v = inv.apply(&template(n, &[(1, 2), (-1, 2)]));
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{builtin, FormulaName};

    fn matrix_holds(name: FormulaName, a: &Assignment) -> bool {
        let f = builtin(name).formula;
        f.existential_prefix().1.eval_qf(a).unwrap()
    }

    #[test]
    fn ets_template_on_canonical_pair() {
        let a = witness_ets(&Point::ints(&[0, 0]), &Point::ints(&[0, 1])).unwrap();
        assert_eq!(a["r"], Point::fracs(&[(3, 4), (1, 2)]));
        assert!(matrix_holds(FormulaName::Ets, &a));
        let b = witness_ets(&Point::ints(&[0, 0]), &Point::ints(&[0, 3])).unwrap();
        assert!(matrix_holds(FormulaName::Ets, &b));
        assert!(matches!(
            witness_ets(&Point::ints(&[0, 0]), &Point::ints(&[1, 0])),
            Err(WitnessError::WrongRelation { got: RelKind::Timelike, .. })
        ));
    }

    #[test]
    fn ets_hat_template() {
        let a = witness_ets_hat(&Point::ints(&[0, 0]), &Point::ints(&[0, 1])).unwrap();
        assert!(matrix_holds(FormulaName::EtsHat, &a));
        let b = witness_ets_hat(&Point::ints(&[5, 5]), &Point::ints(&[5, 6])).unwrap();
        assert!(matrix_holds(FormulaName::EtsHat, &b));
        assert!(witness_ets_hat(&Point::ints(&[0, 0]), &Point::ints(&[2, 0])).is_err());
    }

    #[test]
    fn psi_ts_inner_cases() {
        let (p, q) = (Point::ints(&[0, 0, 0]), Point::ints(&[0, 1, 0]));
        let z = Point::ints(&[1, 5, 0]);
        let u = witness_psi_ts_inner(&z, &p, &q).unwrap();
        assert_eq!(u, Point::ints(&[0, 5, 0]));
        let (p2, q2) = (Point::ints(&[0, 0]), Point::ints(&[0, 1]));
        let z2 = Point::fracs(&[(0, 1), (1, 2)]);
        let u2 = witness_psi_ts_inner(&z2, &p2, &q2).unwrap();
        assert_eq!(rel(&u2, &z2), RelKind::Timelike);
        assert_eq!(rel(&u2, &p2), RelKind::Spacelike);
        assert_eq!(rel(&u2, &q2), RelKind::Spacelike);
        assert_eq!(witness_psi_ts_inner(&p2, &p2, &q2), Err(WitnessError::DegenerateZ));
    }

    #[test]
    fn psi_st_inner_cases() {
        let (p, q) = (Point::ints(&[0, 0, 0]), Point::ints(&[1, 0, 0]));
        let z = Point::ints(&[5, 1, 0]);
        let u = witness_psi_st_inner(&z, &p, &q).unwrap();
        assert_eq!(u, Point::ints(&[5, 0, 0]));
        let z2 = Point::fracs(&[(1, 2), (0, 1), (0, 1)]);
        let u2 = witness_psi_st_inner(&z2, &p, &q).unwrap();
        assert_eq!(rel(&u2, &z2), RelKind::Spacelike);
        assert_ne!(rel(&u2, &p), RelKind::Spacelike);
        assert_ne!(rel(&u2, &q), RelKind::Spacelike);
        assert_eq!(witness_psi_st_inner(&q, &p, &q), Err(WitnessError::DegenerateZ));
    }

    #[test]
    fn psi_ts_refuter() {
        let mut rng = sampling::trial_rng(0, "t", 0);
        let z = refuter_psi_ts(&Point::ints(&[0, 0]), &Point::ints(&[2, 0]), &mut rng, 50).unwrap();
        assert_eq!(z, Point::ints(&[1, 0]));
        let u = Point::fracs(&[(3, 1), (1, 2)]);
        assert_eq!(rel(&u, &Point::ints(&[0, 0])), RelKind::Timelike);
        let z = refuter_psi_ts(&Point::ints(&[0, 0]), &Point::ints(&[1, 1]), &mut rng, 50).unwrap();
        assert_eq!(z, Point::fracs(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn psi_st_refuter() {
        let mut rng = sampling::trial_rng(0, "s", 0);
        refuter_psi_st(&Point::ints(&[0, 0, 0]), &Point::ints(&[0, 2, 0]), &mut rng, 50).unwrap();
        refuter_psi_st(&Point::ints(&[0, 0]), &Point::ints(&[1, 1]), &mut rng, 50).unwrap();
    }

    #[test]
    fn psi_ls_witness_and_refuter() {
        let (p, q) = (Point::ints(&[0, 0, 0]), Point::ints(&[0, 1, 0]));
        let z = witness_psi_ls(&p, &q).unwrap();
        assert_eq!(z, Point::ints(&[1, 0, 1]));
        assert_eq!(rel(&p, &z), RelKind::Lightlike);
        assert_eq!(rel(&q, &z), RelKind::Spacelike);
        assert!(matches!(
            witness_psi_ls(&Point::ints(&[0, 0]), &Point::ints(&[0, 1])),
            Err(WitnessError::WrongDimension { .. })
        ));

        let (p, q) = (Point::ints(&[0, 0, 0]), Point::ints(&[2, 0, 0]));
        let u = refuter_psi_ls(&p, &q, &Point::ints(&[2, 2, 0])).unwrap();
        assert_eq!(u, Point::ints(&[1, 1, 0]));
        assert!(matches!(
            refuter_psi_ls(&p, &q, &Point::ints(&[1, 0, 0])),
            Err(WitnessError::Precondition(_))
        ));
    }

    #[test]
    fn wsl_witness_cases() {
        let (p, q) = (Point::ints(&[0, 0, 0]), Point::ints(&[1, 1, 0]));
        let u = Point::ints(&[1, 0, 0]);
        match witness_wsl(&p, &q, &u, &u).unwrap() {
            WslWitness::Zu(z) => {
                assert_ne!(rel(&z, &u), RelKind::Spacelike);
                assert_eq!(rel(&z, &p), RelKind::Spacelike);
                assert_eq!(rel(&z, &q), RelKind::Spacelike);
            }
            other => panic!("unexpected {other:?}"),
        }
        let (u, v) = (Point::fracs(&[(1, 2), (1, 2), (0, 1)]), Point::fracs(&[(3, 4), (3, 4), (0, 1)]));
        assert_eq!(witness_wsl(&p, &q, &u, &v).unwrap(), WslWitness::NonSpacelikeUV);
        let (p2, q2) = (Point::ints(&[0, 0]), Point::ints(&[1, 1]));
        for u in [Point::ints(&[3, -1]), Point::fracs(&[(1, 3), (-2, 3)]), Point::ints(&[0, 5])] {
            assert!(matches!(witness_wsl(&p2, &q2, &u, &u).unwrap(), WslWitness::Zu(_)), "{u}");
        }
    }

    #[test]
    fn wsl_refuter_points() {
        let (u, v) = refuter_wsl(&Point::ints(&[0, 0, 0]), &Point::ints(&[2, 0, 0])).unwrap();
        assert_eq!(u, Point::ints(&[1, 1, 0]));
        assert_eq!(v, Point::ints(&[1, -1, 0]));
        assert_eq!(rel(&u, &v), RelKind::Spacelike);
    }
}

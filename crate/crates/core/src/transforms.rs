//! Relation-preserving affine maps and the special maps used in the
//! constructions: boosts, boost-scale maps, canonical pair reduction, the
//! two-dimensional swap, lifted conjugation, time compression and the
//! hyperbolic inversion.

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldCtx, FieldElem, FieldError};
use crate::minkowski::{quad_form, rel, GeometryError, Point, RelKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("scaling factor is zero")]
    ZeroScale,
    #[error("speed {0} outside (-1, 1)")]
    SpeedOutOfRange(FieldElem),
    #[error("not a square in the current field: {}", list(.0))]
    NotASquare(Vec<FieldElem>),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("rows are not orthonormal")]
    NotOrthonormal,
    #[error("rotation determinant is not 1")]
    WrongDeterminant,
    #[error("matrix is singular")]
    Singular,
    #[error("points are equal")]
    EqualPoints,
    #[error("expected dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("axis {0} is not a spatial axis")]
    BadAxis(usize),
    #[error("{0} lies on the light cone of the origin")]
    OnLightConeOfOrigin(Point),
    #[error("target pair is {0}, not Lightlike")]
    TargetNotLightlike(RelKind),
    #[error("no epsilon found; pair ({0}, {1}) still violated")]
    NoEpsilonFound(usize, usize),
    #[error("iteration cap reached with {0} still on the light cone of the origin")]
    EscapeCap(Point),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn list(xs: &[FieldElem]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// What an affine map does to the four relation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationEffect {
    PreservesAll,
    PreservesLightSwapsTimeSpace,
    PreservesLightOnly,
    Custom,
}

impl RelationEffect {
    /// Effect of `outer ∘ inner`.
    pub fn then(self, outer: RelationEffect) -> RelationEffect {
        use RelationEffect::*;
        match (self, outer) {
            (Custom, _) | (_, Custom) => Custom,
            (PreservesLightOnly, _) | (_, PreservesLightOnly) => PreservesLightOnly,
            (PreservesAll, e) | (e, PreservesAll) => e,
            (PreservesLightSwapsTimeSpace, PreservesLightSwapsTimeSpace) => PreservesAll,
        }
    }

    /// The relation an image pair must have, when the effect determines it.
    pub fn image_kind(self, k: RelKind) -> Option<RelKind> {
        match self {
            RelationEffect::PreservesAll => Some(k),
            RelationEffect::PreservesLightSwapsTimeSpace => Some(k.swap_time_space()),
            RelationEffect::PreservesLightOnly => {
                matches!(k, RelKind::Lightlike | RelKind::Equal).then_some(k)
            }
            RelationEffect::Custom => None,
        }
    }
}

/// `x ↦ Mx + o` with invertible `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineMap {
    matrix: Vec<Vec<FieldElem>>,
    offset: Point,
    effect: RelationEffect,
}

impl AffineMap {
    pub fn new(
        matrix: Vec<Vec<FieldElem>>,
        offset: Point,
        effect: RelationEffect,
    ) -> Result<AffineMap, TransformError> {
        let n = offset.dim();
        if matrix.len() != n {
            return Err(TransformError::WrongDimension {
                expected: n,
                got: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(TransformError::WrongDimension {
                expected: n,
                got: row.len(),
            });
        }
        if determinant(&matrix)?.is_zero() {
            return Err(TransformError::Singular);
        }
        let map = AffineMap {
            matrix,
            offset,
            effect,
        };
        #[cfg(test)]
        if let Err((p, q)) = map.check_effect(0, 6) {
            panic!("declared effect {:?} fails on {p}, {q}", map.effect);
        }
        Ok(map)
    }

    fn linear(matrix: Vec<Vec<FieldElem>>, effect: RelationEffect) -> Result<AffineMap, TransformError> {
        let n = matrix.len();
        AffineMap::new(matrix, Point::origin(n.max(2)), effect)
    }

    pub fn identity(n: usize) -> AffineMap {
        AffineMap {
            matrix: identity_matrix(n),
            offset: Point::origin(n),
            effect: RelationEffect::PreservesAll,
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.dim()
    }

    pub fn matrix(&self) -> &[Vec<FieldElem>] {
        &self.matrix
    }

    pub fn offset(&self) -> &Point {
        &self.offset
    }

    pub fn effect(&self) -> RelationEffect {
        self.effect
    }

    /// Image of `p`; panics on dimension mismatch.
    pub fn apply(&self, p: &Point) -> Point {
        self.try_apply(p).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_apply(&self, p: &Point) -> Result<Point, TransformError> {
        if p.dim() != self.dim() {
            return Err(TransformError::WrongDimension {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        let coords = self
            .matrix
            .iter()
            .zip(self.offset.coords())
            .map(|(row, o)| {
                row.iter()
                    .zip(p.coords())
                    .filter(|(m, _)| !m.is_zero())
                    .try_fold(o.clone(), |acc, (m, x)| acc.checked_add(&m.checked_mul(x)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Point::new(coords)?)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &AffineMap) -> AffineMap {
        assert_eq!(self.dim(), first.dim(), "dimension mismatch");
        let matrix = mat_mul(&self.matrix, &first.matrix);
        let offset = self.apply(&first.offset);
        AffineMap {
            matrix,
            offset,
            effect: first.effect.then(self.effect),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = mat_inverse(&self.matrix).expect("matrix invertible by construction");
        let lin = AffineMap {
            matrix: inv,
            offset: Point::origin(self.dim()),
            effect: self.effect,
        };
        let offset = lin.apply(&self.offset).scale(&FieldElem::int(-1));
        AffineMap { offset, ..lin }
    }

    /// Checks the declared effect on seeded pairs of every kind; returns a
    /// violating pair if one is found.
    pub fn check_effect(&self, seed: u64, samples: usize) -> Result<(), (Point, Point)> {
        use crate::sampling::{offset_of_kind, point, trial_rng};
        let n = self.dim();
        for i in 0..samples {
            let mut rng = trial_rng(seed, "effect-check", i as u64);
            let p = point(&mut rng, n, 3, 4);
            for kind in RelKind::ALL {
                let q = &p + &offset_of_kind(&mut rng, kind, n, 3, 4);
                let (fp, fq) = (self.apply(&p), self.apply(&q));
                let got = rel(&fp, &fq);
                let ok = match self.effect.image_kind(kind) {
                    Some(want) => got == want,
                    None => {
                        self.effect != RelationEffect::PreservesLightOnly
                            || !matches!(got, RelKind::Lightlike | RelKind::Equal)
                    }
                };
                if !ok {
                    return Err((p, q));
                }
            }
        }
        Ok(())
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<FieldElem>> {
    (0..n)
        .map(|i| (0..n).map(|j| FieldElem::int((i == j) as i64)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<FieldElem>], b: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .fold(FieldElem::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

fn determinant(m: &[Vec<FieldElem>]) -> Result<FieldElem, FieldError> {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = FieldElem::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(FieldElem::zero());
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det = det.checked_mul(&a[c][c])?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].checked_div(&a[c][c])?;
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] = a[r][k].checked_sub(&sub)?;
            }
        }
    }
    Ok(det)
}

fn mat_inverse(m: &[Vec<FieldElem>]) -> Result<Vec<Vec<FieldElem>>, TransformError> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv = identity_matrix(n);
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or(TransformError::Singular)?;
        a.swap(piv, c);
        inv.swap(piv, c);
        let d = a[c][c].inv()?;
        for k in 0..n {
            a[c][k] = &a[c][k] * &d;
            inv[c][k] = &inv[c][k] * &d;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                a[r][k] = &a[r][k] - &(&f * &a[c][k]);
                inv[r][k] = &inv[r][k] - &(&f * &inv[c][k]);
            }
        }
    }
    Ok(inv)
}

fn diag(entries: Vec<FieldElem>) -> Vec<Vec<FieldElem>> {
    let n = entries.len();
    let mut m = identity_matrix(n);
    for (i, e) in entries.into_iter().enumerate() {
        m[i][i] = e;
    }
    m
}

pub fn translation(v: &Point) -> AffineMap {
    AffineMap {
        matrix: identity_matrix(v.dim()),
        offset: v.clone(),
        effect: RelationEffect::PreservesAll,
    }
}

/// Uniform scaling by `c ≠ 0`; either sign preserves every relation.
pub fn scaling(n: usize, c: &FieldElem) -> Result<AffineMap, TransformError> {
    if c.is_zero() {
        return Err(TransformError::ZeroScale);
    }
    AffineMap::linear(diag(vec![c.clone(); n]), RelationEffect::PreservesAll)
}

/// `(p₀, p₁, …) ↦ (−p₀, p₁, …)`.
pub fn time_reversal(n: usize) -> AffineMap {
    let mut d = vec![FieldElem::one(); n];
    d[0] = FieldElem::int(-1);
    AffineMap::linear(diag(d), RelationEffect::PreservesAll).expect("invertible")
}

/// Lorentz boost with speed `v` along spatial axis `axis`.
pub fn boost(n: usize, axis: usize, v: &FieldElem) -> Result<AffineMap, TransformError> {
    if axis == 0 || axis >= n {
        return Err(TransformError::BadAxis(axis));
    }
    let rad = FieldElem::one() - v * v;
    if rad.sign() <= 0 {
        return Err(TransformError::SpeedOutOfRange(v.clone()));
    }
    let s = rad
        .sqrt_exact()
        .map_err(|_| TransformError::NotASquare(vec![rad.clone()]))?;
    let g = s.inv()?;
    let gv = -(v * &g);
    let mut m = identity_matrix(n);
    m[0][0] = g.clone();
    m[axis][axis] = g;
    m[0][axis] = gv.clone();
    m[axis][0] = gv;
    AffineMap::linear(m, RelationEffect::PreservesAll)
}

/// Block map fixing time with the given exact orthonormal spatial rows.
pub fn rotation_from_orthonormal(rows: &[Vec<FieldElem>]) -> Result<AffineMap, TransformError> {
    let k = rows.len();
    if k == 0 || rows.iter().any(|r| r.len() != k) {
        return Err(TransformError::NotOrthonormal);
    }
    for i in 0..k {
        for j in 0..k {
            let dot = rows[i]
                .iter()
                .zip(&rows[j])
                .fold(FieldElem::zero(), |acc, (a, b)| acc + a * b);
            if dot != FieldElem::int((i == j) as i64) {
                return Err(TransformError::NotOrthonormal);
            }
        }
    }
    if determinant(rows)? != FieldElem::one() {
        return Err(TransformError::WrongDeterminant);
    }
    let n = k + 1;
    let mut m = identity_matrix(n);
    for i in 0..k {
        for j in 0..k {
            m[i + 1][j + 1] = rows[i][j].clone();
        }
    }
    AffineMap::linear(m, RelationEffect::PreservesAll)
}

fn boost_scale(
    n: usize,
    t: &FieldElem,
    x: &FieldElem,
    timelike: bool,
) -> Result<AffineMap, TransformError> {
    let s2 = if timelike { t * t - x * x } else { x * x - t * t };
    let block_scale = s2.inv()?;
    let (diag_entry, off) = if timelike { (t, x) } else { (x, t) };
    let mut m = identity_matrix(n);
    m[0][0] = diag_entry * &block_scale;
    m[1][1] = diag_entry * &block_scale;
    m[0][1] = -(off * &block_scale);
    m[1][0] = -(off * &block_scale);
    if n > 2 {
        let s = s2
            .sqrt_exact()
            .map_err(|_| TransformError::NotASquare(vec![s2.clone()]))?;
        let r = s.inv()?;
        for (i, row) in m.iter_mut().enumerate().skip(2) {
            row[i] = r.clone();
        }
    }
    AffineMap::linear(m, RelationEffect::PreservesAll)
}

/// Boost plus scaling sending `(t, x, 0, …)` to `(1, 0, …)`; needs `t > x ≥ 0`.
pub fn boost_scale_tau(n: usize, t: &FieldElem, x: &FieldElem) -> Result<AffineMap, TransformError> {
    if !(t > x && x.sign() >= 0) {
        return Err(TransformError::WrongRegime(format!("need t > x >= 0, got t={t}, x={x}")));
    }
    boost_scale(n, t, x, true)
}

/// Boost plus scaling sending `(t, x, 0, …)` to `(0, 1, 0, …)`; needs `0 ≤ t < x`.
pub fn boost_scale_sigma(n: usize, t: &FieldElem, x: &FieldElem) -> Result<AffineMap, TransformError> {
    if !(t < x && t.sign() >= 0) {
        return Err(TransformError::WrongRegime(format!("need 0 <= t < x, got t={t}, x={x}")));
    }
    boost_scale(n, t, x, false)
}

/// The canonical pair of a relation kind.
pub fn canonical_pair(kind: RelKind, n: usize) -> (Point, Point) {
    let o = Point::origin(n);
    let q = match kind {
        RelKind::Equal => o.clone(),
        RelKind::Timelike => Point::unit(n, 0),
        RelKind::Lightlike => &Point::unit(n, 0) + &Point::unit(n, 1),
        RelKind::Spacelike => Point::unit(n, 1),
    };
    (o, q)
}

/// A relation-preserving map sending `(p, q)` to the canonical pair of its
/// kind, together with that kind. For `n = 2` no square roots are needed;
/// otherwise every blocking radicand is reported at once.
pub fn canonicalize_pair(p: &Point, q: &Point) -> Result<(AffineMap, RelKind), TransformError> {
    let kind = crate::minkowski::relate(p, q)?;
    if kind == RelKind::Equal {
        return Err(TransformError::EqualPoints);
    }
    let n = p.dim();
    let mut map = translation(&p.scale(&FieldElem::int(-1)));
    let w = map.apply(q);
    if w.time().is_negative() {
        map = time_reversal(n).compose(&map);
    }

    let spatial_norm2 = w.spatial().iter().fold(FieldElem::zero(), |acc, x| acc + x * x);
    let form = quad_form(&w).abs();
    let needs_rotation = n > 2 && w.spatial()[1..].iter().any(|x| !x.is_zero());
    let needs_boost = n > 2
        && match kind {
            RelKind::Timelike => !spatial_norm2.is_zero(),
            RelKind::Spacelike => !w.time().is_zero(),
            _ => false,
        };
    let mut blocked = Vec::new();
    let norm = if needs_rotation {
        spatial_norm2.sqrt_exact().map_err(|_| blocked.push(spatial_norm2.clone())).ok()
    } else {
        None
    };
    if needs_boost && form.sqrt_exact().is_err() {
        blocked.push(form.clone());
    }
    if !blocked.is_empty() {
        return Err(TransformError::NotASquare(blocked));
    }

    if let Some(r) = norm {
        map = householder_to_axis(&map.apply(q), &r)?.compose(&map);
    } else if n == 2 && map.apply(q).coord(1).is_negative() {
        map = time_reversal(n).compose(&scaling(n, &FieldElem::int(-1))?.compose(&map));
    } else if n > 2 && map.apply(q).coord(1).is_negative() {
        map = axis_flip_pair(n).compose(&map);
    }

    let w = map.apply(q);
    let (t, x) = (w.coord(0).clone(), w.coord(1).clone());
    let last = match kind {
        RelKind::Timelike if x.is_zero() => scaling(n, &t.inv()?)?,
        RelKind::Timelike => boost_scale_tau(n, &t, &x)?,
        RelKind::Lightlike => scaling(n, &t.inv()?)?,
        RelKind::Spacelike if t.is_zero() => scaling(n, &x.inv()?)?,
        RelKind::Spacelike => boost_scale_sigma(n, &t, &x)?,
        RelKind::Equal => unreachable!(),
    };
    Ok((last.compose(&map), kind))
}

/// Negates spatial axes 1 and 2: a rotation by π.
fn axis_flip_pair(n: usize) -> AffineMap {
    let mut d = vec![FieldElem::one(); n];
    d[1] = FieldElem::int(-1);
    d[2] = FieldElem::int(-1);
    AffineMap::linear(diag(d), RelationEffect::PreservesAll).expect("invertible")
}

/// A determinant-one spatial map sending the spatial part of `w` to `(r, 0, …)`.
fn householder_to_axis(w: &Point, r: &FieldElem) -> Result<AffineMap, TransformError> {
    let ws = w.spatial();
    let k = ws.len();
    let mut u: Vec<FieldElem> = ws.to_vec();
    u[0] = &u[0] - r;
    let uu = u.iter().fold(FieldElem::zero(), |acc, x| acc + x * x);
    let two_over = FieldElem::int(2).checked_div(&uu)?;
    let mut rows: Vec<Vec<FieldElem>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| FieldElem::int((i == j) as i64) - &two_over * &u[i] * &u[j])
                .collect()
        })
        .collect();
    for x in rows[k - 1].iter_mut() {
        *x = -x.clone();
    }
    rotation_from_orthonormal(&rows)
}

/// `(t, x) ↦ (x, t)` in two dimensions.
pub fn swap_tx(n: usize) -> Result<AffineMap, TransformError> {
    if n != 2 {
        return Err(TransformError::WrongDimension { expected: 2, got: n });
    }
    let m = vec![
        vec![FieldElem::zero(), FieldElem::one()],
        vec![FieldElem::one(), FieldElem::zero()],
    ];
    AffineMap::linear(m, RelationEffect::PreservesLightSwapsTimeSpace)
}

/// Non-affine or non-total maps, evaluated only on their domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialMap {
    /// Coordinatewise `a + b√d ↦ a − b√d`.
    LiftedConjugation(FieldCtx),
    /// `r ↦ r / Q(r)` off the light cone of the origin.
    HyperbolicInversion,
}

impl PartialMap {
    pub fn in_domain(&self, p: &Point) -> bool {
        match self {
            PartialMap::LiftedConjugation(ctx) => matches!(ctx.join(&p.ctx()), Ok(c) if &c == ctx),
            PartialMap::HyperbolicInversion => !quad_form(p).is_zero(),
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point, TransformError> {
        match self {
            PartialMap::LiftedConjugation(ctx) => {
                Ok(p.map_coords(|c| c.in_ctx(ctx).and_then(|c| c.conjugate()))?)
            }
            PartialMap::HyperbolicInversion => hyperbolic_inversion(p),
        }
    }
}

pub fn lifted_conjugation(ctx: &FieldCtx) -> Result<PartialMap, TransformError> {
    if ctx.is_rational() {
        return Err(FieldError::ContextMismatch("conjugation needs a quadratic context".into()).into());
    }
    Ok(PartialMap::LiftedConjugation(ctx.clone()))
}

/// `h(r) = r / Q(r)`.
pub fn hyperbolic_inversion(p: &Point) -> Result<Point, TransformError> {
    let q = quad_form(p);
    if q.is_zero() {
        return Err(TransformError::OnLightConeOfOrigin(p.clone()));
    }
    Ok(p.scale(&q.inv()?))
}

fn scale_time(points: &[Point], factor: &FieldElem) -> Vec<Point> {
    points
        .iter()
        .map(|p| p.with_coord(0, p.time() * factor))
        .collect()
}

fn check_target(points: &[Point], target: (usize, usize)) -> Result<(), TransformError> {
    let k = rel(&points[target.0], &points[target.1]);
    if k != RelKind::Lightlike {
        return Err(TransformError::TargetNotLightlike(k));
    }
    Ok(())
}

/// Searches `ε` by halving from 1/2 (at most 64 steps) until `preserved`
/// accepts every pair of the images under `(r₀, …) ↦ (factor(ε)·r₀, …)`.
fn halving_search(
    points: &[Point],
    target: (usize, usize),
    factor: impl Fn(&FieldElem) -> FieldElem,
    preserved: impl Fn(RelKind, RelKind) -> bool,
    want_target: RelKind,
) -> Result<(FieldElem, Vec<Point>), TransformError> {
    check_target(points, target)?;
    let mut eps = FieldElem::frac(1, 2);
    let mut last_bad = target;
    for _ in 0..64 {
        let images = scale_time(points, &factor(&eps));
        let bad = (0..points.len())
            .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let before = rel(&points[i], &points[j]);
                let after = rel(&images[i], &images[j]);
                if (i, j) == target || (j, i) == target {
                    after != want_target
                } else {
                    !preserved(before, after)
                }
            });
        match bad {
            None => return Ok((eps, images)),
            Some(pair) => last_bad = pair,
        }
        eps = &eps * &FieldElem::frac(1, 2);
    }
    Err(TransformError::NoEpsilonFound(last_bad.0, last_bad.1))
}

/// `T_ε: (r₀, r₁, …) ↦ ((1−ε)r₀, r₁, …)` keeping τ, τ̄ and distinctness of
/// every listed pair while the lightlike target pair becomes spacelike.
pub fn time_compress(
    points: &[Point],
    target: (usize, usize),
) -> Result<(FieldElem, Vec<Point>), TransformError> {
    halving_search(
        points,
        target,
        |e| FieldElem::one() - e,
        |before, after| {
            (before == RelKind::Timelike) == (after == RelKind::Timelike)
                && (before == RelKind::Equal) == (after == RelKind::Equal)
        },
        RelKind::Spacelike,
    )
}

/// `(r₀, r₁, …) ↦ ((1+ε)r₀, r₁, …)`: the σ counterpart of [`time_compress`],
/// keeping σ, σ̄ and distinctness while the lightlike target becomes timelike.
pub fn time_stretch(
    points: &[Point],
    target: (usize, usize),
) -> Result<(FieldElem, Vec<Point>), TransformError> {
    halving_search(
        points,
        target,
        |e| FieldElem::one() + e,
        |before, after| {
            (before == RelKind::Spacelike) == (after == RelKind::Spacelike)
                && (before == RelKind::Equal) == (after == RelKind::Equal)
        },
        RelKind::Timelike,
    )
}

/// Which fixed point the escape map keeps in place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EscapeRegime {
    /// `(z₀, z₁, z₂, …) ↦ (2z₀, 2z₁ − 1, 2z₂, …)`, fixing `(0, 1, 0, …)`.
    TimelikePair,
    /// `(z₀, z₁, …) ↦ (2z₀ − 1, 2z₁, …)`, fixing `(1, 0, …)`.
    SpacelikePair,
}

impl EscapeRegime {
    pub fn fixed_point(self, n: usize) -> Point {
        match self {
            EscapeRegime::TimelikePair => Point::unit(n, 1),
            EscapeRegime::SpacelikePair => Point::unit(n, 0),
        }
    }

    pub fn step(self, n: usize) -> AffineMap {
        let f = self.fixed_point(n);
        let doubling = scaling(n, &FieldElem::int(2)).expect("nonzero");
        translation(&f.scale(&FieldElem::int(-1))).compose(&doubling)
    }
}

/// Repeats the regime's escape map until no point lies on the light cone
/// of the origin (at most 64 rounds).
pub fn escape_iteration(points: &[Point], regime: EscapeRegime) -> Result<Vec<Point>, TransformError> {
    let Some(n) = points.first().map(Point::dim) else {
        return Ok(Vec::new());
    };
    let step = regime.step(n);
    let mut cur = points.to_vec();
    for _ in 0..64 {
        match cur.iter().find(|p| quad_form(p).is_zero()) {
            None => return Ok(cur),
            Some(_) => cur = cur.iter().map(|p| step.apply(p)).collect(),
        }
    }
    let stuck = cur.into_iter().find(|p| quad_form(p).is_zero()).expect("loop exit");
    Err(TransformError::EscapeCap(stuck))
}

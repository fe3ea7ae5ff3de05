//! Points of ℚⁿ, the Minkowski form, and the relations τ, λ, σ, =.

use std::fmt;
use std::ops::{Add, BitAnd, BitOr, Not, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactfield::{FieldCtx, FieldElem, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a point needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse point {0:?}")]
    Parse(String),
}

/// A point of ℚⁿ; coordinate 0 is time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<FieldElem>,
}

impl Point {
    pub fn new(coords: Vec<FieldElem>) -> Result<Point, GeometryError> {
        if coords.len() < 2 {
            return Err(GeometryError::TooFewCoordinates(coords.len()));
        }
        let ctx = coords
            .iter()
            .try_fold(FieldCtx::Rationals, |acc, c| acc.join(c.ctx()))?;
        let coords = if ctx.is_rational() {
            coords
        } else {
            coords
                .into_iter()
                .map(|c| c.in_ctx(&ctx))
                .collect::<Result<_, _>>()?
        };
        Ok(Point { coords })
    }

    /// Integer point; panics on fewer than two coordinates.
    pub fn ints(cs: &[i64]) -> Point {
        Point::new(cs.iter().map(|&c| FieldElem::int(c)).collect()).expect("integer point")
    }

    /// Point from `(numerator, denominator)` pairs; panics on fewer than two coordinates.
    pub fn fracs(cs: &[(i64, i64)]) -> Point {
        Point::new(cs.iter().map(|&(n, d)| FieldElem::frac(n, d)).collect()).expect("rational point")
    }

    pub fn origin(n: usize) -> Point {
        Point::ints(&vec![0; n])
    }

    /// The point with 1 in `axis` and 0 elsewhere.
    pub fn unit(n: usize, axis: usize) -> Point {
        let mut cs = vec![0; n];
        cs[axis] = 1;
        Point::ints(&cs)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &FieldElem {
        &self.coords[i]
    }

    pub fn time(&self) -> &FieldElem {
        &self.coords[0]
    }

    pub fn spatial(&self) -> &[FieldElem] {
        &self.coords[1..]
    }

    pub fn ctx(&self) -> FieldCtx {
        self.coords
            .iter()
            .find(|c| !c.ctx().is_rational())
            .map(|c| c.ctx().clone())
            .unwrap_or_default()
    }

    pub fn with_coord(&self, i: usize, v: FieldElem) -> Point {
        let mut coords = self.coords.clone();
        coords[i] = v;
        Point::new(coords).expect("compatible coordinate")
    }

    /// Pads with zero coordinates up to dimension `n`.
    pub fn padded(&self, n: usize) -> Point {
        let mut coords = self.coords.clone();
        coords.resize(n.max(self.dim()), FieldElem::zero());
        Point { coords }
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point, GeometryError> {
        same_dim(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Point { coords })
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point, GeometryError> {
        same_dim(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Point { coords })
    }

    pub fn scale(&self, c: &FieldElem) -> Point {
        Point {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        (self + other).scale(&FieldElem::frac(1, 2))
    }

    /// Applies `f` to every coordinate.
    pub fn map_coords<E>(
        &self,
        f: impl FnMut(&FieldElem) -> Result<FieldElem, E>,
    ) -> Result<Point, E> {
        Ok(Point {
            coords: self.coords.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Parses `(e0, e1, ...)` with field literals of `ctx`.
    pub fn parse(text: &str, ctx: &FieldCtx) -> Result<Point, GeometryError> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GeometryError::Parse(text.to_string()))?;
        let coords = inner
            .split(',')
            .map(|c| FieldElem::parse(c, ctx))
            .collect::<Result<Vec<_>, _>>()?;
        Point::new(coords)
    }
}

fn same_dim(p: &Point, q: &Point) -> Result<(), GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add<&Point> for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&Point> for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Q(v) = v₀² − Σ vᵢ² for a difference vector.
pub fn quad_form(v: &Point) -> FieldElem {
    minkowski_dot(v, v)
}

/// B(a, b) = a₀b₀ − Σ aᵢbᵢ; panics on dimension mismatch.
pub fn minkowski_dot(a: &Point, b: &Point) -> FieldElem {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    let mut acc = a.time() * b.time();
    for (x, y) in a.spatial().iter().zip(b.spatial()) {
        acc = acc - x * y;
    }
    acc
}

/// (p₀−q₀)² − Σ (pᵢ−qᵢ)².
pub fn mink_form(p: &Point, q: &Point) -> Result<FieldElem, GeometryError> {
    Ok(quad_form(&p.checked_sub(q)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelKind {
    Equal,
    Timelike,
    Lightlike,
    Spacelike,
}

impl RelKind {
    pub const ALL: [RelKind; 4] = [
        RelKind::Equal,
        RelKind::Timelike,
        RelKind::Lightlike,
        RelKind::Spacelike,
    ];

    /// The three relations between distinct points.
    pub const DISTINCT: [RelKind; 3] = [RelKind::Timelike, RelKind::Lightlike, RelKind::Spacelike];

    pub fn bit(self) -> u8 {
        match self {
            RelKind::Equal => 1,
            RelKind::Timelike => 2,
            RelKind::Lightlike => 4,
            RelKind::Spacelike => 8,
        }
    }

    pub fn letter(self) -> char {
        match self {
            RelKind::Equal => 'E',
            RelKind::Timelike => 'T',
            RelKind::Lightlike => 'L',
            RelKind::Spacelike => 'S',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelKind::Equal => "Equal",
            RelKind::Timelike => "Timelike",
            RelKind::Lightlike => "Lightlike",
            RelKind::Spacelike => "Spacelike",
        }
    }

    /// τ ↔ σ, fixing λ and =.
    pub fn swap_time_space(self) -> RelKind {
        match self {
            RelKind::Timelike => RelKind::Spacelike,
            RelKind::Spacelike => RelKind::Timelike,
            k => k,
        }
    }
}

impl fmt::Display for RelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for RelKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The relation between two points; `DimensionMismatch` on differing dimensions.
pub fn relate(p: &Point, q: &Point) -> Result<RelKind, GeometryError> {
    let diff = p.checked_sub(q)?;
    if diff.coords().iter().all(FieldElem::is_zero) {
        return Ok(RelKind::Equal);
    }
    Ok(match quad_form(&diff).sign() {
        1 => RelKind::Timelike,
        0 => RelKind::Lightlike,
        _ => RelKind::Spacelike,
    })
}

/// [`relate`] for points already known to share a dimension; panics otherwise.
pub fn rel(p: &Point, q: &Point) -> RelKind {
    relate(p, q).unwrap_or_else(|e| panic!("{e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FutureMode {
    Timelike,
    Causal,
}

/// `p` lies in the timelike (or causal) future of `q`.
pub fn in_future_of(p: &Point, q: &Point, mode: FutureMode) -> Result<bool, GeometryError> {
    let k = relate(p, q)?;
    let later = p.time().cmp(q.time());
    Ok(match mode {
        FutureMode::Timelike => k == RelKind::Timelike && later.is_gt(),
        FutureMode::Causal => k != RelKind::Spacelike && later.is_ge(),
    })
}

/// `p` lies in the timelike (or causal) past of `q`.
pub fn in_past_of(p: &Point, q: &Point, mode: FutureMode) -> Result<bool, GeometryError> {
    in_future_of(q, p, mode)
}

/// Λ_apex: lightlike related to the apex, or the apex itself.
pub fn on_light_cone(p: &Point, apex: &Point) -> Result<bool, GeometryError> {
    Ok(matches!(relate(p, apex)?, RelKind::Lightlike | RelKind::Equal))
}

/// C_apex: everything but the points spacelike to the apex.
pub fn in_causal_cone(p: &Point, apex: &Point) -> Result<bool, GeometryError> {
    Ok(relate(p, apex)? != RelKind::Spacelike)
}

/// A subset of {=, τ, λ, σ} as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RelSet(u8);

impl RelSet {
    pub const EMPTY: RelSet = RelSet(0);
    pub const EQ: RelSet = RelSet(1);
    pub const TAU: RelSet = RelSet(2);
    pub const LAM: RelSet = RelSet(4);
    pub const SIG: RelSet = RelSet(8);
    pub const FULL: RelSet = RelSet(15);
    pub const NE: RelSet = RelSet(14);

    pub fn from_bits(bits: u8) -> RelSet {
        RelSet(bits & 15)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(kind: RelKind) -> RelSet {
        RelSet(kind.bit())
    }

    pub fn contains(self, kind: RelKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn is_subset(self, other: RelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The relation minus equality, e.g. τ̄ ↦ τ̄_≠.
    pub fn without_eq(self) -> RelSet {
        RelSet(self.0 & 14)
    }

    pub fn kinds(self) -> impl Iterator<Item = RelKind> {
        RelKind::ALL.into_iter().filter(move |k| self.contains(*k))
    }

    pub fn swap_time_space(self) -> RelSet {
        self.kinds()
            .map(|k| RelSet::of(k.swap_time_space()))
            .fold(RelSet::EMPTY, |a, b| a | b)
    }

    /// All 16 subsets, by increasing mask.
    pub fn all() -> impl Iterator<Item = RelSet> {
        (0..16u8).map(RelSet)
    }

    /// Canonical grammar token, when the set has one.
    pub fn name(self) -> Option<&'static str> {
        Some(match self.0 {
            1 => "eq",
            2 => "tau",
            4 => "lam",
            8 => "sig",
            14 => "!=",
            13 => "ntau",
            11 => "nlam",
            7 => "nsig",
            12 => "ntau_ne",
            10 => "nlam_ne",
            6 => "nsig_ne",
            _ => return None,
        })
    }
}

impl fmt::Display for RelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(n),
            None => {
                write!(f, "[")?;
                for k in self.kinds() {
                    write!(f, "{}", k.letter())?;
                }
                write!(f, "]")
            }
        }
    }
}

impl Serialize for RelSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<RelKind> for RelSet {
    fn from(k: RelKind) -> Self {
        RelSet::of(k)
    }
}

impl BitOr for RelSet {
    type Output = RelSet;
    fn bitor(self, rhs: RelSet) -> RelSet {
        RelSet(self.0 | rhs.0)
    }
}

impl BitAnd for RelSet {
    type Output = RelSet;
    fn bitand(self, rhs: RelSet) -> RelSet {
        RelSet(self.0 & rhs.0)
    }
}

impl Not for RelSet {
    type Output = RelSet;
    fn not(self) -> RelSet {
        RelSet(!self.0 & 15)
    }
}

//! Exact arithmetic over ℚ and real quadratic extensions ℚ(√d).
//!
//! Elements of a quadratic extension are stored as `a + b√d` with rational
//! `a`, `b`. The literal form uses `rt` for the adjoined root, so `1-1/2*rt`
//! in context `Q(rt2)` is `1 − √2/2`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("{0} is not a square in {1}")]
    NotASquare(FieldElem, FieldCtx),
    #[error("negative radicand {0}")]
    NegativeRadicand(FieldElem),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn parse_err(input: &str, reason: impl Into<String>) -> FieldError {
    FieldError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// ℚ, or ℚ(√d) with `d` square-free and at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum FieldCtx {
    #[default]
    Rationals,
    QuadExt(Arc<BigInt>),
}

impl FieldCtx {
    /// Builds ℚ(√d), reducing `d` to its square-free part.
    pub fn quadratic(d: impl Into<BigInt>) -> Result<FieldCtx, FieldError> {
        let d: BigInt = d.into();
        if d < BigInt::from(2) {
            return Err(FieldError::InvalidExtension(format!("d = {d} must be at least 2")));
        }
        let reduced = square_free_part(&d);
        if reduced.is_one() {
            return Err(FieldError::InvalidExtension(format!("d = {d} is a perfect square")));
        }
        Ok(FieldCtx::QuadExt(Arc::new(reduced)))
    }

    pub fn d(&self) -> Option<&BigInt> {
        match self {
            FieldCtx::Rationals => None,
            FieldCtx::QuadExt(d) => Some(d),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldCtx::Rationals)
    }

    /// Smallest context containing both; ℚ embeds in every extension.
    pub fn join(&self, other: &FieldCtx) -> Result<FieldCtx, FieldError> {
        match (self, other) {
            (FieldCtx::Rationals, c) | (c, FieldCtx::Rationals) => Ok(c.clone()),
            (FieldCtx::QuadExt(d1), FieldCtx::QuadExt(d2)) if d1 == d2 => Ok(self.clone()),
            _ => Err(FieldError::ContextMismatch(format!("{self} vs {other}"))),
        }
    }
}

fn square_free_part(d: &BigInt) -> BigInt {
    let mut n = d.clone();
    let mut k = BigInt::from(2);
    while &k * &k <= n {
        let sq = &k * &k;
        while (&n % &sq).is_zero() {
            n /= &sq;
        }
        k += 1;
    }
    n
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::QuadExt(d) => write!(f, "Q(rt{d})"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldCtx::Rationals);
        }
        let inner = t
            .strip_prefix("Q(rt")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err(s, "expected Q or Q(rtD)"))?;
        let d: BigInt = inner.parse().map_err(|_| parse_err(s, "bad radicand"))?;
        FieldCtx::quadratic(d)
    }
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `a + b√d`; in ℚ, `b` is always zero.
#[derive(Debug, Clone)]
pub struct FieldElem {
    a: BigRational,
    b: BigRational,
    ctx: FieldCtx,
}

impl FieldElem {
    pub fn new(a: BigRational, b: BigRational, ctx: FieldCtx) -> Result<FieldElem, FieldError> {
        if ctx.is_rational() && !b.is_zero() {
            return Err(FieldError::ContextMismatch(
                "irrational part in Q".to_string(),
            ));
        }
        Ok(FieldElem { a, b, ctx })
    }

    pub fn rational(a: BigRational) -> FieldElem {
        FieldElem {
            a,
            b: BigRational::zero(),
            ctx: FieldCtx::Rationals,
        }
    }

    pub fn int(n: i64) -> FieldElem {
        FieldElem::rational(BigRational::from_integer(n.into()))
    }

    /// `n/d`; panics if `d = 0`.
    pub fn frac(n: i64, d: i64) -> FieldElem {
        FieldElem::rational(BigRational::new(n.into(), d.into()))
    }

    pub fn zero() -> FieldElem {
        FieldElem::int(0)
    }

    pub fn one() -> FieldElem {
        FieldElem::int(1)
    }

    /// The adjoined root √d of a quadratic context.
    pub fn root(ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        match ctx {
            FieldCtx::Rationals => Err(FieldError::ContextMismatch("Q has no adjoined root".into())),
            FieldCtx::QuadExt(_) => Ok(FieldElem {
                a: BigRational::zero(),
                b: BigRational::one(),
                ctx: ctx.clone(),
            }),
        }
    }

    /// The same value viewed in a (compatible) larger context.
    pub fn in_ctx(&self, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        let joined = self.ctx.join(ctx)?;
        if &joined != ctx {
            return Err(FieldError::ContextMismatch(format!("{} does not embed in {ctx}", self.ctx)));
        }
        Ok(FieldElem {
            a: self.a.clone(),
            b: self.b.clone(),
            ctx: ctx.clone(),
        })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, when the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn d_or_zero(ctx: &FieldCtx) -> BigRational {
        ctx.d()
            .map(|d| BigRational::from_integer(d.clone()))
            .unwrap_or_else(BigRational::zero)
    }

    pub fn checked_add(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        Ok(FieldElem {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            ctx,
        })
    }

    pub fn checked_sub(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        Ok(FieldElem {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            ctx,
        })
    }

    pub fn checked_mul(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        let ctx = self.ctx.join(&rhs.ctx)?;
        if self.b.is_zero() && rhs.b.is_zero() {
            return Ok(FieldElem {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
                ctx,
            });
        }
        let d = Self::d_or_zero(&ctx);
        Ok(FieldElem {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            ctx,
        })
    }

    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(FieldElem {
                a: self.a.recip(),
                b: BigRational::zero(),
                ctx: self.ctx.clone(),
            });
        }
        let norm = &self.a * &self.a - &self.b * &self.b * Self::d_or_zero(&self.ctx);
        Ok(FieldElem {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            ctx: self.ctx.clone(),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Result<FieldElem, FieldError> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    /// Sign of the real number `a + b√d` as −1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Self::d_or_zero(&self.ctx);
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> FieldElem {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact square root inside the current context.
    pub fn sqrt_exact(&self) -> Result<FieldElem, FieldError> {
        match self.sign() {
            s if s < 0 => return Err(FieldError::NegativeRadicand(self.clone())),
            0 => return Ok(FieldElem { ctx: self.ctx.clone(), ..FieldElem::zero() }),
            _ => {}
        }
        let not_square = || FieldError::NotASquare(self.clone(), self.ctx.clone());
        let d = Self::d_or_zero(&self.ctx);
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Ok(FieldElem {
                    a: r,
                    b: BigRational::zero(),
                    ctx: self.ctx.clone(),
                });
            }
            if !d.is_zero() {
                if let Some(q) = rational_sqrt(&(&self.a / &d)) {
                    return Ok(FieldElem {
                        a: BigRational::zero(),
                        b: q,
                        ctx: self.ctx.clone(),
                    });
                }
            }
            return Err(not_square());
        }
        // (p + q√d)² = p² + q²d + 2pq√d
        let norm = &self.a * &self.a - &self.b * &self.b * &d;
        let r = rational_sqrt(&norm).ok_or_else(not_square)?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.a + &r) / &two, (&self.a - &r) / &two] {
            if !cand.is_positive() {
                continue;
            }
            if let Some(p) = rational_sqrt(&cand) {
                let q = &self.b / (&two * &p);
                if &p * &p + &q * &q * &d == self.a {
                    let y = FieldElem {
                        a: p,
                        b: q,
                        ctx: self.ctx.clone(),
                    };
                    return Ok(y.abs());
                }
            }
        }
        Err(not_square())
    }

    /// `a − b√d`; a ring automorphism of ℚ(√d) that does not preserve order.
    pub fn conjugate(&self) -> Result<FieldElem, FieldError> {
        if self.ctx.is_rational() {
            return Err(FieldError::ContextMismatch(
                "conjugation needs a quadratic context".into(),
            ));
        }
        Ok(FieldElem {
            a: self.a.clone(),
            b: -self.b.clone(),
            ctx: self.ctx.clone(),
        })
    }

    /// A rational `r` with `r ≥ self` and `r − self ≤ |b|·2^-bits`.
    pub fn upper_bound(&self, bits: u32) -> BigRational {
        self.bound(bits, true)
    }

    /// A rational `r` with `r ≤ self` and `self − r ≤ |b|·2^-bits`.
    pub fn lower_bound(&self, bits: u32) -> BigRational {
        self.bound(bits, false)
    }

    fn bound(&self, bits: u32, upper: bool) -> BigRational {
        let Some(d) = self.ctx.d() else {
            return self.a.clone();
        };
        if self.b.is_zero() {
            return self.a.clone();
        }
        let (lo, hi) = sqrt_int_bounds(d, bits);
        let use_hi = upper == self.b.is_positive();
        &self.a + &self.b * if use_hi { hi } else { lo }
    }

    /// Parses a literal in the given context: `±p/q`, `±p`, `a±b*rt`, `b*rt`, `rt`.
    pub fn parse(input: &str, ctx: &FieldCtx) -> Result<FieldElem, FieldError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(parse_err(input, "empty literal"));
        }
        if !s.contains("rt") {
            let a = parse_rational(&s).ok_or_else(|| parse_err(input, "bad rational"))?;
            return Ok(FieldElem {
                a,
                b: BigRational::zero(),
                ctx: ctx.clone(),
            });
        }
        if ctx.is_rational() {
            return Err(parse_err(input, "`rt` used in context Q"));
        }
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_text, b_text) = match split {
            Some(i) => (&s[..i], &s[i..]),
            None => ("0", s.as_str()),
        };
        let a = parse_rational(a_text).ok_or_else(|| parse_err(input, "bad rational part"))?;
        let coeff = b_text
            .strip_suffix("rt")
            .ok_or_else(|| parse_err(input, "root term must end in rt"))?;
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let b = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c).ok_or_else(|| parse_err(input, "bad root coefficient"))?,
        };
        Ok(FieldElem {
            a,
            b,
            ctx: ctx.clone(),
        })
    }
}

fn rsign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.starts_with('+') || body.is_empty() {
        return None;
    }
    let valid = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
    };
    match body.split_once('/') {
        Some((n, d)) => {
            if !valid(n) || d.is_empty() || !d.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => {
            if !valid(body) {
                return None;
            }
            Some(BigRational::from_integer(body.parse().ok()?))
        }
    }
}

/// Square root of a rational when both reduced numerator and denominator are squares.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Rational bounds `lo ≤ √x ≤ hi` with `hi − lo ≤ 2^-bits / denom(x)`; `x ≥ 0`.
pub fn rational_sqrt_bounds(x: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!x.is_negative(), "square root of a negative rational");
    let scale = BigInt::one() << (2 * bits as usize);
    let q = x.denom();
    // √(p/q) = √(pq)/q
    let s = (x.numer() * q * &scale).sqrt();
    let den = q * (BigInt::one() << bits as usize);
    let lo = BigRational::new(s.clone(), den.clone());
    let hi = if &s * &s == x.numer() * q * &scale {
        lo.clone()
    } else {
        BigRational::new(s + 1, den)
    };
    (lo, hi)
}

fn sqrt_int_bounds(d: &BigInt, bits: u32) -> (BigRational, BigRational) {
    rational_sqrt_bounds(&BigRational::from_integer(d.clone()), bits)
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return fmt_rational(&self.a, f);
        }
        if !self.a.is_zero() {
            fmt_rational(&self.a, f)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        fmt_rational(&self.b, f)?;
        write!(f, "*rt")
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.ctx == other.ctx)
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order of the reals; panics when comparing different extensions.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl From<BigRational> for FieldElem {
    fn from(r: BigRational) -> Self {
        FieldElem::rational(r)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::int(n)
    }
}

impl From<BigInt> for FieldElem {
    fn from(n: BigInt) -> Self {
        FieldElem::rational(BigRational::from_integer(n))
    }
}

macro_rules! binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl $Trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $Trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $Trait<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            a: -self.a.clone(),
            b: -self.b.clone(),
            ctx: self.ctx.clone(),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> FieldCtx {
        FieldCtx::quadratic(2).unwrap()
    }

    fn p(s: &str, ctx: &FieldCtx) -> FieldElem {
        FieldElem::parse(s, ctx).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(FieldElem::frac(1, 2) + FieldElem::frac(1, 3), FieldElem::frac(5, 6));
    }

    #[test]
    fn conjugate_product_is_norm() {
        let c = q2();
        assert_eq!(p("1+rt", &c) * p("1-rt", &c), FieldElem::int(-1));
    }

    #[test]
    fn inverse_of_one_plus_root_two() {
        let c = q2();
        let x = p("1+1*rt", &c);
        assert_eq!(x.inv().unwrap(), p("-1+1*rt", &c));
        assert_eq!(&x * &x.inv().unwrap(), FieldElem::one());
        assert_eq!(FieldElem::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn signs() {
        let c = q2();
        assert_eq!(FieldElem::frac(-3, 4).sign(), -1);
        assert_eq!(p("1-1*rt", &c).sign(), -1);
        assert_eq!(p("3-2*rt", &c).sign(), 1);
        assert_eq!(p("-3+2*rt", &c).sign(), -1);
        assert_eq!(p("0", &c).sign(), 0);
        assert_eq!(p("rt", &c).sign(), 1);
        assert_eq!(p("-rt", &c).sign(), -1);
        assert_eq!(p("2+rt", &c).sign(), 1);
    }

    #[test]
    fn square_roots() {
        let c = q2();
        assert_eq!(FieldElem::frac(9, 4).sqrt_exact().unwrap(), FieldElem::frac(3, 2));
        assert!(matches!(FieldElem::int(2).sqrt_exact(), Err(FieldError::NotASquare(_, _))));
        assert_eq!(p("3+2*rt", &c).sqrt_exact().unwrap(), p("1+1*rt", &c));
        assert_eq!(p("3-2*rt", &c).sqrt_exact().unwrap(), p("-1+1*rt", &c));
        assert_eq!(p("2", &c).sqrt_exact().unwrap(), p("rt", &c));
        assert_eq!(p("8", &c).sqrt_exact().unwrap(), p("2*rt", &c));
        assert!(matches!(
            FieldElem::int(-1).sqrt_exact(),
            Err(FieldError::NegativeRadicand(_))
        ));
        assert!(matches!(p("3", &c).sqrt_exact(), Err(FieldError::NotASquare(_, _))));
    }

    #[test]
    fn conjugation() {
        let c = q2();
        assert_eq!(p("1+rt", &c).conjugate().unwrap(), p("1-rt", &c));
        assert_eq!(p("5", &c).conjugate().unwrap(), FieldElem::int(5));
        let x = p("3-7*rt", &c);
        assert_eq!(x.conjugate().unwrap().conjugate().unwrap(), x);
        assert!(FieldElem::int(5).conjugate().is_err());
        let w = p("-1+rt", &c);
        assert!(w.is_positive() && w.conjugate().unwrap().is_negative());
    }

    #[test]
    fn context_rules() {
        let c2 = q2();
        let c3 = FieldCtx::quadratic(3).unwrap();
        assert!(p("rt", &c2).checked_add(&p("rt", &c3)).is_err());
        assert_eq!(FieldElem::int(1).checked_add(&p("rt", &c2)).unwrap(), p("1+rt", &c2));
        assert_eq!(FieldCtx::quadratic(8).unwrap(), c2);
        assert!(FieldCtx::quadratic(9).is_err());
        assert!(FieldCtx::quadratic(1).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let c = q2();
        for s in ["0", "-3", "7/2", "-1/2", "1+1*rt", "-1+1*rt", "1-1/2*rt", "2*rt", "-1/3*rt"] {
            assert_eq!(p(s, &c).to_string(), s);
        }
        assert_eq!(p("1 - 1/2 * rt", &c).to_string(), "1-1/2*rt");
        assert_eq!(p("-rt", &c).to_string(), "-1*rt");
        assert_eq!("Q(rt2)".parse::<FieldCtx>().unwrap().to_string(), "Q(rt2)");
        assert_eq!("Q(rt12)".parse::<FieldCtx>().unwrap().to_string(), "Q(rt3)");
        for bad in ["", "1/0", "x", "1+", "rt", "1++2"] {
            assert!(FieldElem::parse(bad, &FieldCtx::Rationals).is_err(), "{bad}");
        }
        assert!(FieldElem::parse("1*rt*rt", &c).is_err());
    }

    #[test]
    fn bounds_bracket_value() {
        let c = q2();
        let x = p("1-3/2*rt", &c);
        for bits in [1, 8, 40] {
            let lo = FieldElem::rational(x.lower_bound(bits));
            let hi = FieldElem::rational(x.upper_bound(bits));
            assert!(lo <= x && x <= hi);
        }
        let (lo, hi) = rational_sqrt_bounds(&BigRational::new(1.into(), 3.into()), 20);
        let third = BigRational::new(1.into(), 3.into());
        assert!(&lo * &lo <= third && third <= &hi * &hi);
    }
}

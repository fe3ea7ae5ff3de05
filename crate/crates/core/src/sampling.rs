//! Seeded generators for rational points, offsets, Pythagorean directions
//! and random relation-preserving maps.
//!
//! Every trial draws from its own stream keyed by `(seed, label, index)`, so
//! results do not depend on evaluation order or thread scheduling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactfield::FieldElem;
use crate::minkowski::{Point, RelKind};
use crate::transforms::{self, AffineMap};

pub type TrialRng = ChaCha8Rng;

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// The generator for trial `index` of the stream named `label`.
pub fn trial_rng(seed: u64, label: &str, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label) ^ index.rotate_left(32));
    rng
}

/// `num/den` with `den ∈ [1, max_den]` and `|num/den| ≤ radius`.
pub fn rational(rng: &mut TrialRng, radius: i64, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(-radius * den..=radius * den);
    BigRational::new(num.into(), den.into())
}

pub fn nonzero_rational(rng: &mut TrialRng, radius: i64, max_den: i64) -> BigRational {
    loop {
        let r = rational(rng, radius, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A strictly positive rational at most `radius`.
pub fn positive_rational(rng: &mut TrialRng, radius: i64, max_den: i64) -> BigRational {
    nonzero_rational(rng, radius, max_den).abs()
}

pub fn point(rng: &mut TrialRng, n: usize, radius: i64, max_den: i64) -> Point {
    Point::new(
        (0..n)
            .map(|_| FieldElem::rational(rational(rng, radius, max_den)))
            .collect(),
    )
    .expect("n >= 2")
}

/// A random rational unit vector of ℚᵏ by inverse stereographic projection.
pub fn pythagorean_unit(rng: &mut TrialRng, k: usize) -> Vec<BigRational> {
    if k == 1 {
        let s = if rng.gen::<bool>() { 1 } else { -1 };
        return vec![BigRational::from_integer(s.into())];
    }
    let m: Vec<BigRational> = (0..k - 1).map(|_| rational(rng, 2, 4)).collect();
    let norm2 = m.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
    let denom = &norm2 + BigRational::one();
    let two = BigRational::from_integer(2.into());
    let mut v: Vec<BigRational> = m.iter().map(|x| &two * x / &denom).collect();
    v.push((&norm2 - BigRational::one()) / &denom);
    let shift = rng.gen_range(0..k);
    v.rotate_left(shift);
    v
}

/// A speed `v` with `|v| < 1` and `√(1 − v²)` rational.
pub fn pythagorean_speed(rng: &mut TrialRng) -> BigRational {
    let m: i64 = rng.gen_range(2..=9);
    let k: i64 = rng.gen_range(1..m);
    let hyp = m * m + k * k;
    let leg = if rng.gen::<bool>() { 2 * m * k } else { m * m - k * k };
    let v = BigRational::new(leg.into(), hyp.into());
    if rng.gen::<bool>() {
        -v
    } else {
        v
    }
}

/// `(c, s)` with `c² + s² = 1`, both rational.
pub fn pythagorean_angle(rng: &mut TrialRng) -> (BigRational, BigRational) {
    let u = pythagorean_unit(rng, 2);
    (u[0].clone(), u[1].clone())
}

fn offset_point(t: BigRational, xs: Vec<BigRational>) -> Point {
    Point::new(
        std::iter::once(t)
            .chain(xs)
            .map(FieldElem::rational)
            .collect(),
    )
    .expect("n >= 2")
}

/// `(t, x)` with `|t| > Σ|xᵢ|`, hence timelike from the origin.
pub fn timelike_offset(rng: &mut TrialRng, n: usize, radius: i64, max_den: i64) -> Point {
    let xs: Vec<BigRational> = (1..n).map(|_| rational(rng, radius, max_den)).collect();
    let l1 = xs.iter().fold(BigRational::zero(), |acc, x| acc + x.abs());
    let t = l1 + positive_rational(rng, radius, max_den);
    offset_point(if rng.gen::<bool>() { t } else { -t }, xs)
}

/// `t·(±1, e)` with `e` a rational unit vector, hence lightlike from the origin.
pub fn lightlike_offset(rng: &mut TrialRng, n: usize, radius: i64, max_den: i64) -> Point {
    let t = nonzero_rational(rng, radius, max_den);
    let e = pythagorean_unit(rng, n - 1);
    offset_point(t.clone(), e.into_iter().map(|x| x * &t).collect())
}

/// An offset whose spatial part dominates the time part along one axis.
pub fn spacelike_offset(rng: &mut TrialRng, n: usize, radius: i64, max_den: i64) -> Point {
    let t = rational(rng, radius, max_den);
    let mut xs: Vec<BigRational> = (1..n).map(|_| rational(rng, radius, max_den)).collect();
    let axis = rng.gen_range(0..n - 1);
    let big = t.abs() + positive_rational(rng, radius, max_den);
    xs[axis] = if rng.gen::<bool>() { big } else { -big };
    offset_point(t, xs)
}

/// A nonzero offset of the given relation kind from the origin.
pub fn offset_of_kind(rng: &mut TrialRng, kind: RelKind, n: usize, radius: i64, max_den: i64) -> Point {
    match kind {
        RelKind::Equal => Point::origin(n),
        RelKind::Timelike => timelike_offset(rng, n, radius, max_den),
        RelKind::Lightlike => lightlike_offset(rng, n, radius, max_den),
        RelKind::Spacelike => spacelike_offset(rng, n, radius, max_den),
    }
}

fn small_nonzero(rng: &mut TrialRng) -> FieldElem {
    let num: i64 = rng.gen_range(1..=4);
    let den: i64 = rng.gen_range(1..=3);
    let sign = if rng.gen::<bool>() { 1 } else { -1 };
    FieldElem::frac(sign * num, den)
}

/// A rotation in a random spatial coordinate plane (identity when n = 2).
pub fn random_rotation(rng: &mut TrialRng, n: usize) -> AffineMap {
    let k = n - 1;
    let mut rows: Vec<Vec<FieldElem>> = (0..k)
        .map(|i| (0..k).map(|j| FieldElem::int((i == j) as i64)).collect())
        .collect();
    if k >= 2 {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let (c, s) = pythagorean_angle(rng);
        rows[i][i] = FieldElem::rational(c.clone());
        rows[j][j] = FieldElem::rational(c);
        rows[i][j] = FieldElem::rational(-s.clone());
        rows[j][i] = FieldElem::rational(s);
    }
    transforms::rotation_from_orthonormal(&rows).expect("plane rotation is orthonormal")
}

/// Boost, rotation, optional time reversal, scaling, then translation.
pub fn random_automorphism(rng: &mut TrialRng, n: usize) -> AffineMap {
    let axis = rng.gen_range(1..n);
    let v = FieldElem::rational(pythagorean_speed(rng));
    let mut map = transforms::boost(n, axis, &v).expect("Pythagorean speed");
    map = random_rotation(rng, n).compose(&map);
    if rng.gen::<bool>() {
        map = transforms::time_reversal(n).compose(&map);
    }
    map = transforms::scaling(n, &small_nonzero(rng))
        .expect("nonzero")
        .compose(&map);
    transforms::translation(&point(rng, n, 3, 4)).compose(&map)
}

/// A pair of the given kind that canonicalizes over ℚ: the image of the
/// canonical pair under a random automorphism.
pub fn random_pair(rng: &mut TrialRng, kind: RelKind, n: usize) -> (Point, Point) {
    if kind == RelKind::Equal {
        let p = point(rng, n, 3, 4);
        return (p.clone(), p);
    }
    let (p, q) = transforms::canonical_pair(kind, n);
    let map = random_automorphism(rng, n);
    (map.apply(&p), map.apply(&q))
}

/// A random integer in `[lo, hi]` as a big integer.
pub fn big_int(rng: &mut TrialRng, lo: i64, hi: i64) -> BigInt {
    BigInt::from(rng.gen_range(lo..=hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::rel;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(7, "x", 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(7, "x", 3).gen()).collect();
        assert_eq!(a, b);
        let x: u64 = trial_rng(7, "x", 3).gen();
        let y: u64 = trial_rng(7, "x", 4).gen();
        let z: u64 = trial_rng(7, "y", 3).gen();
        assert!(x != y && x != z);
    }

    #[test]
    fn offsets_have_their_kind() {
        let mut rng = trial_rng(1, "offsets", 0);
        let o = Point::origin(3);
        for _ in 0..200 {
            for kind in RelKind::DISTINCT {
                assert_eq!(rel(&offset_of_kind(&mut rng, kind, 3, 3, 4), &o), kind);
            }
        }
    }

    #[test]
    fn units_are_unit() {
        let mut rng = trial_rng(2, "units", 0);
        for k in 1..5 {
            let u = pythagorean_unit(&mut rng, k);
            let n2 = u.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
            assert!(n2.is_one());
        }
    }

    #[test]
    fn random_pairs_have_requested_kind() {
        let mut rng = trial_rng(3, "pairs", 0);
        for n in [2, 3, 4] {
            for kind in RelKind::ALL {
                let (p, q) = random_pair(&mut rng, kind, n);
                assert_eq!(rel(&p, &q), kind);
            }
        }
    }
}

//! Move a pair of points to the canonical representative of its kind with
//! an exact automorphism, then check a random automorphism keeps the kind.

use causaldef::minkowski::{rel, RelKind};
use causaldef::sampling::{random_automorphism, random_pair, trial_rng};
use causaldef::transforms::{canonical_pair, canonicalize_pair};

fn main() {
    let mut rng = trial_rng(7, "example/canonicalize", 0);
    for kind in RelKind::DISTINCT {
        let (p, q) = random_pair(&mut rng, kind, 2);
        let (alpha, got) = canonicalize_pair(&p, &q).expect("distinct points");
        let (cp, cq) = canonical_pair(kind, 2);
        assert_eq!((alpha.apply(&p), alpha.apply(&q)), (cp.clone(), cq.clone()));
        println!("{got:<10} {p} {q}  ->  {cp} {cq}");
    }

    let (p, q) = random_pair(&mut rng, RelKind::Lightlike, 3);
    let a = random_automorphism(&mut rng, 3);
    println!("after a random automorphism in n=3: {}", rel(&a.apply(&p), &a.apply(&q)));
}

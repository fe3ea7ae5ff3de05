//! The inversion `p ↦ p / Q(p)` keeps λ but not τ or σ.

use causaldef::minkowski::{rel, Point};
use causaldef::transforms::{escape_iteration, hyperbolic_inversion, EscapeRegime};

fn main() {
    let p = Point::ints(&[0, 1]);
    let q = Point::fracs(&[(3, 2), (1, 1)]);
    let (hp, hq) = (hyperbolic_inversion(&p).unwrap(), hyperbolic_inversion(&q).unwrap());
    println!("{p} {q}: {}  ->  {hp} {hq}: {}", rel(&p, &q), rel(&hp, &hq));

    let pts = [
        Point::ints(&[3, 1, 0]),
        Point::ints(&[4, 1, 1]),
        Point::ints(&[1, 3, 0]),
        Point::ints(&[2, 1, 1]),
    ];
    let img: Vec<Point> = pts.iter().map(|p| hyperbolic_inversion(p).unwrap()).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            println!("{} {}: {} -> {}", pts[i], pts[j], rel(&pts[i], &pts[j]), rel(&img[i], &img[j]));
        }
    }
    assert_eq!(hyperbolic_inversion(&img[0]).unwrap(), pts[0]);

    let on_cone = [Point::ints(&[1, 1, 0]), Point::ints(&[0, 1, 0])];
    let moved = escape_iteration(&on_cone, EscapeRegime::TimelikePair).unwrap();
    println!("escaped off the cone: {} {}", moved[0], moved[1]);
}

//! Classify pairs of points by the sign of their Minkowski form.

use causaldef::exactfield::FieldCtx;
use causaldef::minkowski::{in_future_of, mink_form, relate, FutureMode, Point};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldCtx::Rationals;
    let pairs = [
        ("(0,0)", "(2,1)"),
        ("(0,0)", "(1,1)"),
        ("(0,0)", "(1/2,3)"),
        ("(0,0,0)", "(3,0,-3)"),
        ("(1,2,3)", "(1,2,3)"),
    ];
    for (a, b) in pairs {
        let (p, r) = (Point::parse(a, &q)?, Point::parse(b, &q)?);
        let kind = relate(&p, &r)?;
        let m = mink_form(&p, &r)?;
        println!("{a:>9} {b:>9}  {:<10} form {m}", kind.to_string());
    }

    let origin = Point::parse("(0,0)", &q)?;
    let later = Point::parse("(3,1)", &q)?;
    println!(
        "(3,1) in the timelike future of the origin: {}",
        in_future_of(&later, &origin, FutureMode::Timelike)?
    );
    Ok(())
}

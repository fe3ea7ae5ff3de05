//! Definability status by quantifier prefix, plane and space.

use causaldef::exactfield::FieldCtx;
use causaldef::matrix::status_matrix;

fn main() {
    for n in [2, 3] {
        let m = status_matrix(n, &FieldCtx::Rationals);
        println!("n = {n}");
        print!("{}", m.render_text());
        let bad = m.inconsistencies();
        println!("consistency: {}\n", if bad.is_empty() { "ok".into() } else { bad.join("; ") });
    }
}

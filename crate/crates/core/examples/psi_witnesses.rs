//! Exact witnesses for the ∀∃ formulas and a sampled check of one of them.

use causaldef::exactfield::FieldCtx;
use causaldef::formulas::FormulaName;
use causaldef::minkowski::{rel, Point};
use causaldef::witnesses::{
    check_formula, witness_psi_ls, witness_psi_ts_inner, CheckOptions,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Point::ints(&[0, 0]);
    let q = Point::ints(&[0, 2]);
    let z = Point::fracs(&[(1, 2), (1, 1)]);
    let u = witness_psi_ts_inner(&z, &p, &q)?;
    println!("z={z}  u={u}  u~z {}  u~p {}  u~q {}", rel(&u, &z), rel(&u, &p), rel(&u, &q));

    let p = Point::ints(&[0, 0, 0]);
    let q = Point::ints(&[0, 1, 0]);
    let z = witness_psi_ls(&p, &q)?;
    println!("lightlike witness for a spacelike pair in n=3: {z}");

    let opts = CheckOptions { trials: 100, ..CheckOptions::default() };
    let v = check_formula(FormulaName::PsiTS, 2, &FieldCtx::Rationals, &opts)?;
    println!("\n{}: {:?}", v.plan, v.status);
    for t in &v.tallies {
        println!("  {:<10} exact {:>3}  sampled {:>3}", t.kind.to_string(), t.exact, t.sampled);
    }
    Ok(())
}

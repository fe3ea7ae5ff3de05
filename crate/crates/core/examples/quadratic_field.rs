//! Arithmetic in Q(√2), and why λ cannot define τ over it.

use causaldef::exactfield::{FieldCtx, FieldElem};
use causaldef::minkowski::{rel, Point};
use causaldef::plans::{run_plan, PlanOptions};
use causaldef::transforms::lifted_conjugation;
use causaldef::witnesses::CheckOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx: FieldCtx = "Q(rt8)".parse()?;
    let r = FieldElem::root(&ctx)?;
    let x = &FieldElem::int(3) - &(&FieldElem::int(2) * &r);
    println!("field {ctx}, x = {x}, x * conj(x) = {}", &x * &x.conjugate()?);
    println!("x > 0: {}  1/x = {}", x.is_positive(), x.inv()?);

    let conj = lifted_conjugation(&ctx)?;
    let p = Point::parse("(0,0)", &ctx)?;
    let q = Point::parse("(1,-1+rt)", &ctx)?;
    let (cp, cq) = (conj.apply(&p)?, conj.apply(&q)?);
    println!("{p} {q}: {}  ->  {cp} {cq}: {}", rel(&p, &q), rel(&cp, &cq));

    let opts = PlanOptions {
        n: 2,
        field: ctx,
        check: CheckOptions { trials: 50, ..CheckOptions::default() },
    };
    let v = run_plan("non-eucl-q-sqrt2", &opts)?;
    println!("non-eucl-q-sqrt2: {:?}", v.status);
    Ok(())
}

//! Run registered plans by id, as the `verify` subcommand does.

use causaldef::exactfield::FieldCtx;
use causaldef::plans::{run_plan, PlanOptions, PLANS};
use causaldef::witnesses::CheckOptions;

fn main() {
    let ids: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<&str> = if ids.is_empty() {
        vec!["psi-st", "swap-2d", "e-st-2d", "psi-ls"]
    } else {
        ids.iter().map(String::as_str).collect()
    };
    let opts = PlanOptions {
        n: 2,
        field: FieldCtx::Rationals,
        check: CheckOptions { trials: 50, ..CheckOptions::default() },
    };
    for id in ids {
        let summary = PLANS.iter().find(|p| p.id == id).map_or("?", |p| p.summary);
        match run_plan(id, &opts) {
            Ok(v) => println!("{id:<10} {:<12} {summary}", format!("{:?}", v.status)),
            Err(e) => println!("{id:<10} error        {e}"),
        }
    }
}

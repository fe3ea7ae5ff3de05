//! Stored assignments showing the plane-only formulas break once n = 3.

use causaldef::witnesses::{counterexample, CounterexampleName};

fn main() {
    for name in CounterexampleName::ALL {
        let c = counterexample(name);
        println!("{name}: {} holds with p {} q", c.formula, c.pair_kind);
        for (v, p) in &c.assignment {
            println!("  {v} = {p}");
        }
        assert!(c.verify());
    }
}

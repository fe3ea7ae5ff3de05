//! Parse, print and classify formulas.

use causaldef::formulas::{builtin, parse, FormulaName};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("forall z (z eq x | exists u (u tau z & u ntau x))")?;
    println!("{f}");
    println!("  variables {}  prefix {}", f.count_variables(), f.prefix_class());
    println!("  swapped   {}", f.swap_time_space());

    println!();
    for name in FormulaName::ALL {
        let nf = builtin(name);
        println!(
            "{:<8} {} -> {}  vars {}  prefix {:<5} {}",
            name.to_string(),
            nf.source,
            nf.target,
            nf.formula.count_variables(),
            nf.formula.prefix_class().to_string(),
            nf.regime,
        );
    }
    Ok(())
}

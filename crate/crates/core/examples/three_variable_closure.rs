//! The relation algebra generated by one causal relation, and what three
//! variables can define.

use causaldef::minkowski::{RelKind, RelSet};
use causaldef::relalg::{closure, decide_3var_definable, hasse_edges, validate_table, AtomSet, CompositionTable};

fn main() {
    let table = CompositionTable::standard();
    let elems = closure(&[AtomSet::ID, AtomSet::RHO], &table);
    let names: Vec<_> = elems.iter().map(|a| a.name()).collect();
    println!("closure ({}): {}", elems.len(), names.join(" "));
    for (lo, hi) in hasse_edges(&elems) {
        println!("  {} < {}", lo.name(), hi.name());
    }

    for rho in RelKind::DISTINCT {
        let v = validate_table(&table, rho, 3, 0);
        let others: Vec<_> = RelKind::DISTINCT
            .into_iter()
            .filter(|&k| k != rho)
            .map(|k| format!("{k} {}", decide_3var_definable(rho, RelSet::of(k))))
            .collect();
        println!("{rho}: table {:?}; definable: {}", v.status, others.join(", "));
    }
}

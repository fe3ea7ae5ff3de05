//! Embed every non-requiring fastidious two-vertex-extension graph with
//! each relation between p and q.

use causaldef::graphembed::{enumerate_nrf2, nrf2_orbits, nrf2_relation_report, Budget};
use causaldef::minkowski::RelKind;

fn main() {
    let graphs = enumerate_nrf2(RelKind::Timelike);
    println!("{} graphs, {} up to symmetry", graphs.len(), nrf2_orbits(&graphs).len());

    let report = nrf2_relation_report(RelKind::Timelike, 2, &Budget::default());
    println!("{} embeddings, missing {:?}", report.embeddings.len(), report.missing);
    if let Some(e) = report.embeddings.iter().find(|e| e.perturbed) {
        println!("graph {} with p {} q:", e.graph, e.want);
        for (v, p) in &e.coords {
            println!("  {v} = {p}");
        }
    }
    println!("{}", report.conclusion());
}

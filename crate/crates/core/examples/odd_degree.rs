//! Over a field of odd degree the torsion of E1 and E2 does not grow, so
//! the quadratic points are those over Q, moved into K.

use std::collections::HashSet;

use quartic_points::mordell::{compute, FermatPoint};
use quartic_points::numberfield::{preset, FieldElement, NumberField};

fn main() -> quartic_points::Result<()> {
    let over_q = compute(&NumberField::rationals())?;
    for label in ["cubic-1", "cubic-2", "quintic-3"] {
        let k = preset(label)?;
        let report = compute(&k)?;
        let mut registry = report.registry.clone();
        // Q has generator 0 in the power basis `Q[t]/(t)`
        let zero = FieldElement::zero(&k);
        let mut moved = HashSet::new();
        for (p, _) in &over_q.expanded {
            moved.insert(registry.canonical(&p.base_change(&zero)?)?);
        }
        let here: HashSet<FermatPoint> = report.expanded.iter().map(|(p, _)| p.clone()).collect();
        println!(
            "{label}: E1 {}, E2 {}, L = {}, {} nontrivial points, same as Q: {}",
            report.torsion.0.structure_name(),
            report.torsion.1.structure_name(),
            report.identified_l,
            here.len(),
            here == moved
        );
    }
    Ok(())
}

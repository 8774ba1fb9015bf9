//! The Step II table over a preset field: one cell per pair of sign
//! representatives `(P1, P2)` in `E1(K) x E2(K)`.

use quartic_points::ellcurve::{ec_torsion, CurveSpec};
use quartic_points::mordell::{Step2Grid, Step2Outcome};
use quartic_points::numberfield::preset;

fn main() -> quartic_points::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "Qi".to_string());
    let k = preset(&label)?;
    let grid = Step2Grid::compute(&ec_torsion(&CurveSpec::e1(&k))?, &ec_torsion(&CurveSpec::e2(&k))?)?;
    println!("columns (E1): {}", grid.columns.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("  "));
    for (p2, row) in grid.rows.iter().zip(&grid.cells) {
        println!("row {p2}:");
        for (p1, cell) in grid.columns.iter().zip(row) {
            let what = match cell {
                Step2Outcome::NoSolution => "x (no beta)".to_string(),
                Step2Outcome::ReducibleQ => "x (Q reducible)".to_string(),
                Step2Outcome::ExcludedT => "x (t excluded)".to_string(),
                Step2Outcome::Points(sols) => sols
                    .iter()
                    .map(|s| format!("Q(T) = {}: {}", s.ext.display_poly(), s.point))
                    .collect::<Vec<_>>()
                    .join("; "),
            };
            println!("  {p1}: {what}");
        }
    }
    Ok(())
}

//! Point counts of E1 and E2 over residue fields of K, and the torsion
//! bound they imply.

use quartic_points::ellcurve::{ec_torsion_bound, CurveSpec};
use quartic_points::finitefield::{ec_count_points, good_residue_fields};
use quartic_points::numberfield::preset;

fn main() -> quartic_points::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "Qzeta8".to_string());
    let k = preset(&label)?;
    for (p, fields) in good_residue_fields(k.minpoly(), 6) {
        for f in fields {
            let n1 = ec_count_points(&CurveSpec::e1(&k).a, &f).ok();
            let n2 = ec_count_points(&CurveSpec::e2(&k).a, &f).ok();
            println!("p = {p:>3}, q = {:>6}: #E1 = {n1:?}, #E2 = {n2:?}", f.q);
        }
    }
    for curve in [CurveSpec::e1(&k), CurveSpec::e2(&k)] {
        println!("{} torsion divides {}", curve.name(), ec_torsion_bound(&curve)?.bound);
    }
    Ok(())
}

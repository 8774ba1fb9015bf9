//! Torsion of E1 and E2 over each preset field.

use quartic_points::ellcurve::{ec_torsion, CurveSpec};
use quartic_points::numberfield::{preset, PRESET_LABELS};

fn main() -> quartic_points::Result<()> {
    let extra: Vec<String> = std::env::args().skip(1).collect();
    let labels: Vec<String> = if extra.is_empty() {
        PRESET_LABELS.iter().map(|s| s.to_string()).collect()
    } else {
        extra
    };
    for label in labels {
        let k = preset(&label)?;
        for curve in [CurveSpec::e1(&k), CurveSpec::e2(&k)] {
            let t = ec_torsion(&curve)?;
            println!("{label:>8} {}: {} (bound {})", curve.name(), t.structure_name(), t.bound.bound);
            for p in &t.points {
                println!("           {p}");
            }
        }
    }
    Ok(())
}

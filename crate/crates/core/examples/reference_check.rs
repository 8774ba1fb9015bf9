//! Recomputes the preset fields and compares them with the bundled
//! reference tables.

use quartic_points::golden::verify_presets;
use quartic_points::numberfield::PRESET_LABELS;

fn main() {
    let checks = verify_presets(&PRESET_LABELS);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
}

//! Counts of quadratic points over each preset field.

use std::time::Instant;

use quartic_points::mordell::compute;
use quartic_points::numberfield::{preset, PRESET_LABELS};

fn main() -> quartic_points::Result<()> {
    let extra: Vec<String> = std::env::args().skip(1).collect();
    let labels: Vec<String> =
        if extra.is_empty() { PRESET_LABELS.iter().map(|s| s.to_string()).collect() } else { extra };
    for label in labels {
        let start = Instant::now();
        let report = compute(&preset(&label)?)?;
        println!(
            "{label:>8}: {:>4} = {} + {} + {}   |S0| = {:<3} L = {:<7} ({:.1?})",
            report.gamma2_count,
            report.trivial_affine,
            report.trivial_infinity,
            report.expanded.len(),
            report.s0.len(),
            report.identified_l,
            start.elapsed()
        );
    }
    Ok(())
}

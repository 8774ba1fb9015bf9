//! Maps every nontrivial quadratic point back to E1 and E2 and checks that
//! the images lie on the curves.

use quartic_points::mordell::{compute, verify_bielliptic};
use quartic_points::numberfield::preset;

fn main() -> quartic_points::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "Qzeta8".to_string());
    let report = compute(&preset(&label)?)?;
    let mut ok = 0;
    for (p, _) in &report.expanded {
        if verify_bielliptic(p)? {
            ok += 1;
        } else {
            println!("fails: {p}");
        }
    }
    println!("{label}: {ok} of {} nontrivial points map to E1 and E2", report.expanded.len());
    Ok(())
}

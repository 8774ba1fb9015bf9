//! Square tests and root extraction in Q(zeta_8), with the residue
//! certificates behind each "not a square" answer.

use quartic_points::exact::RatPoly;
use quartic_points::numberfield::{nf_is_square, nf_roots, preset, FieldElement, KPoly, SquareResult};

fn main() -> quartic_points::Result<()> {
    let k = preset("Qzeta8")?;
    // t = zeta_8, so t^2 = i and t - t^3 = sqrt(2)
    for (name, coeffs) in [("2", [2, 0, 0, 0]), ("-1", [-1, 0, 0, 0]), ("3", [3, 0, 0, 0]), ("1 + t", [1, 1, 0, 0])] {
        let d = FieldElement::from_ints(&k, &coeffs);
        match nf_is_square(&d)? {
            SquareResult::Square(r) => println!("{name:>6} = ({r})^2"),
            SquareResult::NonSquare(cert) => println!("{name:>6} is not a square: {}", cert.to_json()),
            SquareResult::Inconclusive => println!("{name:>6}: inconclusive"),
        }
    }

    // x^4 + 1 splits completely over Q(zeta_8)
    let f = KPoly::from_rat_poly(&k, &RatPoly::from_ints(&[1, 0, 0, 0, 1]));
    println!("roots of x^4 + 1:");
    for r in nf_roots(&f)? {
        println!("  {r}");
    }
    Ok(())
}

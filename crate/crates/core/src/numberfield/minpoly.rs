use num_traits::{One, Zero};

use super::{FieldElement, RelElement};
use crate::exact::{linsolve_exact, EchelonBasis, LinSolve, RatPoly, Rational};

/// An element of a finite-dimensional commutative Q-algebra given in
/// coordinates.
pub trait Coordinates: Clone {
    fn q_coords(&self) -> Vec<Rational>;
    fn times(&self, other: &Self) -> Self;
    fn unit(&self) -> Self;
}

impl Coordinates for FieldElement {
    fn q_coords(&self) -> Vec<Rational> {
        self.coeffs().to_vec()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn unit(&self) -> Self {
        FieldElement::one(self.field())
    }
}

impl Coordinates for RelElement {
    fn q_coords(&self) -> Vec<Rational> {
        let mut v = self.c0.coeffs().to_vec();
        v.extend_from_slice(self.c1.coeffs());
        v
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn unit(&self) -> Self {
        RelElement::one(&self.ext)
    }
}

/// Monic minimal polynomial over Q.
pub fn nf_min_poly<E: Coordinates>(e: &E) -> RatPoly {
    let mut powers: Vec<Vec<Rational>> = vec![e.unit().q_coords()];
    let mut cur = e.unit();
    loop {
        cur = cur.times(e);
        let target = cur.q_coords();
        let dim = target.len();
        // columns are the earlier powers
        let matrix: Vec<Vec<Rational>> =
            (0..dim).map(|r| powers.iter().map(|col| col[r].clone()).collect()).collect();
        if let LinSolve::Unique(sol) = linsolve_exact(&matrix, &target) {
            let mut coeffs: Vec<Rational> = sol.into_iter().map(|c| -c).collect();
            coeffs.push(Rational::one());
            return RatPoly::new(coeffs);
        }
        if powers.len() > dim {
            unreachable!("powers beyond the ambient dimension are dependent");
        }
        powers.push(target);
    }
}

/// Degree over Q of the subfield generated by `gens`: the dimension of the
/// smallest subspace containing 1 and stable under multiplication by each
/// generator.
pub fn nf_generated_degree<E: Coordinates>(gens: &[E]) -> usize {
    let Some(first) = gens.first() else { return 1 };
    let mut basis = EchelonBasis::new();
    let mut queue = vec![first.unit()];
    while let Some(v) = queue.pop() {
        let coords = v.q_coords();
        if coords.iter().all(Zero::is_zero) || !basis.insert(&coords) {
            continue;
        }
        for g in gens {
            queue.push(v.times(g));
        }
    }
    basis.rank()
}

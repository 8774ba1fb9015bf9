use num_traits::Zero;

use super::{height_bits, Rational};

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolve {
    Unique(Vec<Rational>),
    NoSolution,
    Underdetermined,
}

/// Solves `matrix * x = rhs` exactly by Gaussian elimination over Q.
///
/// Rows may outnumber columns; consistency of the surplus rows is checked.
/// Pivots are chosen by smallest height within the column.
pub fn linsolve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> LinSolve {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "rhs length must match row count");
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(matrix.iter().all(|r| r.len() == cols), "matrix must be rectangular");

    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let best = (pivot_row..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| height_bits(&a[r][col]));
        let Some(best) = best else { continue };
        a.swap(pivot_row, best);
        let inv = a[pivot_row][col].recip();
        for v in a[pivot_row].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *v -= &f * p;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    if a[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return LinSolve::NoSolution;
    }
    if pivot_cols.len() < cols {
        return LinSolve::Underdetermined;
    }
    LinSolve::Unique(a.iter().take(cols).map(|r| r[cols].clone()).collect())
}

/// An incrementally built reduced row-echelon basis of a subspace of Q^d.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.rows.iter().map(|(_, v)| v)
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&w) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

//! Multiprecision floats, complex numbers and the complex embeddings of a
//! number field.

mod bigfloat;
mod complex;
mod roots;

pub use bigfloat::BigFloat;
pub use complex::BigComplex;
pub use roots::{complex_roots, complex_roots_of, sort_roots};

use crate::error::{Error, Result};
use crate::exact::{RatPoly, Rational};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_MAX_PRECISION_BITS: u32 = 4096;

/// Working precisions tried in order: start, then x2, x2, x4, capped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionLadder {
    pub start: u32,
    pub max: u32,
}

impl Default for PrecisionLadder {
    fn default() -> Self {
        PrecisionLadder { start: DEFAULT_PRECISION_BITS, max: DEFAULT_MAX_PRECISION_BITS }
    }
}

impl PrecisionLadder {
    /// Reads `QP_PRECISION_BITS` and `QP_MAX_PRECISION_BITS`.
    pub fn from_env() -> Self {
        let read = |key: &str, default: u32| {
            std::env::var(key).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
        };
        let start = read("QP_PRECISION_BITS", DEFAULT_PRECISION_BITS).max(64);
        let max = read("QP_MAX_PRECISION_BITS", DEFAULT_MAX_PRECISION_BITS).max(start);
        PrecisionLadder { start, max }
    }

    pub fn rungs(&self) -> Vec<u32> {
        let mut out = vec![self.start];
        for factor in [2u32, 2, 4] {
            let next = out.last().unwrap().saturating_mul(factor).min(self.max);
            if next > *out.last().unwrap() {
                out.push(next);
            }
        }
        if *out.last().unwrap() < self.max {
            out.push(self.max);
        }
        out
    }
}

/// Complex embeddings of `Q[t]/(f)`: roots of `f`, the Vandermonde matrix
/// `V[i][j] = root_i^j` and its inverse.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    pub prec: u32,
    pub roots: Vec<BigComplex>,
    pub vandermonde: Vec<Vec<BigComplex>>,
    pub inverse: Vec<Vec<BigComplex>>,
    pub is_real: Vec<bool>,
    /// `conj[i]` is the index of the complex-conjugate embedding.
    pub conj: Vec<usize>,
}

impl EmbeddingSet {
    pub fn new(minpoly: &RatPoly, prec: u32) -> Result<Self> {
        let n = minpoly.degree().ok_or(Error::ZeroInput)?;
        let roots = complex_roots(minpoly, prec)?;
        debug_assert_eq!(roots.len(), n);
        let small = -(prec as i64) / 2;
        let is_real: Vec<bool> = roots.iter().map(|z| z.im.abs_le_pow2(small)).collect();
        let mut conj = vec![usize::MAX; n];
        for i in 0..n {
            if is_real[i] {
                conj[i] = i;
                continue;
            }
            let target = roots[i].conj();
            let best = (0..n)
                .filter(|&j| j != i)
                .min_by(|&a, &b| {
                    (&roots[a] - &target).norm_sqr().cmp(&(&roots[b] - &target).norm_sqr())
                })
                .ok_or_else(|| Error::Internal("no conjugate root".into()))?;
            conj[i] = best;
        }
        let vandermonde: Vec<Vec<BigComplex>> = roots
            .iter()
            .map(|z| {
                let mut row = Vec::with_capacity(n);
                let mut p = BigComplex::one(prec);
                for _ in 0..n {
                    row.push(p.clone());
                    p = &p * z;
                }
                row
            })
            .collect();
        let inverse = invert(&vandermonde, prec)?;
        Ok(EmbeddingSet { prec, roots, vandermonde, inverse, is_real, conj })
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Images of the element with power-basis coordinates `coeffs`.
    pub fn embed(&self, coeffs: &[Rational]) -> Vec<BigComplex> {
        let c: Vec<BigComplex> =
            coeffs.iter().map(|x| BigComplex::from_rational(x, self.prec)).collect();
        self.embed_complex(&c)
    }

    pub fn embed_complex(&self, coeffs: &[BigComplex]) -> Vec<BigComplex> {
        mat_vec(&self.vandermonde, coeffs, self.prec)
    }

    /// Power-basis coordinates from a vector of embedding images.
    pub fn coordinates(&self, images: &[BigComplex]) -> Vec<BigComplex> {
        mat_vec(&self.inverse, images, self.prec)
    }

    /// Matrix of the embeddings as `n x n` rows of `(re, im)` pairs in f64.
    pub fn embedding_matrix(&self) -> Vec<Vec<(f64, f64)>> {
        self.vandermonde.iter().map(|r| r.iter().map(BigComplex::to_f64).collect()).collect()
    }
}

fn mat_vec(m: &[Vec<BigComplex>], v: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(BigComplex::zero(prec), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

fn invert(m: &[Vec<BigComplex>], prec: u32) -> Result<Vec<Vec<BigComplex>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigComplex>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigComplex::one(prec) } else { BigComplex::zero(prec) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].norm_sqr().cmp(&a[y][col].norm_sqr()))
            .unwrap();
        if a[piv][col].is_zero() {
            return Err(Error::PrecisionExhausted { bits: prec, context: "singular Vandermonde".into() });
        }
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn ladder_rungs() {
        let l = PrecisionLadder::default();
        assert_eq!(l.rungs(), vec![256, 512, 1024, 4096]);
        let l = PrecisionLadder { start: 300, max: 1000 };
        assert_eq!(l.rungs(), vec![300, 600, 1000]);
    }

    #[test]
    fn zeta8_embeddings_round_trip() {
        let f = RatPoly::from_ints(&[1, 0, 0, 0, 1]);
        let e = EmbeddingSet::new(&f, 256).unwrap();
        assert!(e.is_real.iter().all(|r| !r));
        for i in 0..4 {
            assert_eq!(e.conj[e.conj[i]], i);
            assert_ne!(e.conj[i], i);
        }
        let c = vec![rat(3), rat(-1), rat(0), rat(2)];
        let back = e.coordinates(&e.embed(&c));
        for (b, want) in back.iter().zip(&c) {
            let d = &b.re - &BigFloat::from_rational(want, 256);
            assert!(d.abs_le_pow2(-200));
            assert!(b.im.abs_le_pow2(-200));
        }
    }

    #[test]
    fn real_flags_for_alpha() {
        let f = RatPoly::from_ints(&[-1, 0, -2, 0, 1]);
        let e = EmbeddingSet::new(&f, 256).unwrap();
        assert_eq!(e.is_real.iter().filter(|r| **r).count(), 2);
    }
}

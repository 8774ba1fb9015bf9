//! Roots in `K` of polynomials over `K`, by reconstruction from complex
//! embeddings, and certified square tests.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::{FieldElement, KPoly, NumberField};
use crate::embedding::{complex_roots_of, BigComplex};
use crate::error::{Error, Result};
use crate::exact::{cf_round, RatPoly, Rational};
use crate::finitefield::{ff_is_square, fppoly::FpPoly, ResidueField};

/// Largest polynomial degree accepted by [`nf_roots`].
pub const MAX_ROOT_DEGREE: usize = 24;
/// Largest number of embedding assignments swept per precision rung.
pub const MAX_ASSIGNMENTS: usize = 1 << 18;
const DENOMINATOR_BOUND_BITS: u32 = 64;

/// All roots of `poly` lying in its coefficient field, sorted, each verified
/// by exact evaluation.
pub fn nf_roots(poly: &KPoly) -> Result<Vec<FieldElement>> {
    let field = poly.field().clone();
    let deg = poly.degree().ok_or(Error::ZeroInput)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg > MAX_ROOT_DEGREE {
        return Err(Error::DegreeTooLarge(deg));
    }
    if deg == 1 {
        let r = -&poly.coeff(0).div(&poly.coeff(1))?;
        return Ok(vec![r]);
    }
    if field.degree() == 1 {
        let q = RatPoly::new(poly.coeffs().iter().map(|c| c.coeffs()[0].clone()).collect());
        let mut out: Vec<FieldElement> =
            q.rational_roots().into_iter().map(|r| FieldElement::from_rational(&field, r)).collect();
        out.sort();
        return Ok(out);
    }
    let sqfree = poly.squarefree_part()?;
    let target = sqfree.degree().unwrap_or(0);
    if target == 1 {
        return Ok(vec![-&sqfree.coeff(0)]);
    }

    let mut converged_any = false;
    for rung in 0..field.rung_count() {
        match sweep(&field, &sqfree, rung)? {
            Sweep::NoConvergence => continue,
            Sweep::Done { mut roots, near_miss } => {
                converged_any = true;
                roots.sort();
                roots.dedup();
                if roots.len() == target || !near_miss || rung + 1 == field.rung_count() {
                    return Ok(roots);
                }
            }
        }
    }
    Err(Error::PrecisionExhausted {
        bits: field.ladder().max,
        context: if converged_any { "root reconstruction".into() } else { "complex roots".into() },
    })
}

enum Sweep {
    NoConvergence,
    Done { roots: Vec<FieldElement>, near_miss: bool },
}

fn sweep(field: &Arc<NumberField>, poly: &KPoly, rung: usize) -> Result<Sweep> {
    let emb = match field.embeddings(rung) {
        Ok(e) => e,
        Err(Error::NonConvergence { .. }) => return Ok(Sweep::NoConvergence),
        Err(e) => return Err(e),
    };
    let prec = emb.prec;
    let n = emb.degree();
    let images: Vec<Vec<BigComplex>> = poly.coeffs().iter().map(|c| emb.embed(c.coeffs())).collect();
    let mut per_embedding: Vec<Vec<BigComplex>> = Vec::with_capacity(n);
    for i in 0..n {
        let coeffs: Vec<BigComplex> = images.iter().map(|img| img[i].clone()).collect();
        match complex_roots_of(&coeffs, prec) {
            Ok(r) => per_embedding.push(r),
            Err(Error::NonConvergence { .. }) => return Ok(Sweep::NoConvergence),
            Err(e) => return Err(e),
        }
    }
    // free choices: real embeddings take real roots, each conjugate pair is
    // represented by its lower index
    let small = -(prec as i64) / 2;
    let mut free: Vec<usize> = Vec::new();
    let mut choices: Vec<Vec<BigComplex>> = vec![Vec::new(); n];
    for i in 0..n {
        if emb.is_real[i] {
            choices[i] = per_embedding[i]
                .iter()
                .filter(|z| {
                    let scale = z.re.magnitude().unwrap_or(0).max(0);
                    z.im.abs_le_pow2(small + scale)
                })
                .map(|z| BigComplex::from_real(z.re.clone()))
                .collect();
            free.push(i);
        } else if emb.conj[i] > i {
            choices[i] = per_embedding[i].clone();
            free.push(i);
        }
    }
    if free.iter().any(|&i| choices[i].is_empty()) {
        return Ok(Sweep::Done { roots: Vec::new(), near_miss: false });
    }
    let total = free.iter().try_fold(1usize, |acc, &i| acc.checked_mul(choices[i].len()));
    if total.is_none_or(|t| t > MAX_ASSIGNMENTS) {
        return Err(Error::DegreeTooLarge(poly.degree().unwrap_or(0)));
    }
    let bound = BigInt::one() << DENOMINATOR_BOUND_BITS;
    let mut idx = vec![0usize; free.len()];
    let mut roots = Vec::new();
    let mut near_miss = false;
    let mut r = vec![BigComplex::zero(prec); n];
    loop {
        for (slot, &i) in free.iter().enumerate() {
            let z = &choices[i][idx[slot]];
            r[i] = z.clone();
            if emb.conj[i] != i {
                r[emb.conj[i]] = z.conj();
            }
        }
        let c = emb.coordinates(&r);
        let rounded: Option<Vec<Rational>> =
            c.iter().map(|z| cf_round(&z.re.to_rational(), prec, &bound)).collect();
        if let Some(coords) = rounded {
            let cand = FieldElement::new(field, coords);
            if poly.eval(&cand).is_zero() {
                if !roots.contains(&cand) {
                    roots.push(cand);
                }
            } else {
                near_miss = true;
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == free.len() {
                return Ok(Sweep::Done { roots, near_miss });
            }
            idx[k] += 1;
            if idx[k] < choices[free[k]].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Certificate that an element is not a square in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSquareCertificate {
    /// The image in `F_p[u]/(g)` is a nonzero non-square.
    Residue { p: u64, factor: FpPoly },
    /// A rational that is not the square of a rational (field `Q`).
    Rational,
}

impl NonSquareCertificate {
    pub fn to_json(&self) -> Value {
        match self {
            NonSquareCertificate::Residue { p, factor } => json!({ "p": p, "factor": factor }),
            NonSquareCertificate::Rational => json!("rational"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareResult {
    Square(FieldElement),
    NonSquare(NonSquareCertificate),
    Inconclusive,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Searches the first cached residue fields for a non-square witness.
pub fn residue_certificate(d: &FieldElement) -> Option<NonSquareCertificate> {
    certificate_from(d, d.field().residue_fields())
}

fn certificate_from(d: &FieldElement, primes: &[(u64, Vec<ResidueField>)]) -> Option<NonSquareCertificate> {
    for (p, fields) in primes {
        for rf in fields {
            let Ok(img) = rf.reduce(d.coeffs()) else { break };
            if img.is_empty() {
                continue;
            }
            if let Ok(false) = ff_is_square(rf, &img) {
                return Some(NonSquareCertificate::Residue { p: *p, factor: rf.g.clone() });
            }
        }
    }
    None
}

pub fn nf_is_square(d: &FieldElement) -> Result<SquareResult> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = d.field();
    if let Some(r) = d.as_rational() {
        if let Some(s) = rational_sqrt(r) {
            return Ok(SquareResult::Square(FieldElement::from_rational(field, s)));
        }
        if field.degree() == 1 {
            return Ok(SquareResult::NonSquare(
                residue_certificate(d).unwrap_or(NonSquareCertificate::Rational),
            ));
        }
    }
    if let Some(cert) = residue_certificate(d) {
        return Ok(SquareResult::NonSquare(cert));
    }
    let x2 = KPoly::new(field, vec![-d, FieldElement::zero(field), FieldElement::one(field)]);
    let roots = nf_roots(&x2)?;
    if let Some(r) = roots.into_iter().max() {
        return Ok(SquareResult::Square(r));
    }
    Ok(match certificate_from(d, field.extended_residue_fields()) {
        Some(cert) => SquareResult::NonSquare(cert),
        None => SquareResult::Inconclusive,
    })
}

/// `Some(b)` with `b^2 = d`, `None` for a certified non-square; zero maps to
/// zero.
pub fn nf_sqrt(d: &FieldElement) -> Result<Option<FieldElement>> {
    if d.is_zero() {
        return Ok(Some(d.clone()));
    }
    match nf_is_square(d)? {
        SquareResult::Square(b) => Ok(Some(b)),
        SquareResult::NonSquare(_) => Ok(None),
        SquareResult::Inconclusive => Err(Error::Inconclusive),
    }
}

pub fn nf_has_root(f_sub: &RatPoly, field: &Arc<NumberField>) -> Result<Option<FieldElement>> {
    if f_sub.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(nf_roots(&KPoly::from_rat_poly(field, f_sub))?.into_iter().next())
}

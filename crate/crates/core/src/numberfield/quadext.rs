use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use super::roots::{nf_is_square, nf_sqrt, NonSquareCertificate, SquareResult};
use super::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_frac};

/// `L = K[T]/(T^2 + b T + c)` with a certified non-square discriminant.
#[derive(Clone, Debug)]
pub struct RelQuadExt {
    pub base: Arc<NumberField>,
    pub b: FieldElement,
    pub c: FieldElement,
    pub disc: FieldElement,
    pub certificate: NonSquareCertificate,
}

#[derive(Clone, Debug)]
pub enum QuadExtOutcome {
    Extension(Arc<RelQuadExt>),
    Reducible(Vec<FieldElement>),
}

/// Builds `K[T]/(T^2 + b T + c)` or returns the roots in `K`.
pub fn quad_ext_make(b: &FieldElement, c: &FieldElement) -> Result<QuadExtOutcome> {
    let base = b.field().clone();
    let disc = &b.square() - &c.scale(&rat(4));
    let half = rat_frac(1, 2);
    if disc.is_zero() {
        return Ok(QuadExtOutcome::Reducible(vec![(-b).scale(&half)]));
    }
    match nf_is_square(&disc)? {
        SquareResult::Square(r) => {
            let mut roots = vec![(&(-b) + &r).scale(&half), (&(-b) - &r).scale(&half)];
            roots.sort();
            Ok(QuadExtOutcome::Reducible(roots))
        }
        SquareResult::NonSquare(certificate) => Ok(QuadExtOutcome::Extension(Arc::new(RelQuadExt {
            base,
            b: b.clone(),
            c: c.clone(),
            disc,
            certificate,
        }))),
        SquareResult::Inconclusive => Err(Error::Inconclusive),
    }
}

impl RelQuadExt {
    /// `T^2 - d`.
    pub fn sqrt_of(d: &FieldElement) -> Result<QuadExtOutcome> {
        quad_ext_make(&FieldElement::zero(d.field()), &-d)
    }

    pub fn base(&self) -> &Arc<NumberField> {
        &self.base
    }

    pub fn same_presentation(&self, other: &RelQuadExt) -> bool {
        self.b == other.b && self.c == other.c
    }

    /// Coefficients of the monic `Q(T)`, constant first.
    pub fn ext_poly(&self) -> [FieldElement; 3] {
        [self.c.clone(), self.b.clone(), FieldElement::one(&self.base)]
    }

    pub fn ext_poly_json(&self) -> Value {
        Value::Array(self.ext_poly().iter().map(FieldElement::to_json).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({ "ext_poly": self.ext_poly_json(), "certificate": self.certificate.to_json() })
    }

    pub fn display_poly(&self) -> String {
        format!("T^2 + ({})*T + ({})", self.b, self.c)
    }
}

/// Image of the generator of `from` inside `to`, when the two extensions are
/// isomorphic over the base.
pub fn ext_embedding(from: &RelQuadExt, to: &Arc<RelQuadExt>) -> Result<Option<RelElement>> {
    if from.same_presentation(to) {
        return Ok(Some(RelElement::generator(to)));
    }
    // disc_from = c^2 disc_to  =>  w_from = c w_to with w = 2s + b
    let ratio = from.disc.div(&to.disc)?;
    let Some(c) = nf_sqrt(&ratio)? else { return Ok(None) };
    let half = rat_frac(1, 2);
    let c0 = (&(&c * &to.b) - &from.b).scale(&half);
    Ok(Some(RelElement::new(to, c0, c)))
}

/// `c0 + c1 s` in a relative quadratic extension.
#[derive(Clone)]
pub struct RelElement {
    pub ext: Arc<RelQuadExt>,
    pub c0: FieldElement,
    pub c1: FieldElement,
}

impl RelElement {
    pub fn new(ext: &Arc<RelQuadExt>, c0: FieldElement, c1: FieldElement) -> Self {
        RelElement { ext: ext.clone(), c0, c1 }
    }

    pub fn from_base(ext: &Arc<RelQuadExt>, k: FieldElement) -> Self {
        let z = FieldElement::zero(&ext.base);
        Self::new(ext, k, z)
    }

    pub fn from_int(ext: &Arc<RelQuadExt>, n: i64) -> Self {
        Self::from_base(ext, FieldElement::from_int(&ext.base, n))
    }

    pub fn zero(ext: &Arc<RelQuadExt>) -> Self {
        Self::from_int(ext, 0)
    }

    pub fn one(ext: &Arc<RelQuadExt>) -> Self {
        Self::from_int(ext, 1)
    }

    pub fn generator(ext: &Arc<RelQuadExt>) -> Self {
        Self::new(ext, FieldElement::zero(&ext.base), FieldElement::one(&ext.base))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn in_base(&self) -> Option<&FieldElement> {
        self.c1.is_zero().then_some(&self.c0)
    }

    /// The nontrivial automorphism over the base, `s -> -b - s`.
    pub fn conj(&self) -> Self {
        Self::new(&self.ext, &self.c0 - &(&self.ext.b * &self.c1), -&self.c1)
    }

    pub fn norm(&self) -> FieldElement {
        (self * &self.conj()).c0
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        Self::new(&self.ext, &self.c0 * k, &self.c1 * k)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        let ninv = n.inv()?;
        Ok(self.conj().scale(&ninv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.ext), |acc, _| &acc * self)
    }

    /// Re-expresses `self` in `to` given the image of this extension's
    /// generator.
    pub fn map_into(&self, gen_image: &RelElement) -> RelElement {
        let to = &gen_image.ext;
        &RelElement::from_base(to, self.c0.clone()) + &gen_image.scale(&self.c1)
    }

    pub fn to_json(&self) -> Value {
        json!({ "c0": self.c0.to_json(), "c1": self.c1.to_json(), "ext_poly": self.ext.ext_poly_json() })
    }

    pub fn key(&self) -> (Vec<String>, Vec<String>) {
        (self.c0.to_strings(), self.c1.to_strings())
    }
}

/// A square root of `d` in `L`, `None` when `d` is not a square there.
pub fn rel_sqrt(d: &RelElement) -> Result<Option<RelElement>> {
    if d.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ext = &d.ext;
    let half = rat_frac(1, 2);
    // d = a + e w with w = 2s + b, w^2 = D
    let e = d.c1.scale(&half);
    let a = &d.c0 - &(&e * &ext.b);
    let dd = &ext.disc;
    let from_pq = |p: &FieldElement, q: &FieldElement| {
        RelElement::new(ext, p + &(q * &ext.b), q.scale(&rat(2)))
    };
    let mut candidates = Vec::new();
    if e.is_zero() {
        if let Some(p) = nf_sqrt(&a)? {
            candidates.push(from_pq(&p, &FieldElement::zero(&ext.base)));
        }
        if let Some(q) = nf_sqrt(&a.div(dd)?)? {
            candidates.push(from_pq(&FieldElement::zero(&ext.base), &q));
        }
    } else {
        let norm = &a.square() - &(dd * &e.square());
        let Some(n) = nf_sqrt(&norm)? else { return Ok(None) };
        for sign in [1, -1] {
            let p2 = (&a + &n.scale(&rat(sign))).scale(&half);
            if p2.is_zero() {
                continue;
            }
            if let Some(p) = nf_sqrt(&p2)? {
                let q = e.div(&p.scale(&rat(2)))?;
                candidates.push(from_pq(&p, &q));
            }
        }
    }
    Ok(candidates.into_iter().find(|r| r.square() == *d))
}

impl fmt::Debug for RelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelElement({self})")
    }
}

impl fmt::Display for RelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else if self.c0.is_zero() {
            write!(f, "({})*s", self.c1)
        } else {
            write!(f, "({})*s + ({})", self.c1, self.c0)
        }
    }
}

impl PartialEq for RelElement {
    fn eq(&self, other: &Self) -> bool {
        self.c0 == other.c0 && self.c1 == other.c1 && self.ext.same_presentation(&other.ext)
    }
}

impl Eq for RelElement {}

impl Hash for RelElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c0.hash(state);
        self.c1.hash(state);
    }
}

impl Add for &RelElement {
    type Output = RelElement;
    fn add(self, rhs: &RelElement) -> RelElement {
        RelElement::new(&self.ext, &self.c0 + &rhs.c0, &self.c1 + &rhs.c1)
    }
}

impl Sub for &RelElement {
    type Output = RelElement;
    fn sub(self, rhs: &RelElement) -> RelElement {
        RelElement::new(&self.ext, &self.c0 - &rhs.c0, &self.c1 - &rhs.c1)
    }
}

impl Mul for &RelElement {
    type Output = RelElement;
    fn mul(self, rhs: &RelElement) -> RelElement {
        // s^2 = -b s - c
        let hi = &self.c1 * &rhs.c1;
        let c0 = &(&self.c0 * &rhs.c0) - &(&hi * &self.ext.c);
        let c1 = &(&(&self.c0 * &rhs.c1) + &(&self.c1 * &rhs.c0)) - &(&hi * &self.ext.b);
        RelElement::new(&self.ext, c0, c1)
    }
}

impl Neg for &RelElement {
    type Output = RelElement;
    fn neg(self) -> RelElement {
        RelElement::new(&self.ext, -&self.c0, -&self.c1)
    }
}


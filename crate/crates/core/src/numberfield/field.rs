use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::embedding::{EmbeddingSet, PrecisionLadder};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat, RatPoly, Rational};
use crate::finitefield::{good_residue_fields, ResidueField};

/// Number of good odd primes whose residue fields back non-square
/// certificates.
pub const CERTIFICATE_PRIMES: usize = 20;
/// Fallback depth when the first primes give no certificate; elements of a
/// proper subfield only fail Euler's test at primes whose residue degree
/// does not grow, which can be rare in large cyclotomic fields.
pub const EXTENDED_CERTIFICATE_PRIMES: usize = 240;

/// `K = Q[t]/(f)` with `f` monic and irreducible.
pub struct NumberField {
    minpoly: RatPoly,
    label: Option<String>,
    /// Coordinates of `t^(n+i)` for `i < n - 1`.
    reduction: Vec<Vec<Rational>>,
    ladder: PrecisionLadder,
    embeddings: Vec<OnceLock<Result<EmbeddingSet>>>,
    residues: OnceLock<Vec<(u64, Vec<ResidueField>)>>,
    extended_residues: OnceLock<Vec<(u64, Vec<ResidueField>)>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("minpoly", &self.minpoly.to_string())
            .field("label", &self.label)
            .finish()
    }
}

impl NumberField {
    pub fn new(minpoly: RatPoly, label: Option<String>) -> Result<Arc<Self>> {
        Self::with_ladder(minpoly, label, PrecisionLadder::from_env())
    }

    pub fn with_ladder(minpoly: RatPoly, label: Option<String>, ladder: PrecisionLadder) -> Result<Arc<Self>> {
        let n = match minpoly.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::InvalidInput("minimal polynomial must have degree >= 1".into())),
        };
        if !minpoly.is_monic() {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        if n > 1 && !minpoly.rational_roots().is_empty() {
            return Err(Error::InvalidInput(format!("{minpoly} has a rational root")));
        }
        if minpoly.gcd(&minpoly.derivative()).degree() != Some(0) {
            return Err(Error::InvalidInput(format!("{minpoly} is not squarefree")));
        }
        let mut reduction = Vec::new();
        if n > 1 {
            // t^n = -(c_0 + ... + c_{n-1} t^{n-1})
            let mut cur: Vec<Rational> = minpoly.coeffs()[..n].iter().map(|c| -c).collect();
            for _ in 0..n - 1 {
                reduction.push(cur.clone());
                let top = cur[n - 1].clone();
                let mut next = vec![Rational::zero(); n];
                next[1..n].clone_from_slice(&cur[..n - 1]);
                for (x, c) in next.iter_mut().zip(minpoly.coeffs()) {
                    *x -= &top * c;
                }
                cur = next;
            }
        }
        let rungs = ladder.rungs().len();
        let field = NumberField {
            minpoly,
            label,
            reduction,
            ladder,
            embeddings: (0..rungs).map(|_| OnceLock::new()).collect(),
            residues: OnceLock::new(),
            extended_residues: OnceLock::new(),
        };
        // the starting rung is built eagerly
        if n > 1 {
            let _ = field.embeddings(0);
        }
        Ok(Arc::new(field))
    }

    pub fn rationals() -> Arc<Self> {
        Self::new(RatPoly::from_ints(&[0, 1]), Some("Q".into())).expect("Q is a field")
    }

    pub fn minpoly(&self) -> &RatPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.coeffs().len() - 1
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ladder(&self) -> &PrecisionLadder {
        &self.ladder
    }

    pub fn rung_count(&self) -> usize {
        self.embeddings.len()
    }

    pub fn embeddings(&self, rung: usize) -> Result<&EmbeddingSet> {
        let prec = *self.ladder.rungs().get(rung).ok_or(Error::PrecisionExhausted {
            bits: self.ladder.max,
            context: "embedding".into(),
        })?;
        self.embeddings[rung]
            .get_or_init(|| EmbeddingSet::new(&self.minpoly, prec))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Residue fields at the first good odd primes, computed once.
    pub fn residue_fields(&self) -> &[(u64, Vec<ResidueField>)] {
        self.residues.get_or_init(|| good_residue_fields(&self.minpoly, CERTIFICATE_PRIMES))
    }

    /// Residue fields at the good odd primes after the first
    /// [`CERTIFICATE_PRIMES`], up to [`EXTENDED_CERTIFICATE_PRIMES`] in total.
    pub fn extended_residue_fields(&self) -> &[(u64, Vec<ResidueField>)] {
        self.extended_residues.get_or_init(|| {
            let mut all = good_residue_fields(&self.minpoly, EXTENDED_CERTIFICATE_PRIMES);
            all.split_off(self.residue_fields().len().min(all.len()))
        })
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "minpoly": self.minpoly.to_strings() });
        if let Some(l) = &self.label {
            v["label"] = json!(l);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Arc<Self>> {
        let coeffs = v["minpoly"]
            .as_array()
            .ok_or_else(|| Error::InvalidInput("field spec needs a \"minpoly\" array".into()))?
            .iter()
            .map(|c| c.as_str().map(parse_rational).unwrap_or_else(|| Err(Error::InvalidInput(c.to_string()))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(RatPoly::new(coeffs), v["label"].as_str().map(str::to_string))
    }

    fn reduce_product(&self, mut prod: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        if prod.len() <= n {
            prod.resize(n, Rational::zero());
            return prod;
        }
        let high: Vec<Rational> = prod.split_off(n);
        for (c, red) in high.iter().zip(&self.reduction) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in prod.iter_mut().zip(red) {
                *x += c * r;
            }
        }
        prod
    }
}

/// An element of `K` in the power basis `1, t, ..., t^(n-1)`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    /// Reduces arbitrary-length coordinates modulo the minimal polynomial.
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        let n = field.degree();
        let coeffs = if coeffs.len() <= n {
            let mut c = coeffs;
            c.resize(n, Rational::zero());
            c
        } else if coeffs.len() < 2 * n {
            field.reduce_product(coeffs)
        } else {
            let r = RatPoly::new(coeffs).rem(&field.minpoly).expect("nonzero modulus");
            let mut c = r.coeffs().to_vec();
            c.resize(n, Rational::zero());
            c
        };
        FieldElement { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Arc<NumberField>, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Self::new(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of `t`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn from_poly(field: &Arc<NumberField>, p: &RatPoly) -> Self {
        Self::new(field, p.coeffs().to_vec())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        let (g, s, _) = self.to_poly().ext_gcd(&self.field.minpoly);
        let g0 = g.coeff(0);
        if g.degree() != Some(0) {
            return Err(Error::Internal("minimal polynomial is reducible".into()));
        }
        Ok(Self::from_poly(&self.field, &s.scale(&g0.recip())))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = sq.square();
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_strings())
    }

    pub fn from_strings<S: AsRef<str>>(field: &Arc<NumberField>, parts: &[S]) -> Result<Self> {
        if parts.len() != field.degree() {
            return Err(Error::InvalidInput(format!(
                "element needs {} coordinates, got {}",
                field.degree(),
                parts.len()
            )));
        }
        let c = parts.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, c))
    }

    /// Image under the embedding sending the generator to `gen_image`.
    pub fn map_to(&self, gen_image: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(gen_image.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * gen_image) + &FieldElement::from_rational(gen_image.field(), c.clone());
        }
        acc
    }

    /// Rational images under every complex embedding at rung 0.
    pub fn embed(&self) -> Result<Vec<crate::embedding::BigComplex>> {
        Ok(self.field.embeddings(0)?.embed(&self.coeffs))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string();
        write!(f, "{}", s.replace('x', "t"))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && NumberField::same(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(NumberField::same(&self.field, &rhs.field));
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(NumberField::same(&self.field, &rhs.field));
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        debug_assert!(NumberField::same(&self.field, &rhs.field));
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement { field: self.field.clone(), coeffs: self.field.reduce_product(prod) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

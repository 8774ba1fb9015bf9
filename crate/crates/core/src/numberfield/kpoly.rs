use std::fmt;
use std::sync::Arc;

use super::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::exact::RatPoly;

/// Dense polynomial with coefficients in `K`, constant term first.
#[derive(Clone)]
pub struct KPoly {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(field: &Arc<NumberField>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        KPoly { field: field.clone(), coeffs }
    }

    pub fn from_rat_poly(field: &Arc<NumberField>, p: &RatPoly) -> Self {
        Self::new(field, p.coeffs().iter().map(|c| FieldElement::from_rational(field, c.clone())).collect())
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(&self.field), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&crate::exact::rat(i as i64))).collect(),
        )
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.coeffs.last().ok_or(Error::ZeroInput)?;
        let inv = lead.inv()?;
        Ok(Self::new(&self.field, self.coeffs.iter().map(|c| c * &inv).collect()))
    }

    pub fn div_rem(&self, den: &KPoly) -> Result<(KPoly, KPoly)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let inv = den.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((KPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![FieldElement::zero(&self.field); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in den.coeffs.iter().enumerate() {
                r[k - dd + j] = &r[k - dd + j] - &(&c * dj);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((KPoly::new(&self.field, q), KPoly::new(&self.field, r)))
    }

    /// Monic gcd; zero when both inputs are zero.
    pub fn gcd(&self, other: &KPoly) -> Result<KPoly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Monic squarefree part (characteristic zero).
    pub fn squarefree_part(&self) -> Result<KPoly> {
        let g = self.gcd(&self.derivative())?;
        self.div_rem(&g)?.0.monic()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(FieldElement::to_json).collect())
    }
}

impl std::ops::Mul for &KPoly {
    type Output = KPoly;
    fn mul(self, rhs: &KPoly) -> KPoly {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut out = vec![FieldElement::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        KPoly::new(&self.field, out)
    }
}

impl std::ops::Sub for &KPoly {
    type Output = KPoly;
    fn sub(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl std::ops::Add for &KPoly {
    type Output = KPoly;
    fn add(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        KPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for KPoly {}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("({c})")).collect();
        write!(f, "KPoly[{}]", parts.join(", "))
    }
}

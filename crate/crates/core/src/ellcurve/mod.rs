//! The curves `y^2 = x^3 + a x` (`a = 4` and `a = -4`) over a number field,
//! their torsion, and the quartic model `r^2 = (s^2+4)(s^2-4)`.

mod divpoly;
mod torsion;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, Rational};
use crate::numberfield::{FieldElement, NumberField};

pub use divpoly::{division_poly_over_q, ec_division_poly};
pub use torsion::{ec_halve, ec_torsion, ec_torsion_bound, TorsionBound, TorsionTable};

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub field: Arc<NumberField>,
    pub a: Rational,
}

impl CurveSpec {
    pub fn new(field: &Arc<NumberField>, a: Rational) -> Result<Self> {
        if a == rat(0) {
            return Err(Error::InvalidInput("singular curve".into()));
        }
        Ok(CurveSpec { field: field.clone(), a })
    }

    /// `y^2 = x^3 + 4x`
    pub fn e1(field: &Arc<NumberField>) -> Self {
        CurveSpec { field: field.clone(), a: rat(4) }
    }

    /// `y^2 = x^3 - 4x`
    pub fn e2(field: &Arc<NumberField>) -> Self {
        CurveSpec { field: field.clone(), a: rat(-4) }
    }

    pub fn name(&self) -> String {
        match format_rational(&self.a).as_str() {
            "4" => "E1".into(),
            "-4" => "E2".into(),
            a => format!("y^2 = x^3 + {a}x"),
        }
    }

    /// `x^3 + a x`
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        &(&x.square() * x) + &x.scale(&self.a)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<CurvePoint> {
        let p = CurvePoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::InvalidInput(format!("{p} is not on {}", self.name())))
        }
    }

    pub fn point_from_ints(&self, x: &[i64], y: &[i64]) -> Result<CurvePoint> {
        self.point(FieldElement::from_ints(&self.field, x), FieldElement::from_ints(&self.field, y))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CurvePoint::Infinity => json!("infinity"),
            CurvePoint::Affine { x, y } => json!([x.to_json(), y.to_json()]),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

pub fn ec_neg(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
    }
}

pub fn ec_add(curve: &CurveSpec, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return q.clone(),
        (_, CurvePoint::Infinity) => return p.clone(),
        (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return CurvePoint::Infinity;
        }
        let num = &x1.square().scale(&rat(3)) + &FieldElement::from_rational(&curve.field, curve.a.clone());
        num.div(&y1.scale(&rat(2))).expect("y1 != 0")
    } else {
        (y2 - y1).div(&(x2 - x1)).expect("x1 != x2")
    };
    let x3 = &(&lambda.square() - x1) - x2;
    let y3 = &(&lambda * &(x1 - &x3)) - y1;
    CurvePoint::Affine { x: x3, y: y3 }
}

pub fn ec_double(curve: &CurveSpec, p: &CurvePoint) -> CurvePoint {
    ec_add(curve, p, p)
}

pub fn ec_mul(curve: &CurveSpec, p: &CurvePoint, k: u64) -> CurvePoint {
    let mut acc = CurvePoint::Infinity;
    let mut base = p.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = ec_add(curve, &acc, &base);
        }
        base = ec_double(curve, &base);
        k >>= 1;
    }
    acc
}

/// Order of a torsion point, searched up to `limit`.
pub fn ec_order(curve: &CurveSpec, p: &CurvePoint, limit: u64) -> Option<u64> {
    let mut q = p.clone();
    for k in 1..=limit {
        if q.is_infinity() {
            return Some(k);
        }
        q = ec_add(curve, &q, p);
    }
    None
}

/// Affine points `(s, r)` of `r^2 = (s^2+4)(s^2-4)` over `K`, from the
/// isomorphism `(x, y) -> (2(x+2)/(x-2), 16y/(x-2)^2)` applied to `E1(K)`.
pub fn h3_points(field: &Arc<NumberField>, e1_torsion: &TorsionTable) -> Vec<(FieldElement, FieldElement)> {
    let two = FieldElement::from_int(field, 2);
    let mut out = Vec::new();
    for p in &e1_torsion.points {
        match p {
            CurvePoint::Infinity => out.push((two.clone(), FieldElement::zero(field))),
            CurvePoint::Affine { x, y } => {
                let d = x - &two;
                if d.is_zero() {
                    continue;
                }
                let dinv = d.inv().expect("nonzero");
                let s = (&(x + &two) * &dinv).scale(&rat(2));
                let r = (y * &dinv.square()).scale(&rat(16));
                out.push((s, r));
            }
        }
    }
    out.sort();
    out
}

pub fn on_h3(s: &FieldElement, r: &FieldElement) -> bool {
    let s2 = s.square();
    let four = FieldElement::from_int(s.field(), 4);
    r.square() == &(&s2 + &four) * &(&s2 - &four)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::preset;

    #[test]
    fn addition_examples() {
        let q = NumberField::rationals();
        let e1 = CurveSpec::e1(&q);
        let o = e1.point_from_ints(&[0], &[0]).unwrap();
        assert_eq!(ec_add(&e1, &o, &o), CurvePoint::Infinity);
        let p = e1.point_from_ints(&[2], &[4]).unwrap();
        assert_eq!(ec_add(&e1, &p, &p), o);
        let e2 = CurveSpec::e2(&q);
        let a = e2.point_from_ints(&[2], &[0]).unwrap();
        let b = e2.point_from_ints(&[-2], &[0]).unwrap();
        assert_eq!(ec_add(&e2, &a, &b), e2.point_from_ints(&[0], &[0]).unwrap());
        assert_eq!(ec_order(&e1, &p, 10), Some(4));
    }

    #[test]
    fn h3_examples() {
        let q = NumberField::rationals();
        let t = ec_torsion(&CurveSpec::e1(&q)).unwrap();
        let pts = h3_points(&q, &t);
        let two = FieldElement::from_int(&q, 2);
        let zero = FieldElement::zero(&q);
        assert_eq!(pts, vec![(-&two, zero.clone()), (two, zero)]);
        let qi = preset("Qi").unwrap();
        let t = ec_torsion(&CurveSpec::e1(&qi)).unwrap();
        let pts = h3_points(&qi, &t);
        assert!(pts.contains(&(FieldElement::zero(&qi), FieldElement::from_ints(&qi, &[0, 4]))));
        for (s, r) in &pts {
            assert!(on_h3(s, r));
        }
    }
}

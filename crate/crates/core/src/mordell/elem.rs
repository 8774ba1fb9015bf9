use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::Result;
use crate::exact::rat;
use crate::numberfield::{
    nf_generated_degree, quad_ext_make, FieldElement, NumberField, QuadExtOutcome, RelElement, RelQuadExt,
};

/// A coordinate: either in the base field or in a relative quadratic
/// extension of it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Base(FieldElement),
    Rel(RelElement),
}

impl Elem {
    pub fn base_field(&self) -> &Arc<NumberField> {
        match self {
            Elem::Base(k) => k.field(),
            Elem::Rel(r) => &r.ext.base,
        }
    }

    pub fn ext(&self) -> Option<&Arc<RelQuadExt>> {
        match self {
            Elem::Base(_) => None,
            Elem::Rel(r) => Some(&r.ext),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Base(k) => k.is_zero(),
            Elem::Rel(r) => r.is_zero(),
        }
    }

    pub fn lift(&self, ext: &Arc<RelQuadExt>) -> RelElement {
        match self {
            Elem::Base(k) => RelElement::from_base(ext, k.clone()),
            Elem::Rel(r) => r.clone(),
        }
    }

    /// Drops to the base field when the `s`-coordinate vanishes.
    pub fn normalized(self) -> Elem {
        match self {
            Elem::Rel(r) if r.c1.is_zero() => Elem::Base(r.c0),
            e => e,
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Base(k) => Elem::Base(-k),
            Elem::Rel(r) => Elem::Rel(-r),
        }
    }

    pub fn conj(&self) -> Elem {
        match self {
            Elem::Base(k) => Elem::Base(k.clone()),
            Elem::Rel(r) => Elem::Rel(r.conj()),
        }
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Base(a), Elem::Base(b)) => Elem::Base(a * b),
            (Elem::Rel(a), b) => Elem::Rel(a * &b.lift(&a.ext)),
            (a, Elem::Rel(b)) => Elem::Rel(&a.lift(&b.ext) * b),
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Base(a), Elem::Base(b)) => Elem::Base(a + b),
            (Elem::Rel(a), b) => Elem::Rel(a + &b.lift(&a.ext)),
            (a, Elem::Rel(b)) => Elem::Rel(&a.lift(&b.ext) + b),
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn square(&self) -> Elem {
        self.mul(self)
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(match self {
            Elem::Base(k) => Elem::Base(k.inv()?),
            Elem::Rel(r) => Elem::Rel(r.inv()?),
        })
    }

    pub fn div(&self, other: &Elem) -> Result<Elem> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_int(&self, n: i64) -> Elem {
        match self {
            Elem::Base(k) => Elem::Base(k.scale(&rat(n))),
            Elem::Rel(r) => Elem::Rel(r.scale(&FieldElement::from_int(&r.ext.base, n))),
        }
    }

    pub fn constant_like(&self, n: i64) -> Elem {
        Elem::Base(FieldElement::from_int(self.base_field(), n))
    }

    pub fn is_int(&self, n: i64) -> bool {
        match self {
            Elem::Base(k) => *k == FieldElement::from_int(k.field(), n),
            Elem::Rel(r) => r.c1.is_zero() && r.c0 == FieldElement::from_int(&r.ext.base, n),
        }
    }

    /// Re-expresses a coordinate of `ext` through the image of its generator.
    pub fn map_into(&self, gen_image: &RelElement) -> Elem {
        match self {
            Elem::Base(k) => Elem::Base(k.clone()),
            Elem::Rel(r) => Elem::Rel(r.map_into(gen_image)).normalized(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Elem::Base(k) => k.to_json(),
            Elem::Rel(r) => json!({ "c0": r.c0.to_json(), "c1": r.c1.to_json() }),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Base(k) => write!(f, "{k}"),
            Elem::Rel(r) => write!(f, "{r}"),
        }
    }
}

/// An affine point `(x, y)` of `x^4 + y^4 = 1` over `K` or over a quadratic
/// extension of `K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FermatPoint {
    pub x: Elem,
    pub y: Elem,
}

impl FermatPoint {
    /// Puts both coordinates in a common field, dropping to `K` when possible.
    pub fn new(x: Elem, y: Elem) -> Self {
        let (x, y) = (x.normalized(), y.normalized());
        match (x.ext().cloned(), y.ext().cloned()) {
            (Some(e), None) => FermatPoint { y: Elem::Rel(y.lift(&e)), x },
            (None, Some(e)) => FermatPoint { x: Elem::Rel(x.lift(&e)), y },
            _ => FermatPoint { x, y },
        }
    }

    pub fn ext(&self) -> Option<&Arc<RelQuadExt>> {
        self.x.ext()
    }

    pub fn base_field(&self) -> &Arc<NumberField> {
        self.x.base_field()
    }

    pub fn on_curve(&self) -> bool {
        self.x.square().square().add(&self.y.square().square()).is_int(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.x.is_zero() || self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        FermatPoint { x: self.x.conj(), y: self.y.conj() }
    }

    /// The eight maps `(x, y) -> (±x, ±y), (±y, ±x)`.
    pub fn sign_swaps(&self) -> Vec<FermatPoint> {
        let mut out = Vec::with_capacity(8);
        for (a, b) in [(&self.x, &self.y), (&self.y, &self.x)] {
            for sa in [false, true] {
                for sb in [false, true] {
                    let a = if sa { a.neg() } else { a.clone() };
                    let b = if sb { b.neg() } else { b.clone() };
                    out.push(FermatPoint { x: a, y: b });
                }
            }
        }
        out
    }

    /// Degree over Q of `Q(x, y)`.
    pub fn degree_over_q(&self) -> usize {
        match (&self.x, &self.y) {
            (Elem::Base(x), Elem::Base(y)) => nf_generated_degree(&[x.clone(), y.clone()]),
            _ => {
                let e = self.ext().expect("relative point").clone();
                nf_generated_degree(&[self.x.lift(&e), self.y.lift(&e)])
            }
        }
    }

    /// Absolute degree of the field the coordinates are written in.
    pub fn ambient_degree(&self) -> usize {
        let n = self.base_field().degree();
        if self.ext().is_some() {
            2 * n
        } else {
            n
        }
    }

    pub fn map_into(&self, gen_image: &RelElement) -> FermatPoint {
        FermatPoint::new(self.x.map_into(gen_image), self.y.map_into(gen_image))
    }

    /// The same point over a larger base field, given the image of the
    /// old generator there.
    pub fn base_change(&self, gen_image: &FieldElement) -> Result<FermatPoint> {
        let map = |k: &FieldElement| k.map_to(gen_image);
        let Some(e) = self.ext() else {
            let (Elem::Base(x), Elem::Base(y)) = (&self.x, &self.y) else { unreachable!() };
            return Ok(FermatPoint::new(Elem::Base(map(x)), Elem::Base(map(y))));
        };
        let coords = |c: &Elem| {
            let r = c.lift(e);
            (map(&r.c0), map(&r.c1))
        };
        let ((x0, x1), (y0, y1)) = (coords(&self.x), coords(&self.y));
        Ok(match quad_ext_make(&map(&e.b), &map(&e.c))? {
            QuadExtOutcome::Extension(f) => FermatPoint::new(
                Elem::Rel(RelElement::new(&f, x0, x1)),
                Elem::Rel(RelElement::new(&f, y0, y1)),
            ),
            QuadExtOutcome::Reducible(roots) => {
                let s = &roots[0];
                FermatPoint::new(Elem::Base(&x0 + &(&x1 * s)), Elem::Base(&y0 + &(&y1 * s)))
            }
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "x": self.x.to_json(), "y": self.y.to_json() });
        if let Some(e) = self.ext() {
            v["ext_poly"] = e.ext_poly_json();
        }
        v
    }

    /// Canonical serialization, used to choose orbit representatives.
    pub fn serialized(&self) -> String {
        self.to_json().to_string()
    }
}

impl fmt::Debug for FermatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FermatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)?;
        if let Some(e) = self.ext() {
            write!(f, " over {}", e.display_poly())?;
        }
        Ok(())
    }
}

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::elem::{Elem, FermatPoint};
use crate::ellcurve::TorsionTable;
use crate::error::{Error, Result};
use crate::exact::rat;
use crate::numberfield::{nf_sqrt, FieldElement, NumberField, QuadExtOutcome, RelElement, RelQuadExt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    E1,
    E2,
    H3,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// `x^2 = 4s/(s^2+4)` and `y^2 = (s^2-4)/(s^2+4)` for one parameter value.
#[derive(Clone, Debug)]
pub struct StepIRecord {
    pub s: FieldElement,
    pub source: Source,
    pub xsq: FieldElement,
    pub ysq: FieldElement,
}

impl StepIRecord {
    /// `None` when `s^2 + 4 = 0`.
    pub fn new(s: FieldElement, source: Source) -> Option<Self> {
        let s2 = s.square();
        let four = FieldElement::from_int(s.field(), 4);
        let d = (&s2 + &four).inv().ok()?;
        let xsq = (&s * &d).scale(&rat(4));
        let ysq = &(&s2 - &four) * &d;
        Some(StepIRecord { s, source, xsq, ysq })
    }

    pub fn to_json(&self, point: &FermatPoint) -> Value {
        json!({
            "s": self.s.to_json(),
            "source": self.source.to_string(),
            "x_squared": self.xsq.to_json(),
            "y_squared": self.ysq.to_json(),
            "point": point.to_json(),
        })
    }
}

/// Parameter values from the affine torsion points of `E1`, `E2` and `H3`,
/// first source wins on repeats.
pub fn step1_parameters(
    e1: &TorsionTable,
    e2: &TorsionTable,
    h3: &[(FieldElement, FieldElement)],
) -> Vec<(Source, FieldElement)> {
    let mut out: Vec<(Source, FieldElement)> = Vec::new();
    let candidates = e1
        .affine()
        .map(|(x, _)| (Source::E1, x.clone()))
        .chain(e2.affine().map(|(x, _)| (Source::E2, x.clone())))
        .chain(h3.iter().map(|(s, _)| (Source::H3, s.clone())));
    for (src, s) in candidates {
        if !out.iter().any(|(_, t)| *t == s) {
            out.push((src, s));
        }
    }
    out
}

fn extension_for(d: &FieldElement) -> Result<Arc<RelQuadExt>> {
    match RelQuadExt::sqrt_of(d)? {
        QuadExtOutcome::Extension(e) => Ok(e),
        QuadExtOutcome::Reducible(_) => Err(Error::Internal(format!("{d} was certified a non-square"))),
    }
}

/// The point of `x^4 + y^4 = 1` with parameter `s`, placed in the smallest
/// field of degree at most 2 over `K`, or `None` when it needs degree 4.
pub fn step1_point(rec: &StepIRecord) -> Result<Option<FermatPoint>> {
    let sx = nf_sqrt(&rec.xsq)?;
    let sy = nf_sqrt(&rec.ysq)?;
    let point = match (sx, sy) {
        (Some(x), Some(y)) => FermatPoint::new(Elem::Base(x), Elem::Base(y)),
        (Some(x), None) => {
            let e = extension_for(&rec.ysq)?;
            FermatPoint::new(Elem::Base(x), Elem::Rel(RelElement::generator(&e)))
        }
        (None, Some(y)) => {
            let e = extension_for(&rec.xsq)?;
            FermatPoint::new(Elem::Rel(RelElement::generator(&e)), Elem::Base(y))
        }
        (None, None) => {
            let Some(c) = nf_sqrt(&(&rec.xsq * &rec.ysq))? else { return Ok(None) };
            // y = c / x = (c / x^2) x
            let e = extension_for(&rec.xsq)?;
            let x = RelElement::generator(&e);
            let y = x.scale(&c.div(&rec.xsq)?);
            FermatPoint::new(Elem::Rel(x), Elem::Rel(y))
        }
    };
    if !point.on_curve() {
        return Err(Error::Internal(format!("step I point {point} is off the curve")));
    }
    Ok(Some(point))
}

/// Step I over every parameter value.
pub fn step1_scan(
    _field: &Arc<NumberField>,
    e1: &TorsionTable,
    e2: &TorsionTable,
    h3: &[(FieldElement, FieldElement)],
) -> Result<Vec<(StepIRecord, FermatPoint)>> {
    let mut out = Vec::new();
    for (src, s) in step1_parameters(e1, e2, h3) {
        let Some(rec) = StepIRecord::new(s, src) else { continue };
        if let Some(p) = step1_point(&rec)? {
            out.push((rec, p));
        }
    }
    Ok(out)
}

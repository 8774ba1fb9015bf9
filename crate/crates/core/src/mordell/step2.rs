use std::sync::Arc;

use super::elem::{Elem, FermatPoint};
use crate::ellcurve::CurvePoint;
use crate::error::{Error, Result};
use crate::exact::{rat, RatPoly};
use crate::numberfield::{
    nf_roots, nf_sqrt, quad_ext_make, FieldElement, KPoly, QuadExtOutcome, RelElement, RelQuadExt,
};

/// One solution `(beta1, beta2)` of the Step II system with its extension
/// and point.
#[derive(Clone, Debug)]
pub struct StepIISolution {
    pub beta1: FieldElement,
    pub beta2: FieldElement,
    pub alpha1: FieldElement,
    pub alpha2: FieldElement,
    pub ext: Arc<RelQuadExt>,
    pub point: FermatPoint,
}

#[derive(Clone, Debug)]
pub enum Step2Outcome {
    NoSolution,
    ReducibleQ,
    ExcludedT,
    Points(Vec<StepIISolution>),
}

impl Step2Outcome {
    pub fn solutions(&self) -> &[StepIISolution] {
        match self {
            Step2Outcome::Points(v) => v,
            _ => &[],
        }
    }
}

/// Coefficients `(b, c)` of `Q_beta(T) = T^2 + b T + c`, the cofactor of
/// `T - x` in `T^3 + a T - (y - beta x + beta T)^2`.
pub fn q_beta(x: &FieldElement, y: &FieldElement, beta: &FieldElement, a: i64) -> (FieldElement, FieldElement) {
    let b2 = beta.square();
    let b = x - &b2;
    let c = &(&(&x.square() + &(x * &b2)) - &(y * beta).scale(&rat(2))) + &FieldElement::from_int(x.field(), a);
    (b, c)
}

/// Checks `T^3 + a T - (alpha + beta T)^2 = Q(T)(T - x)` exactly.
pub fn check_identity(
    x: &FieldElement,
    alpha: &FieldElement,
    beta: &FieldElement,
    a: i64,
    q: &(FieldElement, FieldElement),
) -> bool {
    let k = x.field();
    let lhs = &KPoly::from_rat_poly(k, &RatPoly::from_ints(&[0, a, 0, 1]))
        - &(&KPoly::new(k, vec![alpha.clone(), beta.clone()]) * &KPoly::new(k, vec![alpha.clone(), beta.clone()]));
    let rhs = &KPoly::new(k, vec![q.1.clone(), q.0.clone(), FieldElement::one(k)]) * &KPoly::new(k, vec![-x, FieldElement::one(k)]);
    lhs == rhs
}

/// Candidate `(beta1, beta2)` pairs for `P1 = (x1, y1)` on `E1` and
/// `P2 = (x2, y2)` on `E2`.
fn beta_pairs(
    x1: &FieldElement,
    y1: &FieldElement,
    x2: &FieldElement,
    y2: &FieldElement,
) -> Result<Vec<(FieldElement, FieldElement)>> {
    let k = x1.field();
    let delta = x1 - x2;
    // F(b1) = delta b1^2 - 2 y1 b1 + (x1^2 - x2^2 + x2 delta + 8) = -2 y2 b2
    let f0 = &(&(&x1.square() - &x2.square()) + &(x2 * &delta)) + &FieldElement::from_int(k, 8);
    let f = KPoly::new(k, vec![f0, y1.scale(&rat(-2)), delta.clone()]);
    let mut out = Vec::new();
    if !y2.is_zero() {
        // F^2 = 4 y2^2 (b1^2 - delta)
        let w = y2.square().scale(&rat(4));
        let quartic = &(&f * &f) - &KPoly::new(k, vec![-&(&w * &delta), FieldElement::zero(k), w]);
        if quartic.is_zero() {
            return Err(Error::Internal("degenerate Step II system".into()));
        }
        let inv = y2.scale(&rat(-2)).inv()?;
        for b1 in nf_roots(&quartic)? {
            let b2 = &f.eval(&b1) * &inv;
            out.push((b1, b2));
        }
    } else {
        if f.is_zero() {
            return Err(Error::Internal("degenerate Step II system".into()));
        }
        for b1 in nf_roots(&f)? {
            let Some(b2) = nf_sqrt(&(&b1.square() - &delta))? else { continue };
            out.push((b1.clone(), b2.clone()));
            if !b2.is_zero() {
                out.push((b1, -&b2));
            }
        }
    }
    Ok(out)
}

pub fn step2_pair(p1: &CurvePoint, p2: &CurvePoint) -> Result<Step2Outcome> {
    let (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) = (p1, p2) else {
        return Err(Error::InvalidInput("step II needs affine points".into()));
    };
    let k = x1.field().clone();
    let mut solutions = Vec::new();
    let mut reducible = false;
    let mut excluded = false;
    for (b1, b2) in beta_pairs(x1, y1, x2, y2)? {
        let alpha1 = y1 - &(&b1 * x1);
        let alpha2 = y2 - &(&b2 * x2);
        let q1 = q_beta(x1, y1, &b1, 4);
        let q2 = q_beta(x2, y2, &b2, -4);
        if q1 != q2 || !check_identity(x1, &alpha1, &b1, 4, &q1) || !check_identity(x2, &alpha2, &b2, -4, &q2) {
            return Err(Error::Internal(format!("Step II identities fail at {p1}, {p2}")));
        }
        let ext = match quad_ext_make(&q1.0, &q1.1)? {
            QuadExtOutcome::Reducible(_) => {
                reducible = true;
                continue;
            }
            QuadExtOutcome::Extension(e) => e,
        };
        // t = s/2 = ±sqrt(-1) exactly when Q(T) = T^2 + 4
        if q1.0.is_zero() && q1.1 == FieldElement::from_int(&k, 4) {
            excluded = true;
            continue;
        }
        let s = RelElement::generator(&ext);
        let l1 = &RelElement::from_base(&ext, alpha1.clone()) + &s.scale(&b1);
        let l2 = &RelElement::from_base(&ext, alpha2.clone()) + &s.scale(&b2);
        let d = &s.square() + &RelElement::from_int(&ext, 4);
        if l1.is_zero() {
            continue;
        }
        let x = l1.scale(&FieldElement::from_int(&k, 2)).div(&d)?;
        let y = l2.div(&l1)?;
        let point = FermatPoint::new(Elem::Rel(x), Elem::Rel(y));
        if !point.on_curve() {
            return Err(Error::Internal(format!("Step II point {point} is off the curve")));
        }
        solutions.push(StepIISolution { beta1: b1, beta2: b2, alpha1, alpha2, ext, point });
    }
    Ok(if !solutions.is_empty() {
        Step2Outcome::Points(solutions)
    } else if excluded {
        Step2Outcome::ExcludedT
    } else if reducible {
        Step2Outcome::ReducibleQ
    } else {
        Step2Outcome::NoSolution
    })
}

use std::collections::BTreeSet;

use num_integer::Integer;
use serde_json::{json, Value};

use super::{ec_add, ec_division_poly, ec_neg, ec_order, CurvePoint, CurveSpec};
use crate::error::{Error, Result};
use crate::exact::rat;
use crate::finitefield::ec_count_points;
use crate::numberfield::{nf_roots, nf_sqrt, FieldElement, KPoly};

/// Residue fields larger than this are skipped when bounding torsion.
const BOUND_FIELD_CAP: u64 = 200_000;
const BOUND_PRIMES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBound {
    pub bound: u64,
    /// Per prime, `#E(F_q)` for each residue field used.
    pub certificate: Vec<(u64, Vec<u64>)>,
}

/// `gcd` of `#E(F_q)` over residue fields at the first good odd primes.
pub fn ec_torsion_bound(curve: &CurveSpec) -> Result<TorsionBound> {
    let mut certificate = Vec::new();
    let mut bound = 0u64;
    for (p, fields) in curve.field.residue_fields() {
        let mut counts = Vec::new();
        for rf in fields.iter().filter(|rf| rf.q_u64().is_some_and(|q| q <= BOUND_FIELD_CAP)) {
            let n = ec_count_points(&curve.a, rf)?;
            bound = bound.gcd(&n);
            counts.push(n);
        }
        if !counts.is_empty() {
            certificate.push((*p, counts));
        }
        if certificate.len() == BOUND_PRIMES {
            break;
        }
    }
    if certificate.is_empty() {
        return Err(Error::NoGoodPrimes);
    }
    Ok(TorsionBound { bound, certificate })
}

/// All `Q` in `E(K)` with `2Q = P`.
pub fn ec_halve(curve: &CurveSpec, p: &CurvePoint) -> Result<Vec<CurvePoint>> {
    let k = &curve.field;
    let zero = FieldElement::zero(k);
    let mut out = Vec::new();
    match p {
        CurvePoint::Infinity => {
            out.push(CurvePoint::Infinity);
            out.push(CurvePoint::Affine { x: zero.clone(), y: zero.clone() });
            let minus_a = FieldElement::from_rational(k, -&curve.a);
            if let Some(r) = nf_sqrt(&minus_a)? {
                out.push(CurvePoint::Affine { x: r.clone(), y: zero.clone() });
                out.push(CurvePoint::Affine { x: -&r, y: zero });
            }
        }
        CurvePoint::Affine { x: xp, .. } => {
            // (x^2 - a)^2 - 4 x_P (x^3 + a x)
            let a = FieldElement::from_rational(k, curve.a.clone());
            let c = |r: i64| FieldElement::from_int(k, r);
            let quartic = KPoly::new(
                k,
                vec![
                    a.square(),
                    (xp * &a).scale(&rat(-4)),
                    a.scale(&rat(-2)),
                    xp.scale(&rat(-4)),
                    c(1),
                ],
            );
            for x in nf_roots(&quartic)? {
                let Some(y) = nf_sqrt(&curve.rhs(&x))? else { continue };
                for cand in [CurvePoint::Affine { x: x.clone(), y: y.clone() }, CurvePoint::Affine { x: x.clone(), y: -&y }] {
                    if ec_add(curve, &cand, &cand) == *p && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TorsionTable {
    pub curve: CurveSpec,
    pub points: Vec<CurvePoint>,
    /// Invariant factors `(d1, d2)` with `d1 | d2`.
    pub structure: (u64, u64),
    pub bound: TorsionBound,
}

impl TorsionTable {
    pub fn order(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn affine(&self) -> impl Iterator<Item = (&FieldElement, &FieldElement)> {
        self.points.iter().filter_map(|p| match p {
            CurvePoint::Affine { x, y } => Some((x, y)),
            CurvePoint::Infinity => None,
        })
    }

    pub fn structure_name(&self) -> String {
        match self.structure {
            (1, 1) => "0".into(),
            (1, d) => format!("Z/{d}"),
            (a, b) => format!("Z/{a} x Z/{b}"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.name(),
            "structure": [self.structure.0, self.structure.1],
            "points": self.points.iter().map(CurvePoint::to_json).collect::<Vec<_>>(),
            "bound": self.bound.bound,
            "certificate": self.bound.certificate.iter()
                .map(|(p, c)| json!({ "p": p, "counts": c }))
                .collect::<Vec<_>>(),
        })
    }
}

fn odd_prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while n.is_multiple_of(2) && n > 0 {
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn close_under_addition(curve: &CurveSpec, set: &mut BTreeSet<CurvePoint>, cap: u64) -> Result<()> {
    loop {
        let pts: Vec<CurvePoint> = set.iter().cloned().collect();
        let mut grew = false;
        for p in &pts {
            for q in &pts {
                grew |= set.insert(ec_add(curve, p, q));
            }
        }
        if set.len() as u64 > cap {
            return Err(Error::TorsionBoundMismatch { found: set.len() as u64, bound: cap });
        }
        if !grew {
            return Ok(());
        }
    }
}

/// The full torsion subgroup of `E(K)`.
pub fn ec_torsion(curve: &CurveSpec) -> Result<TorsionTable> {
    let bound = ec_torsion_bound(curve)?;
    let b = bound.bound;
    let mut set: BTreeSet<CurvePoint> = BTreeSet::new();
    set.insert(CurvePoint::Infinity);
    let mut frontier = vec![CurvePoint::Infinity];
    let max_depth = 64 - b.leading_zeros();
    for _ in 0..=max_depth {
        let mut next = Vec::new();
        for p in &frontier {
            for q in ec_halve(curve, p)? {
                if set.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    for (ell, e) in odd_prime_factors(b) {
        let psi = ec_division_poly(curve, ell)?;
        let mut found = false;
        for x in nf_roots(&psi)? {
            if let Some(y) = nf_sqrt(&curve.rhs(&x))? {
                found = true;
                set.insert(CurvePoint::Affine { x: x.clone(), y: -&y });
                set.insert(CurvePoint::Affine { x, y });
            }
        }
        if found && e > 1 {
            return Err(Error::UnsupportedPrime(ell * ell));
        }
    }
    close_under_addition(curve, &mut set, b)?;
    let points: Vec<CurvePoint> = set.into_iter().collect();
    let n = points.len() as u64;
    if b % n != 0 {
        return Err(Error::TorsionBoundMismatch { found: n, bound: b });
    }
    for p in &points {
        if !curve.contains(p) || !points.contains(&ec_neg(p)) {
            return Err(Error::Internal(format!("torsion set not a group at {p}")));
        }
        for q in &points {
            if !points.contains(&ec_add(curve, p, q)) {
                return Err(Error::Internal("torsion set not closed".into()));
            }
        }
    }
    let d2 = points
        .iter()
        .map(|p| ec_order(curve, p, n).ok_or_else(|| Error::Internal("point of unexpected order".into())))
        .try_fold(1u64, |acc, o| o.map(|o| acc.lcm(&o)))?;
    Ok(TorsionTable { curve: curve.clone(), points, structure: (n / d2, d2), bound })
}


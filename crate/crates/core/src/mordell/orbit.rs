use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde_json::{json, Value};

use super::elem::FermatPoint;
use super::step1::Source;
use crate::ellcurve::CurvePoint;
use crate::error::{Error, Result};
use crate::numberfield::{ext_embedding, FieldElement, RelQuadExt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    StepI { source: Source, s: FieldElement },
    StepII { p1: CurvePoint, p2: CurvePoint },
    Given,
}

impl Provenance {
    pub fn to_json(&self) -> Value {
        match self {
            Provenance::StepI { source, s } => json!({ "step": "I", "source": source.to_string(), "s": s.to_json() }),
            Provenance::StepII { p1, p2 } => json!({ "step": "II", "P1": p1.to_json(), "P2": p2.to_json() }),
            Provenance::Given => json!({ "step": "given" }),
        }
    }
}

/// A point of `x^4 + y^4 = 1` with its classification.
#[derive(Clone, Debug)]
pub struct QuadraticPointRecord {
    pub point: FermatPoint,
    pub degree_over_q: usize,
    pub trivial: bool,
    pub primitive: bool,
    pub provenance: Provenance,
}

impl QuadraticPointRecord {
    pub fn new(point: FermatPoint, provenance: Provenance) -> Result<Self> {
        if !point.on_curve() {
            return Err(Error::Internal(format!("{point} is not on x^4 + y^4 = 1")));
        }
        let degree_over_q = point.degree_over_q();
        Ok(QuadraticPointRecord {
            trivial: point.is_trivial(),
            primitive: degree_over_q == point.ambient_degree(),
            degree_over_q,
            point,
            provenance,
        })
    }

    /// Recomputes `primitive` as `[Q(P):Q] = degree`.
    pub fn primitive_at(mut self, degree: usize) -> Self {
        self.primitive = self.degree_over_q == degree;
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.point.to_json();
        v["degree_over_Q"] = json!(self.degree_over_q);
        v["trivial"] = json!(self.trivial);
        v["primitive"] = json!(self.primitive);
        v["provenance"] = self.provenance.to_json();
        v
    }
}

/// Closure of a point under the eight sign/swap maps and conjugation over
/// the base field, sorted by serialization.
pub fn assemble_orbit(p: &FermatPoint) -> Vec<FermatPoint> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for q in [p.clone(), p.conj()] {
        for r in q.sign_swaps() {
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
    }
    out.sort_by_cached_key(FermatPoint::serialized);
    out
}

/// Chosen presentation for each isomorphism class of quadratic extensions
/// seen so far.
#[derive(Default, Clone, Debug)]
pub struct ExtRegistry {
    exts: Vec<Arc<RelQuadExt>>,
}

impl ExtRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extensions(&self) -> &[Arc<RelQuadExt>] {
        &self.exts
    }

    /// Rewrites `p` in the registered presentation of its extension,
    /// registering a new one if needed.
    pub fn canonical(&mut self, p: &FermatPoint) -> Result<FermatPoint> {
        let Some(e) = p.ext() else { return Ok(p.clone()) };
        for c in &self.exts {
            if c.same_presentation(e) {
                return Ok(p.clone());
            }
            if let Some(img) = ext_embedding(e, c)? {
                return Ok(p.map_into(&img));
            }
        }
        self.exts.push(e.clone());
        Ok(p.clone())
    }
}

/// Removes repeats across presentations, keeping first occurrences.
pub fn dedupe_points(registry: &mut ExtRegistry, pts: &[FermatPoint]) -> Result<Vec<FermatPoint>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in pts {
        let c = registry.canonical(p)?;
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Union of the orbits of the nontrivial records, each point tagged with the
/// provenance of the record that first produced it.
pub fn expand_nontrivial(
    registry: &mut ExtRegistry,
    records: &[QuadraticPointRecord],
) -> Result<Vec<(FermatPoint, Provenance)>> {
    let mut index: HashMap<FermatPoint, usize> = HashMap::new();
    let mut out = Vec::new();
    for rec in records.iter().filter(|r| !r.trivial) {
        let c = registry.canonical(&rec.point)?;
        for q in assemble_orbit(&c) {
            if !index.contains_key(&q) {
                index.insert(q.clone(), out.len());
                out.push((q, rec.provenance.clone()));
            }
        }
    }
    Ok(out)
}

/// One representative per sign/swap orbit, chosen as the least
/// serialization, sorted.
pub fn orbit_representatives(expanded: &[(FermatPoint, Provenance)]) -> Result<Vec<QuadraticPointRecord>> {
    let mut assigned: HashSet<FermatPoint> = HashSet::new();
    let mut reps = Vec::new();
    for (p, prov) in expanded {
        if assigned.contains(p) {
            continue;
        }
        let orbit = p.sign_swaps();
        let rep = orbit.iter().min_by_key(|q| q.serialized()).expect("orbit nonempty").clone();
        assigned.extend(orbit);
        reps.push(QuadraticPointRecord::new(rep, prov.clone())?);
    }
    reps.sort_by_cached_key(|r| r.point.serialized());
    Ok(reps)
}

/// The nontrivial orbit representatives with `[Q(P):Q] = degree`.
pub fn s0_set(expanded: &[(FermatPoint, Provenance)], degree: usize) -> Result<Vec<QuadraticPointRecord>> {
    Ok(orbit_representatives(expanded)?
        .into_iter()
        .map(|r| r.primitive_at(degree))
        .filter(|r| r.primitive && !r.trivial)
        .collect())
}

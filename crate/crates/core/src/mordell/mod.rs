//! Quadratic points on `x^4 + y^4 = 1` over `K` from the torsion of
//! `E1: u^2 = s^3 + 4s` and `E2: v^2 = s^3 - 4s`, assuming both have rank 0.

mod elem;
mod orbit;
mod step1;
mod step2;

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use elem::{Elem, FermatPoint};
pub use orbit::{
    assemble_orbit, dedupe_points, expand_nontrivial, orbit_representatives, s0_set, ExtRegistry, Provenance, QuadraticPointRecord,
};
pub use step1::{step1_parameters, step1_point, step1_scan, Source, StepIRecord};
pub use step2::{check_identity, q_beta, step2_pair, Step2Outcome, StepIISolution};

use crate::ellcurve::{ec_neg, ec_torsion, h3_points, CurvePoint, CurveSpec, TorsionTable};
use crate::error::{Error, Result};
use crate::numberfield::{nf_has_root, nf_sqrt, preset_minpoly, FieldElement, NumberField};

/// Affine trivial points `(0, ±1), (±1, 0), (0, ±i), (±i, 0)`.
pub const TRIVIAL_AFFINE: usize = 8;

pub const ASSUMPTIONS: [&str; 2] = ["rank_zero_E1", "rank_zero_E2"];

/// Least of `{P, -P}`, for the affine points of a torsion table.
pub fn sign_representatives(t: &TorsionTable) -> Vec<CurvePoint> {
    let mut reps: Vec<CurvePoint> = t
        .points
        .iter()
        .filter(|p| !p.is_infinity())
        .map(|p| std::cmp::min(p.clone(), ec_neg(p)))
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Step II outcomes, `rows` on `E2` and `columns` on `E1`.
#[derive(Clone, Debug)]
pub struct Step2Grid {
    pub columns: Vec<CurvePoint>,
    pub rows: Vec<CurvePoint>,
    pub cells: Vec<Vec<Step2Outcome>>,
}

impl Step2Grid {
    pub fn compute(e1: &TorsionTable, e2: &TorsionTable) -> Result<Self> {
        let columns = sign_representatives(e1);
        let rows = sign_representatives(e2);
        let cells = rows
            .par_iter()
            .map(|p2| columns.iter().map(|p1| step2_pair(p1, p2)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Step2Grid { columns, rows, cells })
    }

    pub fn cell(&self, p1: &CurvePoint, p2: &CurvePoint) -> Option<&Step2Outcome> {
        let c = self.columns.iter().position(|p| p == p1 || *p == ec_neg(p1))?;
        let r = self.rows.iter().position(|p| p == p2 || *p == ec_neg(p2))?;
        Some(&self.cells[r][c])
    }

    /// Cells with at least one point, as `(P1, P2, outcome)`.
    pub fn nonempty(&self) -> Vec<(&CurvePoint, &CurvePoint, &Step2Outcome)> {
        let mut out = Vec::new();
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if !cell.solutions().is_empty() {
                    out.push((&self.columns[c], &self.rows[r], cell));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|cell| match cell {
                            Step2Outcome::Points(sols) => Value::Array(
                                sols.iter()
                                    .map(|s| json!({ "Q": s.ext.ext_poly_json(), "point": s.point.to_json() }))
                                    .collect(),
                            ),
                            _ => json!("x"),
                        })
                        .collect(),
                )
            })
            .collect();
        json!({
            "columns": self.columns.iter().map(CurvePoint::to_json).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(CurvePoint::to_json).collect::<Vec<_>>(),
            "cells": cells,
        })
    }
}

/// The first of `-1, 2, -2` that is a square in `K`, if any.
pub fn zeta8_square_witness(field: &Arc<NumberField>) -> Result<Option<i64>> {
    for d in [-1, 2, -2] {
        if nf_sqrt(&FieldElement::from_int(field, d))?.is_some() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Whether `[K(zeta_8):K] <= 2`, i.e. one of `-1, 2, -2` is a square in `K`.
pub fn infinity_points_quadratic(field: &Arc<NumberField>) -> Result<bool> {
    Ok(zeta8_square_witness(field)?.is_some())
}

/// Set when the points at infinity are counted only because `-2` is a
/// square in `K` (neither `i` nor `sqrt 2` lies in `K`).
pub const NOTE_INFINITY_SQRT_MINUS_2: &str = "infinity_points_via_sqrt_minus_2";

/// The largest of the five preset fields contained in `K`.
pub fn identify_l(field: &Arc<NumberField>) -> Result<String> {
    let n = field.degree();
    for label in ["Qzeta8", "Qalpha", "Qsqrt2", "Qi"] {
        let f = preset_minpoly(label)?;
        let d = f.degree().unwrap_or(1);
        if n.is_multiple_of(d) && nf_has_root(&f, field)?.is_some() {
            return Ok(label.to_string());
        }
    }
    Ok("Q".to_string())
}

/// `|E1(L)_tors|` and `|E2(L)_tors|` for the preset fields.
pub const PRESET_TORSION_ORDERS: [(&str, u64, u64); 5] =
    [("Q", 4, 4), ("Qi", 8, 4), ("Qsqrt2", 4, 8), ("Qzeta8", 16, 16), ("Qalpha", 8, 8)];

/// The preset `L` inside `K` and the degree `2[L:Q]` of a primitive
/// quadratic point. When the torsion of `E1`, `E2` over `K` is that over
/// `L`, the whole computation happens over `L`; otherwise primitivity is
/// measured against `K` itself.
pub fn reduction_field(field: &Arc<NumberField>, e1: &TorsionTable, e2: &TorsionTable) -> Result<(String, usize)> {
    let l = identify_l(field)?;
    let same_torsion = PRESET_TORSION_ORDERS
        .iter()
        .any(|&(name, n1, n2)| name == l && e1.order() == n1 && e2.order() == n2);
    let degree = if same_torsion { preset_minpoly(&l)?.degree().unwrap_or(1) } else { field.degree() };
    Ok((l, 2 * degree))
}

/// Recomputes `t = (1+y^2)/x^2`, `s = 2t`, `u = x(s^2+4)/2`,
/// `v = xy(s^2+4)/2` and checks `u^2 = s^3 + 4s`, `v^2 = s^3 - 4s`.
pub fn verify_bielliptic(p: &FermatPoint) -> Result<bool> {
    if p.x.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let one = p.x.constant_like(1);
    let t = one.add(&p.y.square()).div(&p.x.square())?;
    let s = t.scale_int(2);
    let w = s.square().add(&p.x.constant_like(4));
    let half = p.x.constant_like(2).inv()?;
    let u = p.x.mul(&w).mul(&half);
    let v = p.x.mul(&p.y).mul(&w).mul(&half);
    let s3 = s.square().mul(&s);
    let e1 = u.square().sub(&s3.add(&s.scale_int(4)));
    let e2 = v.square().sub(&s3.sub(&s.scale_int(4)));
    Ok(e1.is_zero() && e2.is_zero())
}

#[derive(Clone, Debug)]
pub struct Gamma2Report {
    pub field: Arc<NumberField>,
    pub identified_l: String,
    /// `[Q(P):Q]` of the points counted in `s0`.
    pub primitive_degree: usize,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub torsion: (TorsionTable, TorsionTable),
    pub step1: Vec<(StepIRecord, FermatPoint)>,
    pub grid: Step2Grid,
    pub records: Vec<QuadraticPointRecord>,
    pub expanded: Vec<(FermatPoint, Provenance)>,
    pub s0: Vec<QuadraticPointRecord>,
    /// One record per sign/swap orbit of all nontrivial points, primitive
    /// or not.
    pub nontrivial_reps: Vec<QuadraticPointRecord>,
    pub trivial_affine: usize,
    pub trivial_infinity: usize,
    pub gamma2_count: usize,
    pub registry: ExtRegistry,
}

/// Runs the full procedure over `K`.
pub fn compute(field: &Arc<NumberField>) -> Result<Gamma2Report> {
    let (t1, t2) = rayon::join(|| ec_torsion(&CurveSpec::e1(field)), || ec_torsion(&CurveSpec::e2(field)));
    let (t1, t2) = (t1?, t2?);
    let h3 = h3_points(field, &t1);
    let step1 = step1_scan(field, &t1, &t2, &h3)?;
    let grid = Step2Grid::compute(&t1, &t2)?;

    let mut records = Vec::new();
    for (rec, p) in &step1 {
        records.push(QuadraticPointRecord::new(
            p.clone(),
            Provenance::StepI { source: rec.source, s: rec.s.clone() },
        )?);
    }
    for (p1, p2, cell) in grid.nonempty() {
        for sol in cell.solutions() {
            records.push(QuadraticPointRecord::new(
                sol.point.clone(),
                Provenance::StepII { p1: p1.clone(), p2: p2.clone() },
            )?);
        }
    }
    for r in records.iter().filter(|r| !r.trivial) {
        if !verify_bielliptic(&r.point)? {
            return Err(Error::Internal(format!("{} fails the bielliptic check", r.point)));
        }
    }

    let mut registry = ExtRegistry::new();
    let expanded = expand_nontrivial(&mut registry, &records)?;
    let (identified_l, primitive_degree) = reduction_field(field, &t1, &t2)?;
    let nontrivial_reps: Vec<QuadraticPointRecord> =
        orbit_representatives(&expanded)?.into_iter().map(|r| r.primitive_at(primitive_degree)).collect();
    let s0 = nontrivial_reps.iter().filter(|r| r.primitive).cloned().collect();
    let witness = zeta8_square_witness(field)?;
    let trivial_infinity = if witness.is_some() { 4 } else { 0 };
    let notes = if witness == Some(-2) { vec![NOTE_INFINITY_SQRT_MINUS_2.to_string()] } else { Vec::new() };
    let gamma2_count = TRIVIAL_AFFINE + trivial_infinity + expanded.len();
    Ok(Gamma2Report {
        field: field.clone(),
        identified_l,
        primitive_degree,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        notes,
        torsion: (t1, t2),
        step1,
        grid,
        records,
        expanded,
        s0,
        nontrivial_reps,
        trivial_affine: TRIVIAL_AFFINE,
        trivial_infinity,
        gamma2_count,
        registry,
    })
}

impl Gamma2Report {
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "identified_L": self.identified_l,
            "primitive_degree": self.primitive_degree,
            "assumptions": self.assumptions,
            "notes": self.notes,
            "s0": self.s0.iter().map(QuadraticPointRecord::to_json).collect::<Vec<_>>(),
            "gamma2_count": self.gamma2_count,
            "trivial": { "affine": self.trivial_affine, "infinity": self.trivial_infinity },
            "nontrivial_count": self.expanded.len(),
            "nontrivial_reps": self.nontrivial_reps.iter().map(QuadraticPointRecord::to_json).collect::<Vec<_>>(),
            "torsion": { "E1": self.torsion.0.to_json(), "E2": self.torsion.1.to_json() },
            "step1": self.step1.iter().map(|(r, p)| r.to_json(p)).collect::<Vec<_>>(),
            "table": self.grid.to_json(),
            "extensions": self.registry.extensions().iter().map(|e| e.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let poly = self.field.minpoly().to_string().replace('x', "t");
        match self.field.label() {
            Some(label) => out += &format!("field: {label} ({poly})\n"),
            None => out += &format!("field: {poly}\n"),
        }
        out += &format!("assumptions: {}\n", self.assumptions.join(", "));
        if !self.notes.is_empty() {
            out += &format!("notes: {}\n", self.notes.join(", "));
        }
        out += &format!("identified L: {}\n", self.identified_l);
        out += &format!(
            "torsion: E1 {} | E2 {}\n",
            self.torsion.0.structure_name(),
            self.torsion.1.structure_name()
        );
        out += &format!(
            "gamma2 count: {} = {} affine trivial + {} at infinity + {} nontrivial\n",
            self.gamma2_count,
            self.trivial_affine,
            self.trivial_infinity,
            self.expanded.len()
        );
        out += &format!("S0 ({} orbits):\n", self.s0.len());
        for r in &self.s0 {
            out += &format!("  {}\n", r.point);
        }
        out += "step II cells with points:\n";
        for (p1, p2, cell) in self.grid.nonempty() {
            for s in cell.solutions() {
                out += &format!("  P1={p1} P2={p2}: Q(T) = {}  point {}\n", s.ext.display_poly(), s.point);
            }
        }
        out
    }
}

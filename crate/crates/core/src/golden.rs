//! Reference tables for the five preset fields and the checks comparing a
//! computed report against them.
//!
//! Elements are stored in the power basis of the preset's generator; a
//! coordinate in a quadratic extension `K[T]/(T^2 + bT + c)` is a pair
//! `[c0, c1]` meaning `c0 + c1 s`. Torsion entries list one of each `±P`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::Value;

use crate::ellcurve::{ec_neg, CurvePoint, CurveSpec, TorsionTable};
use crate::error::{Error, Result};
use crate::exact::parse_rational;
use crate::mordell::{assemble_orbit, compute, Elem, ExtRegistry, FermatPoint, Gamma2Report};
use crate::numberfield::{preset, quad_ext_make, FieldElement, NumberField, QuadExtOutcome, RelElement, RelQuadExt};

static GOLDEN: &str = include_str!("../data/golden.json");

fn golden() -> &'static Value {
    static CELL: OnceLock<Value> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(GOLDEN).expect("golden.json is valid"))
}

fn section<'a>(name: &str, label: &str) -> Result<&'a Value> {
    golden()[name]
        .get(label)
        .ok_or_else(|| Error::InvalidInput(format!("no reference {name} for {label}")))
}

fn label_of(field: &Arc<NumberField>) -> Result<&str> {
    field.label().ok_or_else(|| Error::InvalidInput("reference data needs a preset field".into()))
}

fn element(field: &Arc<NumberField>, v: &Value) -> Result<FieldElement> {
    let parts = v.as_array().ok_or_else(|| Error::InvalidInput("element must be an array".into()))?;
    if parts.len() > field.degree() {
        return Err(Error::InvalidInput("element has too many coordinates".into()));
    }
    let mut c = Vec::with_capacity(field.degree());
    for p in parts {
        c.push(parse_rational(p.as_str().unwrap_or_default())?);
    }
    c.resize(field.degree(), crate::exact::rat(0));
    Ok(FieldElement::new(field, c))
}

fn extension(field: &Arc<NumberField>, v: &Value) -> Result<Arc<RelQuadExt>> {
    match quad_ext_make(&element(field, &v[0])?, &element(field, &v[1])?)? {
        QuadExtOutcome::Extension(e) => Ok(e),
        QuadExtOutcome::Reducible(_) => Err(Error::InvalidInput("reference extension is reducible".into())),
    }
}

fn rel_point(ext: &Arc<RelQuadExt>, v: &Value) -> Result<FermatPoint> {
    let coord = |c: &Value| -> Result<Elem> {
        Ok(Elem::Rel(RelElement::new(ext, element(&ext.base, &c[0])?, element(&ext.base, &c[1])?)))
    };
    Ok(FermatPoint::new(coord(&v["x"])?, coord(&v["y"])?))
}

fn curve_point(curve: &CurveSpec, v: &Value) -> Result<CurvePoint> {
    curve.point(element(&curve.field, &v[0])?, element(&curve.field, &v[1])?)
}

/// `|Gamma_2|` for a preset label.
pub fn golden_count(label: &str) -> Option<usize> {
    golden()["counts"].get(label)?.as_u64().map(|n| n as usize)
}

/// Structure name and full point set (including `O`) of `E(K)_tors`.
pub fn golden_torsion(curve: &CurveSpec) -> Result<(String, BTreeSet<CurvePoint>)> {
    let entry = &section("torsion", label_of(&curve.field)?)?[curve.name()];
    let mut points = BTreeSet::from([CurvePoint::Infinity]);
    for p in entry["points"].as_array().into_iter().flatten() {
        let p = curve_point(curve, p)?;
        points.insert(ec_neg(&p));
        points.insert(p);
    }
    Ok((entry["structure"].as_str().unwrap_or_default().to_string(), points))
}

/// One representative per listed orbit of `S0`.
pub fn golden_s0(field: &Arc<NumberField>) -> Result<Vec<FermatPoint>> {
    let mut out = Vec::new();
    for v in section("s0", label_of(field)?)?.as_array().into_iter().flatten() {
        out.push(rel_point(&extension(field, &v["ext"])?, v)?);
    }
    Ok(out)
}

/// A non-empty Step II cell of a reference table.
#[derive(Clone, Debug)]
pub struct GoldenCell {
    pub p1: CurvePoint,
    pub p2: CurvePoint,
    pub ext: Arc<RelQuadExt>,
    pub point: FermatPoint,
}

pub fn golden_grid(field: &Arc<NumberField>) -> Result<Vec<GoldenCell>> {
    let (e1, e2) = (CurveSpec::e1(field), CurveSpec::e2(field));
    let mut out = Vec::new();
    for v in section("grids", label_of(field)?)?.as_array().into_iter().flatten() {
        let ext = extension(field, &v["ext"])?;
        out.push(GoldenCell {
            p1: curve_point(&e1, &v["P1"])?,
            p2: curve_point(&e2, &v["P2"])?,
            point: rel_point(&ext, v)?,
            ext,
        });
    }
    Ok(out)
}

/// Union of the sign/swap/conjugation orbits, written in the registry's
/// presentations.
pub fn orbit_union(registry: &mut ExtRegistry, points: &[FermatPoint]) -> Result<HashSet<FermatPoint>> {
    let mut out = HashSet::new();
    for p in points {
        out.extend(assemble_orbit(&registry.canonical(p)?));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

pub fn check_count(report: &Gamma2Report) -> Result<Check> {
    let label = label_of(&report.field)?;
    let want = golden_count(label).ok_or_else(|| Error::InvalidInput(format!("no reference count for {label}")))?;
    Ok(Check::new(
        format!("{label} count"),
        report.gamma2_count == want,
        format!("computed {}, expected {want}", report.gamma2_count),
    ))
}

pub fn check_torsion(table: &TorsionTable) -> Result<Check> {
    let label = label_of(&table.curve.field)?;
    let (structure, want) = golden_torsion(&table.curve)?;
    let got: BTreeSet<CurvePoint> = table.points.iter().cloned().collect();
    let missing: Vec<String> = want.difference(&got).map(|p| p.to_string()).collect();
    let extra: Vec<String> = got.difference(&want).map(|p| p.to_string()).collect();
    let mut detail = format!("{} (expected {structure})", table.structure_name());
    if !missing.is_empty() {
        detail += &format!("; missing {}", missing.join(", "));
    }
    if !extra.is_empty() {
        detail += &format!("; unexpected {}", extra.join(", "));
    }
    Ok(Check::new(
        format!("{label} torsion {}", table.curve.name()),
        structure == table.structure_name() && missing.is_empty() && extra.is_empty(),
        detail,
    ))
}

pub fn check_s0(report: &Gamma2Report) -> Result<Check> {
    let label = label_of(&report.field)?;
    let reference = golden_s0(&report.field)?;
    let mut registry = report.registry.clone();
    let got: Vec<FermatPoint> = report.s0.iter().map(|r| r.point.clone()).collect();
    let got = orbit_union(&mut registry, &got)?;
    let want = orbit_union(&mut registry, &reference)?;
    let passed = got == want && report.s0.len() == reference.len();
    Ok(Check::new(
        format!("{label} S0"),
        passed,
        format!(
            "{} orbits / {} points, expected {} / {}; {} missing, {} unexpected",
            report.s0.len(),
            got.len(),
            reference.len(),
            want.len(),
            want.difference(&got).count(),
            got.difference(&want).count()
        ),
    ))
}

fn sign_variants(p: &FermatPoint) -> [FermatPoint; 4] {
    let (x, y) = (&p.x, &p.y);
    [
        p.clone(),
        FermatPoint::new(x.neg(), y.clone()),
        FermatPoint::new(x.clone(), y.neg()),
        FermatPoint::new(x.neg(), y.neg()),
    ]
}

/// Cell-by-cell comparison of the Step II table. A reference cell matches
/// when some computed solution has the same `Q(T)` and its point agrees up
/// to the signs of `x` and `y` (the choice of `±P1`, `±P2`).
pub fn check_grid(report: &Gamma2Report) -> Result<Check> {
    let label = label_of(&report.field)?;
    let reference = golden_grid(&report.field)?;
    let mut failures = Vec::new();
    for cell in &reference {
        let name = format!("cell (P1={}, P2={})", cell.p1, cell.p2);
        let Some(outcome) = report.grid.cell(&cell.p1, &cell.p2) else {
            failures.push(format!("{name} not in table"));
            continue;
        };
        let matched = outcome.solutions().iter().any(|s| {
            s.ext.same_presentation(&cell.ext) && sign_variants(&s.point).contains(&cell.point)
        });
        if !matched {
            let got: Vec<String> = outcome.solutions().iter().map(|s| s.point.to_string()).collect();
            failures.push(format!("{name} expected {}, got [{}]", cell.point, got.join("; ")));
        }
    }
    let nonempty = report.grid.nonempty().len();
    if nonempty != reference.len() {
        failures.push(format!("{nonempty} non-empty cells, expected {}", reference.len()));
    }
    Ok(Check::new(
        format!("{label} Step II table"),
        failures.is_empty(),
        if failures.is_empty() { format!("{} non-empty cells match", reference.len()) } else { failures.join("; ") },
    ))
}

/// All reference checks for a report over a preset field.
pub fn verify_report(report: &Gamma2Report) -> Result<Vec<Check>> {
    Ok(vec![
        check_count(report)?,
        check_torsion(&report.torsion.0)?,
        check_torsion(&report.torsion.1)?,
        check_s0(report)?,
        check_grid(report)?,
    ])
}

/// Runs every preset and compares it with the reference tables. A preset
/// whose computation fails contributes a single failed check.
pub fn verify_presets(labels: &[&str]) -> Vec<Check> {
    let mut out = Vec::new();
    for label in labels {
        match preset(label).and_then(|k| compute(&k)).and_then(|r| verify_report(&r)) {
            Ok(checks) => out.extend(checks),
            Err(e) => out.push(Check::new(format!("{label} computation"), false, e.to_string())),
        }
    }
    out
}

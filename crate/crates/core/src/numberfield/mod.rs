//! Exact arithmetic in `K = Q[t]/(f)` and in relative quadratic extensions
//! `L = K[T]/(Q(T))`.

mod field;
mod kpoly;
mod minpoly;
mod quadext;
mod roots;

use std::sync::Arc;

pub use field::{FieldElement, NumberField, CERTIFICATE_PRIMES};
pub use kpoly::KPoly;
pub use minpoly::{nf_generated_degree, nf_min_poly, Coordinates};
pub use quadext::{ext_embedding, quad_ext_make, rel_sqrt, QuadExtOutcome, RelElement, RelQuadExt};
pub use roots::{
    nf_has_root, nf_is_square, nf_roots, nf_sqrt, residue_certificate, NonSquareCertificate, SquareResult,
    MAX_ROOT_DEGREE,
};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, RatPoly};

const CATALOG: &str = include_str!("../../data/catalog.json");

/// The five preset labels, smallest field first.
pub const PRESET_LABELS: [&str; 5] = ["Q", "Qi", "Qsqrt2", "Qzeta8", "Qalpha"];

pub fn catalog() -> Value {
    serde_json::from_str(CATALOG).expect("bundled catalog is valid JSON")
}

fn parse_minpoly(v: &Value) -> Result<RatPoly> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidInput("minpoly must be an array".into()))?;
    let c = arr
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(Error::InvalidInput(x.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatPoly::new(c))
}

/// Minimal polynomial of a named field: a preset, a catalog entry, or
/// `Qsqrt<D>` for a catalog discriminant.
pub fn preset_minpoly(label: &str) -> Result<RatPoly> {
    let cat = catalog();
    for key in ["presets", "fields"] {
        for entry in cat[key].as_array().into_iter().flatten() {
            if entry["label"] == label {
                return parse_minpoly(&entry["minpoly"]);
            }
        }
    }
    if let Some(d) = label.strip_prefix("Qsqrt").and_then(|d| d.parse::<i64>().ok()) {
        let known = cat["quadratic_discriminants"].as_array().into_iter().flatten().any(|v| v.as_i64() == Some(d));
        if known {
            return Ok(RatPoly::from_ints(&[-d, 0, 1]));
        }
    }
    Err(Error::InvalidInput(format!("unknown preset {label:?}")))
}

pub fn preset(label: &str) -> Result<Arc<NumberField>> {
    NumberField::new(preset_minpoly(label)?, Some(label.to_string()))
}

/// Every label the catalog knows about.
pub fn catalog_labels() -> Vec<String> {
    let cat = catalog();
    let mut out: Vec<String> = Vec::new();
    for key in ["presets", "fields"] {
        for entry in cat[key].as_array().into_iter().flatten() {
            out.push(entry["label"].as_str().unwrap_or_default().to_string());
        }
    }
    for d in cat["quadratic_discriminants"].as_array().into_iter().flatten() {
        out.push(format!("Qsqrt{}", d));
    }
    out
}

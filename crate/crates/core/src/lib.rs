//! Exact and certified arithmetic for quadratic points on the Fermat quartic
//! `x^4 + y^4 = 1` over number fields.

pub mod cli;
pub mod ellcurve;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod finitefield;
pub mod golden;
pub mod mordell;
pub mod numberfield;

pub use error::{Error, Result};

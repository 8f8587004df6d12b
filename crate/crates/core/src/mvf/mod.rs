//! Multivector fields on charts, the Schouten–Nijenhuis bracket, form-valued
//! fields, chart maps, and the Maurer–Cartan defect.

mod chart;
mod chartmap;
mod formed;
mod multivector;

pub use chart::{grade, merge_sign, Chart, ChartRef};
pub use chartmap::{pushforward, ChartMap, Direction};
pub use formed::{mc_defect, FormedMultiVector};
pub use multivector::MultiVector;

use crate::Result;

pub fn wedge(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    a.wedge(b)
}

pub fn schouten(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    a.schouten(b)
}

pub fn schouten_formed(a: &FormedMultiVector, b: &FormedMultiVector) -> Result<FormedMultiVector> {
    a.schouten(b)
}

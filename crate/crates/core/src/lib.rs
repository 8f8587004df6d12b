//! Exact Schouten-bracket calculus and Poisson deformation cohomology on
//! ruled surfaces, Hopf surfaces, and product surfaces.

pub mod arith;
mod error;
pub mod hopf;
pub mod linalg;
pub mod mvf;
pub mod obstruction;
pub mod products;
pub mod report;
pub mod ruled;
pub mod syntax;

pub use error::{Error, Result};

//! Exact linear algebra over parameter polynomials with labeled bases.

mod basis;
mod linmap;
pub mod matrix;

pub use basis::{BasisReducer, LabeledBasis, Reducer};
pub use linmap::{
    cokernel_rep, cokernel_rep_with, cokernel_vectors, generic_rank, kernel_basis, matrix_of_map, rank_rref,
    same_span, span_rank, specialize, CokerReducer, LinMap,
};

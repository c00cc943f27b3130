//! Tensor-factor bookkeeping and dense symmetric matrix primitives.

pub mod exchange;
pub mod matrix;
pub mod space;
pub mod spectrum;
pub mod transpose;

pub use exchange::{format_float, matrix_from_json, matrix_to_json, read_matrix, write_matrix, MATRIX_FORMAT};
pub use matrix::{elementary_block, BlockAssembler, BlockPosition, SymMatrix};
pub use space::{FactorRole, FactorSpace, MultiIndex, Side};
pub use spectrum::{
    eigenvalues, min_eigenvalue, psd_threshold, trace_distance, trace_norm, validate_density,
    DensityReport, DEFAULT_TOL,
};
pub use transpose::partial_transpose;

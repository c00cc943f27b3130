//! Construction and numerical audit of a block-structured family of
//! multipartite density matrices on `H_A^{⊗n} ⊗ H_B^{⊗n}`.
//!
//! The crate is split into three layers:
//!
//! * [`tensor`]: factor-space bookkeeping, dense real symmetric matrices,
//!   partial transposition over arbitrary factor subsets and the spectral
//!   primitives (minimum eigenvalue, trace norm, density validation).
//! * [`family`]: the transposition patterns, the label bijection, the
//!   canonical sub-blocks and the mixture `ρ(q) = p·ρ⁽⁰⁾ + q/(ND)·Σ ρ⁽ˡ⁾`.
//! * [`analysis`]: closed-form quantities (critical weight, distance bounds,
//!   dimension scaling), the positivity margins of the block matrices and the
//!   PPT audit across all cuts.

pub mod analysis;
pub mod error;
pub mod family;
pub mod tensor;

pub use error::{Error, Result};
pub use family::{BlockPair, FamilyParams, LabelMap, OperatorLabel, TranspositionPattern};
pub use tensor::{FactorRole, FactorSpace, MultiIndex, Side, SymMatrix};

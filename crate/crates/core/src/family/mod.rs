//! The state family: transposition patterns, the label bijection, canonical
//! payloads and the assembled mixture.

pub mod blocks;
pub mod build;
pub mod labels;
pub mod layout;
pub mod params;

pub use blocks::{payload_space, BlockPair};
pub use build::{
    a_space, build_mixture, build_rho0, build_rho_l, label_positions, rho0_positions,
    support_orthogonality, support_orthogonality_check, OrthogonalityReport,
};
pub use labels::{count_patterns, enumerate_patterns, LabelMap, OperatorLabel, TranspositionPattern};
pub use layout::{BlockLayout, Cell, LayoutReport};
pub use params::{FamilyParams, MAX_ORDER};

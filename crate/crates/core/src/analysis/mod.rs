//! Closed-form quantities and the numerical audit that confronts them with
//! measured spectra.

pub mod audit;
pub mod conditions;
pub mod formulas;
pub mod lemma;

pub use audit::{
    canonical_cuts, ppt_audit, AuditConfig, AuditReport, CutMin, CutSpec, PointReport,
    SearchSummary,
};
pub use conditions::{
    analytic_conditions, assemble_x_block, assemble_y_block, binding_q, BlockSpectra,
    ConditionMargins, Margin, MarginPair, PairingMode,
};
pub use formulas::{
    bound_report, c_n, dims_for_epsilon, lemma1_distance, q_star, rho0_sep_bound,
    sep_distance_lower_bound, BoundReport, ScalingRow, SCALING_CSV_HEADER,
};
pub use lemma::{verify_lemma1, Lemma1Check};

use serde::Serialize;

use crate::analysis::formulas::lemma1_distance;
use crate::error::Result;
use crate::family::{build_mixture, build_rho0, BlockPair, FamilyParams};
use crate::tensor::trace_norm;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Check {
    pub q: f64,
    /// `2q`.
    pub expected: f64,
    /// `‖ρ(q) − ρ⁽⁰⁾‖₁` from the eigensolver.
    pub measured: f64,
    pub residual: f64,
}

/// Measures `‖ρ(q) − ρ⁽⁰⁾‖₁` and compares it with `2q`.
pub fn verify_lemma1(params: &FamilyParams, blocks: &BlockPair) -> Result<Lemma1Check> {
    let rho = build_mixture(params, blocks)?;
    let rho0 = build_rho0(params, blocks.a())?;
    let measured = trace_norm(&rho.sub(&rho0)?)?;
    let expected = lemma1_distance(params.q)?;
    Ok(Lemma1Check {
        q: params.q,
        expected,
        measured,
        residual: (measured - expected).abs(),
    })
}

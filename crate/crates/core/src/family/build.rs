use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::blocks::{payload_space, BlockPair};
use crate::family::labels::{LabelMap, OperatorLabel};
use crate::family::params::FamilyParams;
use crate::tensor::{elementary_block, BlockAssembler, BlockPosition, FactorSpace, MultiIndex, Side, SymMatrix};

pub fn a_space(params: &FamilyParams) -> Result<FactorSpace> {
    FactorSpace::one_side(Side::A, params.n, params.d_a)
}

/// A-block positions `((i,…,i), (j,…,j))` of `ρ⁽⁰⁾`, row-major over `(i, j)`.
pub fn rho0_positions(params: &FamilyParams) -> Result<Vec<BlockPosition>> {
    let space = a_space(params)?;
    let diag = |i: usize| MultiIndex(vec![i; params.n]);
    let mut out = Vec::with_capacity(params.d_a * params.d_a);
    for i in 1..=params.d_a {
        for j in 1..=params.d_a {
            out.push(elementary_block(&space, &diag(i), &diag(j))?);
        }
    }
    Ok(out)
}

/// The four A-block positions `(v,v), (v,w), (w,v), (w,w)` of `ρ⁽ˡ⁾`.
pub fn label_positions(params: &FamilyParams, label: &OperatorLabel) -> Result<[BlockPosition; 4]> {
    let space = a_space(params)?;
    if label.v.components().len() != params.n || label.w.components().len() != params.n {
        return Err(Error::Structure(format!(
            "label {} has support vectors of length {}, expected n = {}",
            label.l,
            label.v.components().len(),
            params.n
        )));
    }
    let (v, w) = (&label.v, &label.w);
    Ok([
        elementary_block(&space, v, v)?,
        elementary_block(&space, v, w)?,
        elementary_block(&space, w, v)?,
        elementary_block(&space, w, w)?,
    ])
}

fn assembler(params: &FamilyParams) -> Result<BlockAssembler> {
    params.check_capacity()?;
    BlockAssembler::new(&a_space(params)?, &payload_space(params)?)
}

fn check_payload(params: &FamilyParams, payload: &SymMatrix) -> Result<()> {
    let expected = payload_space(params)?.total_dim();
    if payload.order() != expected {
        return Err(Error::Structure(format!(
            "payload of order {} where d_B^n = {expected}",
            payload.order()
        )));
    }
    Ok(())
}

/// `ρ⁽⁰⁾ = Σ_{i,j} E_ij^{⊗n} ⊗ a`.
pub fn build_rho0(params: &FamilyParams, a: &SymMatrix) -> Result<SymMatrix> {
    check_payload(params, a)?;
    let mut asm = assembler(params)?;
    for at in rho0_positions(params)? {
        asm.place(at, a, 1.0)?;
    }
    asm.finish()
}

/// `ρ⁽ˡ⁾ = (|v⟩ + |w⟩)(⟨v| + ⟨w|) ⊗ b`.
pub fn build_rho_l(params: &FamilyParams, label: &OperatorLabel, b: &SymMatrix) -> Result<SymMatrix> {
    check_payload(params, b)?;
    let mut asm = assembler(params)?;
    for at in label_positions(params, label)? {
        asm.place(at, b, 1.0)?;
    }
    asm.finish()
}

/// `ρ = p·ρ⁽⁰⁾ + q/(N·D)·Σ_l ρ⁽ˡ⁾`, summed in label order.
pub fn build_mixture(params: &FamilyParams, blocks: &BlockPair) -> Result<SymMatrix> {
    check_payload(params, blocks.a())?;
    check_payload(params, blocks.b())?;
    let labels = LabelMap::new(params.n, params.d_a)?;
    let mut asm = assembler(params)?;
    let p = params.p();
    for at in rho0_positions(params)? {
        asm.place(at, blocks.a(), p)?;
    }
    let x = params.x();
    for label in labels.iter() {
        for at in label_positions(params, label)? {
            asm.place(at, blocks.b(), x)?;
        }
    }
    asm.finish()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub components: usize,
    pub pairs_checked: usize,
    /// Largest `|(ρ_s·ρ_t)_{rc}|` over all distinct pairs.
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Checks `ρ_s·ρ_t = 0` for every pair of distinct components.
pub fn support_orthogonality(components: &[SymMatrix]) -> Result<OrthogonalityReport> {
    let order = components.first().map_or(0, SymMatrix::order);
    let scale = components.iter().fold(0.0f64, |m, c| m.max(c.max_abs()));
    let threshold = 1e-12 * order as f64 * scale;
    let mut max_residual = 0.0f64;
    let mut pairs = 0;
    for (s, left) in components.iter().enumerate() {
        for right in &components[s + 1..] {
            max_residual = max_residual.max(left.product_max_abs(right)?);
            pairs += 1;
        }
    }
    Ok(OrthogonalityReport {
        components: components.len(),
        pairs_checked: pairs,
        max_residual,
        threshold,
        pass: max_residual <= threshold,
    })
}

/// Orthogonality of `ρ⁽⁰⁾` and all `ρ⁽ˡ⁾` of the family.
pub fn support_orthogonality_check(
    params: &FamilyParams,
    blocks: &BlockPair,
) -> Result<OrthogonalityReport> {
    let labels = LabelMap::new(params.n, params.d_a)?;
    let mut components = Vec::with_capacity(labels.len() + 1);
    components.push(build_rho0(params, blocks.a())?);
    for label in labels.iter() {
        components.push(build_rho_l(params, label, blocks.b())?);
    }
    support_orthogonality(&components)
}

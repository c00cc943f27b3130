use crate::error::{Error, Result};
use crate::family::params::FamilyParams;
use crate::tensor::{min_eigenvalue, partial_transpose, psd_threshold, FactorSpace, Side, SymMatrix};

/// The two B-side payloads of the family: `a` fills every diagonal-family
/// block of `ρ⁽⁰⁾`, `b` fills all four blocks of each `ρ⁽ˡ⁾`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPair {
    a: SymMatrix,
    b: SymMatrix,
}

/// Relative tolerance for the entrywise PT-invariance check.
const PT_INVARIANCE_TOL: f64 = 1e-12;

impl BlockPair {
    /// `a = 𝟙/(d_A·d_B^n)`, `b = 𝕀/(2·d_B^n)` (𝕀 the all-ones matrix).
    pub fn canonical(params: &FamilyParams) -> Result<Self> {
        let space = payload_space(params)?;
        let m = space.total_dim() as f64;
        let a = SymMatrix::scaled_identity(space.clone(), 1.0 / (params.d_a as f64 * m));
        let b = SymMatrix::filled(space, 1.0 / (2.0 * m));
        Ok(BlockPair { a, b })
    }

    /// User payloads. Both must be PSD, of order `d_B^n`, and invariant
    /// under partial transposition over every subset of B-factors.
    pub fn new(params: &FamilyParams, a: SymMatrix, b: SymMatrix, tol: f64) -> Result<Self> {
        let space = payload_space(params)?;
        let a = a.with_space(space.clone())?;
        let b = b.with_space(space)?;
        for (name, m) in [("a", &a), ("b", &b)] {
            let min = min_eigenvalue(m)?;
            if min < psd_threshold(m, tol) {
                return Err(Error::Domain(format!(
                    "payload {name} is not positive semidefinite (min eigenvalue {min})"
                )));
            }
            check_pt_invariant(name, m)?;
        }
        Ok(BlockPair { a, b })
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b(&self) -> &SymMatrix {
        &self.b
    }

    /// `Some(ν)` if `a = ν·𝟙` exactly.
    pub fn a_scalar(&self) -> Option<f64> {
        let nu = self.a.get(0, 0);
        let n = self.a.order();
        let is_scalar = (0..n).all(|r| {
            (0..n).all(|c| {
                let expected = if r == c { nu } else { 0.0 };
                self.a.get(r, c) == expected
            })
        });
        is_scalar.then_some(nu)
    }
}

/// `B_1 … B_n` with dimension `d_B` each.
pub fn payload_space(params: &FamilyParams) -> Result<FactorSpace> {
    FactorSpace::one_side(Side::B, params.n, params.d_b)
}

fn check_pt_invariant(name: &str, m: &SymMatrix) -> Result<()> {
    let k = m.space().len();
    let tol = PT_INVARIANCE_TOL * m.max_abs().max(f64::MIN_POSITIVE);
    for mask in 1u64..(1u64 << k) {
        let factors: Vec<usize> = (0..k).filter(|&f| mask >> f & 1 == 1).collect();
        let t = partial_transpose(m, &factors)?;
        let worst = t
            .entries()
            .iter()
            .zip(m.entries())
            .fold(0.0f64, |w, (x, y)| w.max((x - y).abs()));
        if worst > tol {
            return Err(Error::Domain(format!(
                "payload {name} changes under partial transposition of B-factors {factors:?} \
                 (max entry change {worst})"
            )));
        }
    }
    Ok(())
}

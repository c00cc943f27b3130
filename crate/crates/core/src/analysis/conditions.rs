//! Positivity margins of the reduced block matrices
//!
//! ```text
//!     X = [ xb  pa ]          Y = [ pa  xb  …  xb ]
//!         [ pa  xb ]              [ xb  pa  …  xb ]
//!                                 [ …           … ]   (d_A × d_A blocks)
//! ```
//!
//! With `a = ν·𝟙` every term of `X = 𝟙₂⊗xb + (𝕀₂ − 𝟙₂)⊗pa` and of
//! `Y = 𝟙⊗pa + (𝕀 − 𝟙)⊗xb` commutes, so on a joint eigenvector with
//! `b·u = μ·u` the eigenvalues are
//!
//! ```text
//!     X⁺ = xμ + pν      X⁻ = xμ − pν
//!     Y⁺ = pν + (d_A − 1)·xμ      Y⁻ = pν − xμ
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{BlockPair, FamilyParams};
use crate::tensor::{eigenvalues, FactorSpace, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingMode {
    /// Every eigenvalue μ of `b`, including the zeros.
    Full,
    /// Only the largest eigenvalue of `b`.
    TopEigenvalue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    pub mu: f64,
    pub nu: f64,
    pub value: f64,
    /// Number of eigenvalues of the assembled block matrix carrying this
    /// margin (1 in top-eigenvalue mode).
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionMargins {
    pub mode: PairingMode,
    pub x_plus: Vec<Margin>,
    pub x_minus: Vec<Margin>,
    pub y_plus: Vec<Margin>,
    pub y_minus: Vec<Margin>,
}

impl ConditionMargins {
    pub fn families(&self) -> [(&'static str, &[Margin]); 4] {
        [
            ("x_plus", &self.x_plus),
            ("x_minus", &self.x_minus),
            ("y_plus", &self.y_plus),
            ("y_minus", &self.y_minus),
        ]
    }

    pub fn min_margin(&self) -> f64 {
        self.families()
            .iter()
            .flat_map(|(_, f)| f.iter().map(|m| m.value))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn satisfied(&self) -> bool {
        self.min_margin() >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginPair {
    pub top: ConditionMargins,
    pub full: ConditionMargins,
}

/// `ν` with `a = ν·𝟙` and the distinct eigenvalues of `b` (descending) with
/// multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectra {
    pub nu: f64,
    pub mu: Vec<(f64, usize)>,
}

impl BlockSpectra {
    pub fn of(blocks: &BlockPair) -> Result<Self> {
        let nu = blocks.a_scalar().ok_or_else(|| {
            Error::UnsupportedDecomposition(
                "payload a is not a scalar multiple of the identity".into(),
            )
        })?;
        let mut ev = eigenvalues(blocks.b())?;
        ev.reverse();
        let tol = 1e-12 * blocks.b().max_abs().max(1.0);
        let mut mu: Vec<(f64, usize)> = Vec::new();
        for v in ev {
            match mu.last_mut() {
                Some((rep, count)) if (*rep - v).abs() <= tol => *count += 1,
                _ => mu.push((v, 1)),
            }
        }
        Ok(BlockSpectra { nu, mu })
    }
}

fn margins(params: &FamilyParams, spectra: &BlockSpectra, mode: PairingMode) -> ConditionMargins {
    let (p, x, nu) = (params.p(), params.x(), spectra.nu);
    let da = params.d_a;
    let mus: Vec<(f64, usize)> = match mode {
        PairingMode::Full => spectra.mu.clone(),
        PairingMode::TopEigenvalue => spectra.mu.first().map(|&(m, _)| (m, 1)).into_iter().collect(),
    };
    let family = |f: &dyn Fn(f64) -> f64, per_mu: usize| -> Vec<Margin> {
        mus.iter()
            .map(|&(mu, mult)| Margin {
                mu,
                nu,
                value: f(mu),
                multiplicity: match mode {
                    PairingMode::Full => mult * per_mu,
                    PairingMode::TopEigenvalue => 1,
                },
            })
            .collect()
    };
    ConditionMargins {
        mode,
        x_plus: family(&|mu| x * mu + p * nu, 1),
        x_minus: family(&|mu| x * mu - p * nu, 1),
        y_plus: family(&|mu| p * nu + (da as f64 - 1.0) * x * mu, 1),
        y_minus: family(&|mu| p * nu - x * mu, da - 1),
    }
}

/// Margins in both pairing modes. Requires `a ∝ 𝟙`.
pub fn analytic_conditions(params: &FamilyParams, blocks: &BlockPair) -> Result<MarginPair> {
    let spectra = BlockSpectra::of(blocks)?;
    Ok(MarginPair {
        top: margins(params, &spectra, PairingMode::TopEigenvalue),
        full: margins(params, &spectra, PairingMode::Full),
    })
}

/// Root in `q` of the top-mode `Y⁻` margin, which is affine in `q`.
pub fn binding_q(params: &FamilyParams, blocks: &BlockPair) -> Result<f64> {
    let spectra = BlockSpectra::of(blocks)?;
    let y_minus_at = |q: f64| -> Result<f64> {
        let m = margins(&params.with_q(q)?, &spectra, PairingMode::TopEigenvalue);
        Ok(m.y_minus[0].value)
    };
    let (m0, m1) = (y_minus_at(0.0)?, y_minus_at(1.0)?);
    if m0 == m1 {
        return Err(Error::Numeric("Y⁻ margin does not depend on q".into()));
    }
    Ok(m0 / (m0 - m1))
}

/// `X` assembled entry by entry, order `2·d_B^n`.
pub fn assemble_x_block(params: &FamilyParams, blocks: &BlockPair) -> Result<SymMatrix> {
    let (p, x) = (params.p(), params.x());
    block_grid(2, blocks, |r, c| if r == c { (x, false) } else { (p, true) })
}

/// `Y` assembled entry by entry, order `d_A·d_B^n`.
pub fn assemble_y_block(params: &FamilyParams, blocks: &BlockPair) -> Result<SymMatrix> {
    let (p, x) = (params.p(), params.x());
    block_grid(params.d_a, blocks, |r, c| if r == c { (p, true) } else { (x, false) })
}

/// `k × k` grid of payload blocks; `pick(r, c)` gives `(weight, use_a)`.
fn block_grid(
    k: usize,
    blocks: &BlockPair,
    pick: impl Fn(usize, usize) -> (f64, bool),
) -> Result<SymMatrix> {
    let m = blocks.a().order();
    let space = FactorSpace::plain(vec![k, m])?;
    Ok(SymMatrix::from_upper_fn(space, |r, c| {
        let (weight, use_a) = pick(r / m, c / m);
        let payload = if use_a { blocks.a() } else { blocks.b() };
        weight * payload.get(r % m, c % m)
    }))
}

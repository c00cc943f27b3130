//! Numerical PPT audit: minimum eigenvalues of `ρ(q)` and of its partial
//! transposes over every cut, and the measured interval of `q` on which all
//! of them are non-negative.
//!
//! `q ↦ λ_min(ρ(q))` is concave because `ρ(q)` is affine in `q`, and so is
//! the minimum over cuts. The feasible set is therefore an interval, found by
//! maximising the concave minimum with golden-section search and then
//! bisecting outward to both endpoints.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::conditions::{analytic_conditions, MarginPair};
use crate::analysis::formulas::{q_star, sep_distance_lower_bound};
use crate::error::{Error, Result};
use crate::family::{build_mixture, BlockPair, FamilyParams};
use crate::tensor::{min_eigenvalue, partial_transpose, FactorSpace, SymMatrix, DEFAULT_TOL};

/// A bipartition of the parties. Transposing a party transposes both its A-
/// and B-factor; `factors` are the resulting 0-based factor positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutSpec {
    pub parties: Vec<usize>,
    pub factors: Vec<usize>,
}

impl CutSpec {
    pub fn for_parties(space: &FactorSpace, parties: Vec<usize>) -> Result<Self> {
        let n = space.party_count();
        if parties.is_empty() || parties.len() >= n || parties.iter().any(|&k| k == 0 || k > n) {
            return Err(Error::Domain(format!(
                "cut {parties:?} is not a nonempty proper subset of 1..={n}"
            )));
        }
        let mut factors: Vec<usize> = parties.iter().flat_map(|&k| space.factors_of_party(k)).collect();
        factors.sort_unstable();
        Ok(CutSpec { parties, factors })
    }

    /// Only the A-factors of the listed parties (the bare transposition
    /// pattern acting on the A side).
    pub fn a_side_only(space: &FactorSpace, parties: Vec<usize>) -> Result<Self> {
        let mut cut = Self::for_parties(space, parties)?;
        cut.factors
            .retain(|&f| space.roles()[f].side == crate::tensor::Side::A);
        Ok(cut)
    }
}

/// Every cut up to complement: nonempty subsets of `{2..n}`, in ascending
/// bitmask order (party 2 least significant).
pub fn canonical_cuts(space: &FactorSpace) -> Result<Vec<CutSpec>> {
    let n = space.party_count();
    if n < 2 {
        return Err(Error::Domain("need at least two parties for a cut".into()));
    }
    (1u64..(1u64 << (n - 1)))
        .map(|mask| {
            let parties = (0..n - 1).filter(|k| mask >> k & 1 == 1).map(|k| k + 2).collect();
            CutSpec::for_parties(space, parties)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    /// Points at which the full per-cut table is reported.
    pub q_grid: Vec<f64>,
    /// Also report A-side-only transpositions (not used for feasibility).
    pub a_side_diagnostics: bool,
    pub tol: f64,
    pub resolution: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            q_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            a_side_diagnostics: false,
            tol: DEFAULT_TOL,
            resolution: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutMin {
    pub parties: Vec<usize>,
    pub min_eig: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub q: f64,
    pub rho_min_eig: f64,
    pub cuts: Vec<CutMin>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub a_side_cuts: Vec<CutMin>,
    /// `min(rho_min_eig, cuts[..].min_eig)`.
    pub min_eig: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchSummary {
    pub best_q: f64,
    pub best_min_eig: f64,
    pub resolution: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub order: usize,
    pub tol: f64,
    /// Eigenvalues at or above this count as non-negative.
    pub psd_threshold: f64,
    pub q_star: f64,
    pub lemma3_bound: f64,
    pub cuts: Vec<CutSpec>,
    pub points: Vec<PointReport>,
    /// Measured `[lo, hi]` on which `ρ(q)` and every partial transpose are
    /// PSD, or `None` if empty.
    pub feasible_q: Option<[f64; 2]>,
    pub search: SearchSummary,
    /// `None` when `a` is not a multiple of the identity.
    pub margins: Option<MarginPair>,
}

struct Auditor<'a> {
    base: FamilyParams,
    blocks: &'a BlockPair,
    cuts: Vec<CutSpec>,
    a_side: Vec<CutSpec>,
    threshold: f64,
    evaluations: usize,
}

impl Auditor<'_> {
    fn rho(&self, q: f64) -> Result<SymMatrix> {
        build_mixture(&self.base.with_q(q)?, self.blocks)
    }

    fn cut_mins(rho: &SymMatrix, cuts: &[CutSpec]) -> Result<Vec<CutMin>> {
        cuts.par_iter()
            .map(|cut| {
                let t = partial_transpose(rho, &cut.factors)?;
                Ok(CutMin {
                    parties: cut.parties.clone(),
                    min_eig: min_eigenvalue(&t)?,
                })
            })
            .collect()
    }

    fn min_eig(&mut self, q: f64) -> Result<f64> {
        self.evaluations += 1;
        let rho = self.rho(q)?;
        let rho_min = min_eigenvalue(&rho)?;
        let cuts = Self::cut_mins(&rho, &self.cuts)?;
        Ok(cuts.iter().map(|c| c.min_eig).fold(rho_min, f64::min))
    }

    fn point(&mut self, q: f64, diagnostics: bool) -> Result<PointReport> {
        self.evaluations += 1;
        let rho = self.rho(q)?;
        let rho_min_eig = min_eigenvalue(&rho)?;
        let cuts = Self::cut_mins(&rho, &self.cuts)?;
        let a_side_cuts = if diagnostics {
            Self::cut_mins(&rho, &self.a_side)?
        } else {
            Vec::new()
        };
        let min_eig = cuts.iter().map(|c| c.min_eig).fold(rho_min_eig, f64::min);
        Ok(PointReport {
            q,
            rho_min_eig,
            cuts,
            a_side_cuts,
            min_eig,
            feasible: min_eig >= self.threshold,
        })
    }

    /// Maximiser of the concave `min_eig` on `[0, 1]`.
    fn maximise(&mut self, resolution: f64) -> Result<(f64, f64)> {
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = self.min_eig(x1)?;
        let mut f2 = self.min_eig(x2)?;
        while hi - lo > resolution {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = self.min_eig(x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = self.min_eig(x1)?;
            }
        }
        let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        for q in [0.0, 1.0] {
            let f = self.min_eig(q)?;
            if f > best.1 {
                best = (q, f);
            }
        }
        Ok(best)
    }

    /// Boundary between `feasible` (known feasible) and `other`, returned
    /// on the feasible side.
    fn bisect(&mut self, mut feasible: f64, mut other: f64, resolution: f64) -> Result<f64> {
        if self.min_eig(other)? >= self.threshold {
            return Ok(other);
        }
        while (other - feasible).abs() > resolution {
            let mid = 0.5 * (feasible + other);
            if self.min_eig(mid)? >= self.threshold {
                feasible = mid;
            } else {
                other = mid;
            }
        }
        Ok(feasible)
    }
}

/// Runs the audit for `(n, d_A, d_B)` with the given payloads; `base.q` is
/// ignored.
pub fn ppt_audit(base: &FamilyParams, blocks: &BlockPair, config: &AuditConfig) -> Result<AuditReport> {
    let order = base.check_capacity()?;
    if let Some(&q) = config.q_grid.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        return Err(Error::Domain(format!("grid point q = {q} outside [0, 1]")));
    }
    if config.resolution.is_nan() || config.resolution <= 0.0 {
        return Err(Error::Domain("search resolution must be positive".into()));
    }
    let space = FactorSpace::family(base.n, base.d_a, base.d_b)?;
    let cuts = canonical_cuts(&space)?;
    let a_side = cuts
        .iter()
        .map(|c| CutSpec::a_side_only(&space, c.parties.clone()))
        .collect::<Result<Vec<_>>>()?;

    // max|entry| is convex in q, so the endpoints bound it on [0, 1]
    let scale = [0.0, 1.0]
        .iter()
        .map(|&q| build_mixture(&base.with_q(q)?, blocks).map(|m| m.max_abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let threshold = -config.tol * order as f64 * scale;

    let mut auditor = Auditor {
        base: *base,
        blocks,
        cuts: cuts.clone(),
        a_side,
        threshold,
        evaluations: 0,
    };

    let mut points = Vec::with_capacity(config.q_grid.len());
    for &q in &config.q_grid {
        points.push(auditor.point(q, config.a_side_diagnostics)?);
    }

    // the maximiser is located well below the endpoint resolution so that a
    // feasible set narrower than the resolution is still detected
    let (best_q, best_min_eig) = auditor.maximise(config.resolution * 1e-3)?;
    let feasible_q = if best_min_eig >= threshold {
        let lo = auditor.bisect(best_q, 0.0, config.resolution)?;
        let hi = auditor.bisect(best_q, 1.0, config.resolution)?;
        Some([lo, hi])
    } else {
        None
    };

    let margins = match analytic_conditions(base, blocks) {
        Ok(m) => Some(m),
        Err(Error::UnsupportedDecomposition(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(AuditReport {
        n: base.n,
        d_a: base.d_a,
        d_b: base.d_b,
        order,
        tol: config.tol,
        psd_threshold: threshold,
        q_star: q_star(base.n, base.d_a, base.d_b)?,
        lemma3_bound: sep_distance_lower_bound(base.n, base.d_a, base.d_b)?,
        cuts,
        points,
        feasible_q,
        search: SearchSummary {
            best_q,
            best_min_eig,
            resolution: config.resolution,
            evaluations: auditor.evaluations,
        },
        margins,
    })
}

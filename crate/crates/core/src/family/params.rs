use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dense matrix order the constructors will materialise.
pub const MAX_ORDER: usize = 1024;

/// `(n, d_A, d_B, q)` plus the derived quantities of the mixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParams {
    pub n: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub q: f64,
}

impl FamilyParams {
    pub fn new(n: usize, d_a: usize, d_b: usize, q: f64) -> Result<Self> {
        validate_dims(n, d_a, d_b)?;
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain(format!("mixing weight q = {q} outside [0, 1]")));
        }
        Ok(FamilyParams { n, d_a, d_b, q })
    }

    pub fn with_q(self, q: f64) -> Result<Self> {
        Self::new(self.n, self.d_a, self.d_b, q)
    }

    pub fn p(&self) -> f64 {
        1.0 - self.q
    }

    /// `N = 2^(n-1) - 1`, the number of transposition patterns.
    pub fn pattern_count(&self) -> usize {
        (1usize << (self.n - 1)) - 1
    }

    /// `D = d_A(d_A - 1)/2`, the number of pairs `i < j`.
    pub fn pair_count(&self) -> usize {
        self.d_a * (self.d_a - 1) / 2
    }

    /// `N·D`.
    pub fn label_count(&self) -> usize {
        self.pattern_count() * self.pair_count()
    }

    /// Weight `x = q/(N·D)` of each mixed-position component.
    pub fn x(&self) -> f64 {
        self.q / self.label_count() as f64
    }

    /// `d_A^n`, or `None` on overflow.
    pub fn a_dim(&self) -> Option<usize> {
        self.d_a.checked_pow(self.n as u32)
    }

    /// `d_B^n`, or `None` on overflow.
    pub fn b_dim(&self) -> Option<usize> {
        self.d_b.checked_pow(self.n as u32)
    }

    /// `(d_A·d_B)^n`, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.a_dim()?.checked_mul(self.b_dim()?)
    }

    /// Rejects configurations whose dense matrices exceed [`MAX_ORDER`].
    pub fn check_capacity(&self) -> Result<usize> {
        match self.order() {
            Some(order) if order <= MAX_ORDER => Ok(order),
            Some(order) => Err(Error::Capacity {
                order,
                limit: MAX_ORDER,
            }),
            None => Err(Error::Capacity {
                order: usize::MAX,
                limit: MAX_ORDER,
            }),
        }
    }
}

pub(crate) fn validate_dims(n: usize, d_a: usize, d_b: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("party count n = {n}, need n >= 2")));
    }
    if n > 32 {
        return Err(Error::Domain(format!("party count n = {n} is unreasonably large")));
    }
    if d_a < 2 {
        return Err(Error::Domain(format!(
            "d_A = {d_a} leaves no index pairs i < j, need d_A >= 2"
        )));
    }
    if d_b < 2 {
        return Err(Error::Domain(format!("d_B = {d_b}, need d_B >= 2")));
    }
    Ok(())
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Which side of the `A^{⊗n} : B^{⊗n}` split a tensor factor lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
    /// Bookkeeping factor with no party attached (e.g. the 2×2 or d_A×d_A
    /// block index of the reduced positivity matrices).
    Aux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorRole {
    pub side: Side,
    /// 1-based party index; 0 for auxiliary factors.
    pub party: usize,
}

impl FactorRole {
    pub fn a(party: usize) -> Self {
        FactorRole { side: Side::A, party }
    }

    pub fn b(party: usize) -> Self {
        FactorRole { side: Side::B, party }
    }

    pub fn aux() -> Self {
        FactorRole { side: Side::Aux, party: 0 }
    }
}

impl fmt::Display for FactorRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::A => write!(f, "A{}", self.party),
            Side::B => write!(f, "B{}", self.party),
            Side::Aux => f.write_str("aux"),
        }
    }
}

impl FromStr for FactorRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "aux" {
            return Ok(FactorRole::aux());
        }
        let bad = || Error::Format(format!("unrecognised factor role {s:?}"));
        let (side, rest) = match s.split_at_checked(1).ok_or_else(bad)? {
            ("A", rest) => (Side::A, rest),
            ("B", rest) => (Side::B, rest),
            _ => return Err(bad()),
        };
        let party: usize = rest.parse().map_err(|_| bad())?;
        if party == 0 {
            return Err(bad());
        }
        Ok(FactorRole { side, party })
    }
}

/// 1-based factor-local indices, one per tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(components: impl Into<Vec<usize>>) -> Self {
        MultiIndex(components.into())
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Ordered tensor factors with row-major (leftmost most significant)
/// flattening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpace {
    dims: Vec<usize>,
    roles: Vec<FactorRole>,
}

impl FactorSpace {
    pub fn new(dims: Vec<usize>, roles: Vec<FactorRole>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Structure("factor space needs at least one factor".into()));
        }
        if dims.len() != roles.len() {
            return Err(Error::Structure(format!(
                "{} dims but {} roles",
                dims.len(),
                roles.len()
            )));
        }
        if let Some(k) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Structure(format!("factor {k} has dimension 0")));
        }
        let space = FactorSpace { dims, roles };
        space.check_parties()?;
        space.total_dim_checked()?;
        Ok(space)
    }

    /// Factors without party structure.
    pub fn plain(dims: Vec<usize>) -> Result<Self> {
        let roles = vec![FactorRole::aux(); dims.len()];
        Self::new(dims, roles)
    }

    /// `A_1 … A_n B_1 … B_n` with local dimensions `d_a` and `d_b`.
    pub fn family(n: usize, d_a: usize, d_b: usize) -> Result<Self> {
        let mut dims = vec![d_a; n];
        dims.extend(std::iter::repeat_n(d_b, n));
        let roles = (1..=n)
            .map(FactorRole::a)
            .chain((1..=n).map(FactorRole::b))
            .collect();
        Self::new(dims, roles)
    }

    /// One side of the family space: `n` factors of dimension `d`.
    pub fn one_side(side: Side, n: usize, d: usize) -> Result<Self> {
        let roles = (1..=n)
            .map(|party| match side {
                Side::A => FactorRole::a(party),
                Side::B => FactorRole::b(party),
                Side::Aux => FactorRole::aux(),
            })
            .collect();
        Self::new(vec![d; n], roles)
    }

    fn check_parties(&self) -> Result<()> {
        for side in [Side::A, Side::B] {
            let mut parties: Vec<usize> = self
                .roles
                .iter()
                .filter(|r| r.side == side)
                .map(|r| r.party)
                .collect();
            let count = parties.len();
            parties.sort_unstable();
            parties.dedup();
            if parties.len() != count {
                return Err(Error::Structure(format!(
                    "a party owns more than one {side:?}-factor"
                )));
            }
        }
        Ok(())
    }

    fn total_dim_checked(&self) -> Result<usize> {
        self.dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Structure("total dimension overflows usize".into()))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn roles(&self) -> &[FactorRole] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides: product of the dims of the factors after `k`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Positions of the factors belonging to the given 1-based party.
    pub fn factors_of_party(&self, party: usize) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| r.side != Side::Aux && r.party == party)
            .map(|(k, _)| k)
            .collect()
    }

    /// Number of parties (largest party index among A/B factors).
    pub fn party_count(&self) -> usize {
        self.roles.iter().map(|r| r.party).max().unwrap_or(0)
    }

    /// 1-based flat index of a 1-based multi-index.
    pub fn flat_index(&self, idx: &MultiIndex) -> Result<usize> {
        self.offset(idx.components()).map(|o| o + 1)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn multi_index(&self, flat: usize) -> Result<MultiIndex> {
        let total = self.total_dim();
        if flat == 0 || flat > total {
            return Err(Error::InvalidIndex(format!(
                "flat index {flat} outside 1..={total}"
            )));
        }
        let mut rest = flat - 1;
        let mut comps = vec![0; self.dims.len()];
        for (k, &d) in self.dims.iter().enumerate().rev() {
            comps[k] = rest % d + 1;
            rest /= d;
        }
        Ok(MultiIndex(comps))
    }

    /// 0-based storage offset of 1-based components.
    pub(crate) fn offset(&self, components: &[usize]) -> Result<usize> {
        if components.len() != self.dims.len() {
            return Err(Error::InvalidIndex(format!(
                "multi-index has {} components, space has {} factors",
                components.len(),
                self.dims.len()
            )));
        }
        let mut flat = 0;
        for (k, (&c, &d)) in components.iter().zip(&self.dims).enumerate() {
            if c == 0 || c > d {
                return Err(Error::InvalidIndex(format!(
                    "component {k} = {c} outside 1..={d}"
                )));
            }
            flat = flat * d + (c - 1);
        }
        Ok(flat)
    }

    /// Concatenation `self ⊗ other`.
    pub fn tensor(&self, other: &FactorSpace) -> Result<FactorSpace> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut roles = self.roles.clone();
        roles.extend_from_slice(&other.roles);
        FactorSpace::new(dims, roles)
    }
}

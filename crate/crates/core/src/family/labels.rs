use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::MultiIndex;

/// Which of the parties `2..=n` are transposed; party 1 never is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionPattern {
    alpha: Vec<bool>,
}

impl Serialize for TranspositionPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_bits().serialize(s)
    }
}

impl TranspositionPattern {
    /// `alpha[k]` flags party `k + 2`; the vector must not be all zeros.
    pub fn new(alpha: Vec<bool>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Domain("pattern needs at least one slot (n >= 2)".into()));
        }
        if !alpha.iter().any(|&a| a) {
            return Err(Error::Domain("the all-zero pattern is excluded".into()));
        }
        Ok(TranspositionPattern { alpha })
    }

    pub fn alpha(&self) -> &[bool] {
        &self.alpha
    }

    pub fn party_count(&self) -> usize {
        self.alpha.len() + 1
    }

    /// 1-based parties whose factor is transposed.
    pub fn transposed_parties(&self) -> Vec<usize> {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(k, _)| k + 2)
            .collect()
    }

    /// Support of `τ_α(E_ij^{⊗n})` as the pair `(v, w)` with
    /// `τ_α(E_ij^{⊗n}) = |v⟩⟨w|`.
    pub fn apply(&self, i: usize, j: usize) -> (MultiIndex, MultiIndex) {
        let mut v = Vec::with_capacity(self.party_count());
        let mut w = Vec::with_capacity(self.party_count());
        v.push(i);
        w.push(j);
        for &a in &self.alpha {
            if a {
                v.push(j);
                w.push(i);
            } else {
                v.push(i);
                w.push(j);
            }
        }
        (MultiIndex(v), MultiIndex(w))
    }

    pub fn as_bits(&self) -> Vec<u8> {
        self.alpha.iter().map(|&a| a as u8).collect()
    }
}

/// `N = 2^(n-1) - 1`.
pub fn count_patterns(n: usize) -> Result<usize> {
    if !(2..=32).contains(&n) {
        return Err(Error::Domain(format!("party count n = {n} outside 2..=32")));
    }
    Ok((1usize << (n - 1)) - 1)
}

/// All non-zero patterns, in ascending binary order with `alpha[0]` most
/// significant. This is the order in which one pair `(i, j)` contributes
/// labels.
pub fn enumerate_patterns(n: usize) -> Result<Vec<TranspositionPattern>> {
    let count = count_patterns(n)?;
    let slots = n - 1;
    (1..=count)
        .map(|bits| {
            let alpha = (0..slots).map(|k| (bits >> (slots - 1 - k)) & 1 == 1).collect();
            TranspositionPattern::new(alpha)
        })
        .collect()
}

/// Label `l` of one mixed-position component and its support vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorLabel {
    pub l: usize,
    pub alpha: TranspositionPattern,
    pub i: usize,
    pub j: usize,
    pub v: MultiIndex,
    pub w: MultiIndex,
}

/// The bijection `l ↔ (α, i, j)`.
///
/// `l` is the 1-based rank of `v` in ascending lexicographic order among
/// vectors in `{1..d_A}^n` holding exactly two distinct values with the
/// smaller one first.
#[derive(Debug, Clone)]
pub struct LabelMap {
    n: usize,
    d_a: usize,
    labels: Vec<OperatorLabel>,
    index: HashMap<(TranspositionPattern, usize, usize), usize>,
}

/// Guard against enumerating absurdly large `{1..d_A}^n`.
const MAX_ENUMERATION: usize = 1 << 24;

impl LabelMap {
    pub fn new(n: usize, d_a: usize) -> Result<Self> {
        count_patterns(n)?;
        if d_a < 2 {
            return Err(Error::Domain(format!("d_A = {d_a} leaves no pairs i < j")));
        }
        let total = d_a
            .checked_pow(n as u32)
            .filter(|&t| t <= MAX_ENUMERATION)
            .ok_or_else(|| Error::Domain(format!("d_A^n = {d_a}^{n} too large to enumerate")))?;

        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut v = vec![1usize; n];
        for _ in 0..total {
            if let Some((i, j)) = two_valued(&v) {
                let alpha = v[1..].iter().map(|&c| c == j).collect();
                let alpha = TranspositionPattern::new(alpha)?;
                let w: Vec<usize> = v.iter().map(|&c| if c == i { j } else { i }).collect();
                let l = labels.len() + 1;
                index.insert((alpha.clone(), i, j), l);
                labels.push(OperatorLabel {
                    l,
                    alpha,
                    i,
                    j,
                    v: MultiIndex(v.clone()),
                    w: MultiIndex(w),
                });
            }
            increment(&mut v, d_a);
        }
        Ok(LabelMap {
            n,
            d_a,
            labels,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &OperatorLabel> {
        self.labels.iter()
    }

    pub fn labels(&self) -> &[OperatorLabel] {
        &self.labels
    }

    /// Label data for `l ∈ 1..=N·D`.
    pub fn get(&self, l: usize) -> Result<&OperatorLabel> {
        l.checked_sub(1)
            .and_then(|k| self.labels.get(k))
            .ok_or_else(|| Error::Domain(format!("label {l} outside 1..={}", self.labels.len())))
    }

    /// `f(α, i, j)`.
    pub fn label_of(&self, alpha: &TranspositionPattern, i: usize, j: usize) -> Result<usize> {
        self.index
            .get(&(alpha.clone(), i, j))
            .copied()
            .ok_or_else(|| {
                Error::Domain(format!(
                    "no label for alpha = {:?}, (i, j) = ({i}, {j})",
                    alpha.as_bits()
                ))
            })
    }
}

/// `(i, j)` if `v` holds exactly two values and the first is the smaller.
fn two_valued(v: &[usize]) -> Option<(usize, usize)> {
    let i = v[0];
    let mut j = None;
    for &c in &v[1..] {
        if c == i {
            continue;
        }
        match j {
            None => j = Some(c),
            Some(prev) if prev == c => {}
            Some(_) => return None,
        }
    }
    j.filter(|&j| j > i).map(|j| (i, j))
}

/// Lexicographic successor over `{1..d}^n`; wraps to all ones.
fn increment(v: &mut [usize], d: usize) {
    for c in v.iter_mut().rev() {
        if *c < d {
            *c += 1;
            return;
        }
        *c = 1;
    }
}

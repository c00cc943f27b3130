use crate::error::{Error, Result};
use crate::tensor::space::{FactorSpace, MultiIndex};

/// Dense real symmetric matrix over a [`FactorSpace`], stored row-major.
///
/// Symmetry is exact: every constructor either mirrors the upper triangle or
/// rejects input with `entry(r, c) != entry(c, r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    space: FactorSpace,
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(space: FactorSpace) -> Self {
        let order = space.total_dim();
        SymMatrix {
            space,
            order,
            data: vec![0.0; order * order],
        }
    }

    pub fn identity(space: FactorSpace) -> Self {
        Self::scaled_identity(space, 1.0)
    }

    pub fn scaled_identity(space: FactorSpace, value: f64) -> Self {
        let mut m = Self::zeros(space);
        for i in 0..m.order {
            m.data[i * m.order + i] = value;
        }
        m
    }

    /// Matrix with every entry equal to `value`.
    pub fn filled(space: FactorSpace, value: f64) -> Self {
        let order = space.total_dim();
        SymMatrix {
            space,
            order,
            data: vec![value; order * order],
        }
    }

    pub fn diagonal(space: FactorSpace, diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(space);
        if diag.len() != m.order {
            return Err(Error::Structure(format!(
                "diagonal of length {} for order {}",
                diag.len(),
                m.order
            )));
        }
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.order + i] = d;
        }
        Ok(m)
    }

    /// Builds from `f(r, c)` evaluated on the upper triangle (`r <= c`,
    /// 0-based) and mirrored.
    pub fn from_upper_fn(space: FactorSpace, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(space);
        let n = m.order;
        for r in 0..n {
            for c in r..n {
                let v = f(r, c);
                m.data[r * n + c] = v;
                m.data[c * n + r] = v;
            }
        }
        m
    }

    pub fn from_row_major(space: FactorSpace, entries: Vec<f64>) -> Result<Self> {
        let order = space.total_dim();
        if entries.len() != order * order {
            return Err(Error::Structure(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        for r in 0..order {
            for c in (r + 1)..order {
                let (x, y) = (entries[r * order + c], entries[c * order + r]);
                if x.to_bits() != y.to_bits() && x != y {
                    return Err(Error::Structure(format!(
                        "not symmetric at ({r}, {c}): {x} vs {y}"
                    )));
                }
            }
        }
        Ok(SymMatrix {
            space,
            order,
            data: entries,
        })
    }

    pub fn space(&self) -> &FactorSpace {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.data
    }

    /// Entry at 0-based `(r, c)`.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.order + c]
    }

    /// Entry addressed by 1-based multi-indices.
    pub fn at(&self, row: &MultiIndex, col: &MultiIndex) -> Result<f64> {
        let r = self.space.offset(row.components())?;
        let c = self.space.offset(col.components())?;
        Ok(self.get(r, c))
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.order..(r + 1) * self.order]
    }

    /// Same entries, relabelled with another space of equal total dimension.
    pub fn with_space(mut self, space: FactorSpace) -> Result<Self> {
        if space.total_dim() != self.order {
            return Err(Error::Structure(format!(
                "space of dimension {} cannot label a matrix of order {}",
                space.total_dim(),
                self.order
            )));
        }
        self.space = space;
        Ok(self)
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn scaled(&self, s: f64) -> Self {
        SymMatrix {
            space: self.space.clone(),
            order: self.order,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: f64, other: &SymMatrix, beta: f64) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(SymMatrix {
            space: self.space.clone(),
            order: self.order,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<Self> {
        self.combine(1.0, other, -1.0)
    }

    /// In-place `self += scale·other`.
    pub fn add_scaled(&mut self, other: &SymMatrix, scale: f64) -> Result<()> {
        self.check_same_shape(other)?;
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += scale * y;
        }
        Ok(())
    }

    pub(crate) fn check_same_shape(&self, other: &SymMatrix) -> Result<()> {
        if self.space.dims() != other.space.dims() {
            return Err(Error::Structure(format!(
                "factor dims {:?} vs {:?}",
                self.space.dims(),
                other.space.dims()
            )));
        }
        Ok(())
    }

    /// `max |(self·other)_{rc}|`, skipping structural zeros.
    pub fn product_max_abs(&self, other: &SymMatrix) -> Result<f64> {
        self.check_same_shape(other)?;
        let n = self.order;
        let other_rows: Vec<Vec<(usize, f64)>> = (0..n)
            .map(|k| {
                other
                    .row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0.0)
                    .map(|(c, &v)| (c, v))
                    .collect()
            })
            .collect();
        let mut acc = vec![0.0; n];
        let mut worst = 0.0f64;
        for r in 0..n {
            acc.iter_mut().for_each(|x| *x = 0.0);
            let mut touched = false;
            for (k, &x) in self.row(r).iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                for &(c, y) in &other_rows[k] {
                    acc[c] += x * y;
                    touched = true;
                }
            }
            if touched {
                worst = acc.iter().fold(worst, |m, v| m.max(v.abs()));
            }
        }
        Ok(worst)
    }
}

/// Position of an A-block `|v⟩⟨w|` in the block grid, as 1-based flat
/// indices of the A-side space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPosition {
    pub row: usize,
    pub col: usize,
}

impl BlockPosition {
    pub fn transposed(self) -> Self {
        BlockPosition {
            row: self.col,
            col: self.row,
        }
    }
}

/// Locates the A-block `|row⟩⟨col|` of the outer space.
pub fn elementary_block(
    space_a: &FactorSpace,
    row: &MultiIndex,
    col: &MultiIndex,
) -> Result<BlockPosition> {
    let shape_ok = |m: &MultiIndex| m.components().len() == space_a.len();
    if !shape_ok(row) || !shape_ok(col) {
        return Err(Error::Structure(format!(
            "block indices {row} / {col} do not match an A-space with {} factors",
            space_a.len()
        )));
    }
    Ok(BlockPosition {
        row: space_a.flat_index(row)?,
        col: space_a.flat_index(col)?,
    })
}

/// Writes B-side payloads into A-block positions of an `outer ⊗ inner`
/// matrix: placing `P` at `(v, w)` sets `entry((v,β),(w,γ)) += s·P(β,γ)`.
///
/// Placements need not be symmetric individually; [`finish`](Self::finish)
/// checks the assembled matrix.
#[derive(Debug, Clone)]
pub struct BlockAssembler {
    space: FactorSpace,
    outer: FactorSpace,
    inner_order: usize,
    order: usize,
    data: Vec<f64>,
}

impl BlockAssembler {
    pub fn new(outer: &FactorSpace, inner: &FactorSpace) -> Result<Self> {
        let space = outer.tensor(inner)?;
        let order = space.total_dim();
        Ok(BlockAssembler {
            space,
            outer: outer.clone(),
            inner_order: inner.total_dim(),
            order,
            data: vec![0.0; order * order],
        })
    }

    pub fn outer(&self) -> &FactorSpace {
        &self.outer
    }

    pub fn place(&mut self, at: BlockPosition, payload: &SymMatrix, scale: f64) -> Result<()> {
        let m = self.inner_order;
        if payload.order() != m {
            return Err(Error::Structure(format!(
                "payload of order {} for blocks of order {m}",
                payload.order()
            )));
        }
        let blocks = self.outer.total_dim();
        if at.row == 0 || at.row > blocks || at.col == 0 || at.col > blocks {
            return Err(Error::InvalidIndex(format!(
                "block ({}, {}) outside 1..={blocks}",
                at.row, at.col
            )));
        }
        let (r0, c0) = ((at.row - 1) * m, (at.col - 1) * m);
        for beta in 0..m {
            let dst = (r0 + beta) * self.order + c0;
            for (d, &p) in self.data[dst..dst + m].iter_mut().zip(payload.row(beta)) {
                *d += scale * p;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<SymMatrix> {
        SymMatrix::from_row_major(self.space, self.data)
    }
}

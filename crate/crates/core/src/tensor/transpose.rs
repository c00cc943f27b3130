use crate::error::{Error, Result};
use crate::tensor::matrix::SymMatrix;

/// Transposes the factors at the given 0-based positions.
///
/// The output entry at `(r, c)` is the input entry whose row and column
/// multi-indices have their components swapped on every listed factor. This
/// is a pure permutation of entries, so trace and Frobenius norm are
/// preserved exactly and a real symmetric input stays symmetric.
pub fn partial_transpose(m: &SymMatrix, factors: &[usize]) -> Result<SymMatrix> {
    let space = m.space();
    let mut mask = vec![false; space.len()];
    for &f in factors {
        if f >= space.len() {
            return Err(Error::Structure(format!(
                "factor position {f} outside 0..{}",
                space.len()
            )));
        }
        mask[f] = true;
    }
    if !mask.iter().any(|&b| b) {
        return Ok(m.clone());
    }

    let n = m.order();
    let dims = space.dims();
    let strides = space.strides();
    // part[i]: contribution of the transposed factors to flat index i
    let part: Vec<usize> = (0..n)
        .map(|i| {
            mask.iter()
                .enumerate()
                .filter(|(_, &t)| t)
                .map(|(k, _)| (i / strides[k]) % dims[k] * strides[k])
                .sum()
        })
        .collect();

    let src = m.entries();
    let mut out = vec![0.0; n * n];
    for r in 0..n {
        let (pr, keep_r) = (part[r], r - part[r]);
        for c in 0..n {
            let pc = part[c];
            let r2 = keep_r + pc;
            let c2 = c - pc + pr;
            out[r * n + c] = src[r2 * n + c2];
        }
    }
    SymMatrix::from_row_major(space.clone(), out)
}

//! Dense symmetric positive definite solves.
//!
//! The factorization is written against flat row-major storage on purpose:
//! results must be reproducible bit-for-bit regardless of how many worker
//! threads the caller runs, so we keep every reduction in a fixed order
//! instead of delegating to a threaded BLAS.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

#[derive(Debug)]
pub(crate) struct Cholesky {
    lower: Vec<f64>,
    n: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Factor a symmetric positive definite matrix as `L * L^T`.
///
/// Only the lower triangle of `a` is read. Fails with the offending entry
/// location when a pivot is non-positive or a non-finite value appears.
pub(crate) fn cholesky(a: ArrayView2<'_, f64>) -> Result<Cholesky> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut l = vec![0.0f64; n * n];
    for j in 0..n {
        let row_j = j * n;
        let d = a[(j, j)] - dot(&l[row_j..row_j + j], &l[row_j..row_j + j]);
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::Factorization { row: j, column: j });
        }
        let pivot = d.sqrt();
        l[row_j + j] = pivot;
        for i in j + 1..n {
            let row_i = i * n;
            let s = a[(i, j)] - dot(&l[row_i..row_i + j], &l[row_j..row_j + j]);
            let v = s / pivot;
            if !v.is_finite() {
                return Err(Error::Factorization { row: i, column: j });
            }
            l[row_i + j] = v;
        }
    }
    Ok(Cholesky { lower: l, n })
}

impl Cholesky {
    /// Solve `A x = b` in place for one right-hand side.
    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        let l = &self.lower;
        // Forward: L z = b.
        for i in 0..n {
            let row = i * n;
            b[i] = (b[i] - dot(&l[row..row + i], &b[..i])) / l[row + i];
        }
        // Backward: L^T x = z. Column access on L is row access on L^T.
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= l[k * n + i] * b[k];
            }
            b[i] = s / l[i * n + i];
        }
    }

    /// Solve `A X = B` column by column, returning `X`.
    pub(crate) fn solve_matrix(&self, b: ArrayView2<'_, f64>) -> Array2<f64> {
        let n = self.n;
        assert_eq!(b.nrows(), n, "right-hand side row count");
        let cols = b.ncols();
        let mut out = Array2::zeros((n, cols));
        let mut buf = vec![0.0f64; n];
        for c in 0..cols {
            for (dst, src) in buf.iter_mut().zip(b.column(c)) {
                *dst = *src;
            }
            self.solve_in_place(&mut buf);
            for (dst, src) in out.column_mut(c).iter_mut().zip(&buf) {
                *dst = *src;
            }
        }
        out
    }
}

/// Solve `A X = B` for SPD `A` with one step of iterative refinement,
/// which buys roughly two extra digits on badly scaled systems.
pub(crate) fn spd_solve_refined(
    a: ArrayView2<'_, f64>,
    b: ArrayView2<'_, f64>,
) -> Result<Array2<f64>> {
    let factor = cholesky(a)?;
    let x0 = factor.solve_matrix(b);
    let residual = &b - &a.dot(&x0);
    let correction = factor.solve_matrix(residual.view());
    let x = &x0 + &correction;
    for ((r, c), v) in x.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row: r, column: c });
        }
    }
    Ok(x)
}

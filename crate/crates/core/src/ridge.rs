//! Ridge coding: precompute a projector once per training set, then encode
//! any number of probes with a matrix-vector product.
//!
//! For training columns `X` and regularizer `lambda`, the projector is
//! `(X^T X + lambda I)^-1 X^T`, obtained from a Cholesky solve against the
//! Gram matrix rather than an explicit inverse.

use std::sync::Arc;

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};
use crate::linalg::spd_solve_refined;
use crate::model::{ClassPartition, Coefficients, LabeledDataset};

#[derive(Debug, Clone)]
pub struct Projector {
    matrix: Array2<f64>,
    partition: Arc<ClassPartition>,
    lambda: f64,
}

/// Solve the regularized normal equations for every training column at once.
///
/// Accepts datasets with empty classes (subset draws need this); callers
/// that require every class to be populated should check the partition
/// first.
pub fn compute_projector(train: &LabeledDataset, lambda: f64) -> Result<Projector> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidHyperparam(format!(
            "lambda must be positive and finite, got {lambda}"
        )));
    }
    let x = train.features();
    let xt = x.t();
    let mut gram = xt.dot(&x);
    for i in 0..gram.nrows() {
        gram[(i, i)] += lambda;
    }
    let matrix = spd_solve_refined(gram.view(), xt)?;
    let partition = Arc::new(ClassPartition::lenient(
        train.labels(),
        train.class_count(),
    ));
    Ok(Projector {
        matrix,
        partition,
        lambda,
    })
}

impl Projector {
    /// The `m x d` projector matrix itself.
    pub fn matrix(&self) -> ArrayView2<'_, f64> {
        self.matrix.view()
    }

    pub fn partition(&self) -> &Arc<ClassPartition> {
        &self.partition
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn feature_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn training_sample_count(&self) -> usize {
        self.matrix.nrows()
    }

    /// Code one probe vector against the training columns.
    pub fn encode(&self, probe: ArrayView1<'_, f64>) -> Result<Coefficients> {
        if probe.len() != self.feature_dim() {
            return Err(Error::DimensionMismatch {
                context: "probe length",
                expected: self.feature_dim(),
                actual: probe.len(),
            });
        }
        for (row, &v) in probe.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row, column: 0 });
            }
        }
        let values = self.matrix.dot(&probe);
        Coefficients::new(values, Arc::clone(&self.partition))
    }

    /// Code a `d x n` batch of probes in one product, returning `m x n`
    /// coefficients (one column per probe).
    pub fn encode_batch(&self, probes: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        if probes.nrows() != self.feature_dim() {
            return Err(Error::DimensionMismatch {
                context: "probe rows",
                expected: self.feature_dim(),
                actual: probes.nrows(),
            });
        }
        for ((row, column), &v) in probes.indexed_iter() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row, column });
            }
        }
        Ok(self.matrix.dot(&probes))
    }
}

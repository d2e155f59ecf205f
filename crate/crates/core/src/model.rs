//! Core data model shared by every classifier in the crate.
//!
//! A dataset stores samples as the *columns* of a `d x m` matrix, with a
//! 1-based class label per column. Labels index into a fixed label space of
//! `class_count` classes; a dataset is allowed to contain zero samples of
//! some class (subset draws produce these routinely), but the strict
//! partition constructor rejects that case for full training sets.

use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LabeledDataset {
    features: Array2<f64>,
    labels: Vec<usize>,
    class_count: usize,
}

impl LabeledDataset {
    /// Build a dataset from a `d x m` feature matrix and one label per column.
    ///
    /// Validates that `d >= 1`, labels fall in `1..=class_count`, and every
    /// feature value is finite. An empty sample set (`m == 0`) is accepted.
    pub fn new(features: Array2<f64>, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if features.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                context: "feature dimension",
                expected: 1,
                actual: 0,
            });
        }
        if labels.len() != features.ncols() {
            return Err(Error::DimensionMismatch {
                context: "label count",
                expected: features.ncols(),
                actual: labels.len(),
            });
        }
        if class_count == 0 {
            return Err(Error::InvalidHyperparam(
                "class_count must be at least 1".into(),
            ));
        }
        for (column, &label) in labels.iter().enumerate() {
            if label == 0 || label > class_count {
                return Err(Error::LabelOutOfRange {
                    label,
                    column,
                    class_count,
                });
            }
        }
        for ((row, column), v) in features.indexed_iter() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row, column });
            }
        }
        Ok(Self {
            features,
            labels,
            class_count,
        })
    }

    pub fn feature_dim(&self) -> usize {
        self.features.nrows()
    }

    pub fn sample_count(&self) -> usize {
        self.features.ncols()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sample(&self, index: usize) -> ArrayView1<'_, f64> {
        self.features.column(index)
    }

    /// Copy out the columns named by `indices`, keeping the original label
    /// space. Panics if an index is out of range.
    pub fn restrict(&self, indices: &[usize]) -> LabeledDataset {
        let features = self.features.select(Axis(1), indices);
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        LabeledDataset {
            features,
            labels,
            class_count: self.class_count,
        }
    }

    pub(crate) fn from_parts_unchecked(
        features: Array2<f64>,
        labels: Vec<usize>,
        class_count: usize,
    ) -> LabeledDataset {
        LabeledDataset {
            features,
            labels,
            class_count,
        }
    }
}

/// Column indices of a dataset grouped by class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    per_class: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.per_class.len()
    }

    /// Column indices belonging to `class` (1-based).
    pub fn class_indices(&self, class: usize) -> Result<&[usize]> {
        self.per_class
            .get(class.wrapping_sub(1))
            .map(Vec::as_slice)
            .ok_or(Error::ClassIndexOutOfRange {
                class,
                class_count: self.per_class.len(),
            })
    }

    pub fn class_size(&self, class: usize) -> Result<usize> {
        self.class_indices(class).map(<[usize]>::len)
    }

    pub fn total_samples(&self) -> usize {
        self.per_class.iter().map(Vec::len).sum()
    }

    pub(crate) fn lenient(labels: &[usize], class_count: usize) -> ClassPartition {
        let mut per_class = vec![Vec::new(); class_count];
        for (column, &label) in labels.iter().enumerate() {
            per_class[label - 1].push(column);
        }
        ClassPartition { per_class }
    }
}

/// Group a dataset's columns by class, rejecting any class with no samples.
pub fn build_class_partition(dataset: &LabeledDataset) -> Result<ClassPartition> {
    let partition = ClassPartition::lenient(dataset.labels(), dataset.class_count());
    for (i, members) in partition.per_class.iter().enumerate() {
        if members.is_empty() {
            return Err(Error::EmptyClass { class: i + 1 });
        }
    }
    Ok(partition)
}

/// A coding vector over training columns, tied to the partition that maps
/// its entries back to classes.
#[derive(Debug, Clone)]
pub struct Coefficients {
    values: Array1<f64>,
    partition: Arc<ClassPartition>,
}

impl Coefficients {
    pub fn new(values: Array1<f64>, partition: Arc<ClassPartition>) -> Result<Self> {
        if values.len() != partition.total_samples() {
            return Err(Error::DimensionMismatch {
                context: "coefficient length",
                expected: partition.total_samples(),
                actual: values.len(),
            });
        }
        Ok(Self { values, partition })
    }

    pub fn values(&self) -> ArrayView1<'_, f64> {
        self.values.view()
    }

    pub fn partition(&self) -> &Arc<ClassPartition> {
        &self.partition
    }

    /// Gather the entries belonging to `class`, in training-column order.
    pub fn class_slice(&self, class: usize) -> Result<Array1<f64>> {
        let indices = self.partition.class_indices(class)?;
        Ok(indices.iter().map(|&i| self.values[i]).collect())
    }
}

/// Settings shared by the classifiers.
///
/// `rounds` counts independent two-way splits per repetition, so each
/// repetition works with `2 * rounds` subsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    pub lambda: f64,
    pub repeats: usize,
    pub seed: u64,
    pub normalize_columns: bool,
    pub rounds: usize,
}

impl Hyperparams {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            repeats: 10,
            seed: 0,
            normalize_columns: false,
            rounds: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda <= 0.0 {
            return Err(Error::InvalidHyperparam(format!(
                "lambda must be positive and finite, got {}",
                self.lambda
            )));
        }
        if self.repeats == 0 {
            return Err(Error::InvalidHyperparam("repeats must be at least 1".into()));
        }
        if self.rounds == 0 {
            return Err(Error::InvalidHyperparam("rounds must be at least 1".into()));
        }
        Ok(())
    }
}

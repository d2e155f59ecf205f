//! Dataset loading and simple preprocessing.
//!
//! Three on-disk formats are supported: labeled CSV (one sample per row),
//! the big-endian image/label pair format used by the classic digit
//! benchmarks, and a directory tree of binary PGM images with one
//! subdirectory per class.

use std::path::PathBuf;

use ndarray::Axis;

use crate::error::{Error, Result};
use crate::model::{ClassPartition, LabeledDataset};

mod csv;
mod idx;
mod pgm;

pub use idx::{write_idx_images, write_idx_labels};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Csv,
    Idx,
    ImageDir,
}

/// Where a dataset lives and how to read it.
#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub format: DatasetFormat,
    /// CSV only: 0-based index of the label column; the last column when
    /// unset.
    pub label_column: Option<usize>,
    /// CSV only: skip one header row.
    pub has_header: bool,
    /// IDX only: the companion label file.
    pub labels_path: Option<PathBuf>,
    /// Image directories only: resize every image to `(height, width)`.
    pub expected_dims: Option<(usize, usize)>,
}

impl DatasetSpec {
    pub fn csv(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            format: DatasetFormat::Csv,
            label_column: None,
            has_header: false,
            labels_path: None,
            expected_dims: None,
        }
    }

    pub fn idx(images: impl Into<PathBuf>, labels: impl Into<PathBuf>) -> Self {
        Self {
            path: images.into(),
            format: DatasetFormat::Idx,
            label_column: None,
            has_header: false,
            labels_path: Some(labels.into()),
            expected_dims: None,
        }
    }

    pub fn image_dir(root: impl Into<PathBuf>) -> Self {
        Self {
            path: root.into(),
            format: DatasetFormat::ImageDir,
            label_column: None,
            has_header: false,
            labels_path: None,
            expected_dims: None,
        }
    }
}

/// A dataset plus the human-readable name of each class: label `k` is
/// described by `label_names[k - 1]`.
#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub dataset: LabeledDataset,
    pub label_names: Vec<String>,
}

pub fn load_dataset(spec: &DatasetSpec) -> Result<LoadedDataset> {
    match spec.format {
        DatasetFormat::Csv => csv::load_csv(spec),
        DatasetFormat::Idx => idx::load_idx(spec),
        DatasetFormat::ImageDir => pgm::load_image_dir(spec),
    }
}

/// Deterministic split: the first `per_class` columns of every class (in
/// column order) form the training set, the rest the test set. Every class
/// must keep at least one test column.
pub fn split_first_n(
    data: &LabeledDataset,
    per_class: usize,
) -> Result<(LabeledDataset, LabeledDataset)> {
    let partition = ClassPartition::lenient(data.labels(), data.class_count());
    let mut train_indices = Vec::new();
    let mut test_indices = Vec::new();
    for class in 1..=data.class_count() {
        let members = partition.class_indices(class)?;
        if members.len() <= per_class {
            return Err(Error::SplitTooSmall {
                class,
                available: members.len(),
                requested: per_class,
            });
        }
        train_indices.extend_from_slice(&members[..per_class]);
        test_indices.extend_from_slice(&members[per_class..]);
    }
    Ok((data.restrict(&train_indices), data.restrict(&test_indices)))
}

/// Optionally rescale every column to unit Euclidean norm. All-zero
/// columns are left as they are; their indices come back in the second
/// return value so callers can warn about them.
pub fn preprocess(data: &LabeledDataset, normalize_columns: bool) -> (LabeledDataset, Vec<usize>) {
    if !normalize_columns {
        return (data.clone(), Vec::new());
    }
    let mut features = data.features().to_owned();
    let mut zero_columns = Vec::new();
    for (j, mut column) in features.axis_iter_mut(Axis(1)).enumerate() {
        let norm = column.dot(&column).sqrt();
        if norm == 0.0 {
            zero_columns.push(j);
        } else {
            column.mapv_inplace(|v| v / norm);
        }
    }
    let dataset = LabeledDataset::from_parts_unchecked(
        features,
        data.labels().to_vec(),
        data.class_count(),
    );
    (dataset, zero_columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;
    use proptest::prelude::*;

    fn toy() -> LabeledDataset {
        let features = arr2(&[[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]]);
        LabeledDataset::new(features, vec![1, 2, 1, 2, 3, 3, 3], 3).unwrap()
    }

    #[test]
    fn split_takes_first_columns_per_class() {
        let (train, test) = split_first_n(&toy(), 1).unwrap();
        assert_eq!(train.labels(), &[1, 2, 3]);
        assert_eq!(
            train.features().row(0).to_vec(),
            vec![1.0, 2.0, 5.0],
            "first column of each class"
        );
        assert_eq!(test.labels(), &[1, 2, 3, 3]);
        assert_eq!(test.features().row(0).to_vec(), vec![3.0, 4.0, 6.0, 7.0]);
    }

    #[test]
    fn split_requires_a_test_remainder() {
        match split_first_n(&toy(), 2) {
            Err(Error::SplitTooSmall {
                class: 1,
                available: 2,
                requested: 2,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn preprocess_normalizes_and_flags_zero_columns() {
        let features = arr2(&[[3.0, 0.0, 1.0], [4.0, 0.0, 0.0]]);
        let ds = LabeledDataset::new(features, vec![1, 1, 2], 2).unwrap();
        let (normalized, zeros) = preprocess(&ds, true);
        assert_eq!(zeros, vec![1]);
        assert!((normalized.features()[(0, 0)] - 0.6).abs() < 1e-15);
        assert!((normalized.features()[(1, 0)] - 0.8).abs() < 1e-15);
        assert_eq!(normalized.features()[(0, 1)], 0.0);
        assert_eq!(normalized.features()[(0, 2)], 1.0);

        let (untouched, zeros) = preprocess(&ds, false);
        assert!(zeros.is_empty());
        assert_eq!(untouched.features(), ds.features());
    }

    proptest! {
        // Splitting preserves the column multiset of every class.
        #[test]
        fn split_is_a_partition_of_each_class(
            sizes in proptest::collection::vec(2usize..8, 1..4),
            per_class in 1usize..2,
        ) {
            let labels: Vec<usize> = sizes
                .iter()
                .enumerate()
                .flat_map(|(k, &n)| std::iter::repeat_n(k + 1, n))
                .collect();
            let m = labels.len();
            let features = ndarray::Array2::from_shape_fn((1, m), |(_, c)| c as f64);
            let ds = LabeledDataset::new(features, labels, sizes.len()).unwrap();
            let (train, test) = split_first_n(&ds, per_class).unwrap();
            prop_assert_eq!(train.sample_count() + test.sample_count(), m);
            // Column identities survive because feature value == column index.
            let mut seen: Vec<f64> = train
                .features()
                .row(0)
                .iter()
                .chain(test.features().row(0).iter())
                .copied()
                .collect();
            seen.sort_by(f64::total_cmp);
            let expected: Vec<f64> = (0..m).map(|i| i as f64).collect();
            prop_assert_eq!(seen, expected);
            for class in 1..=sizes.len() {
                let count = train.labels().iter().filter(|&&l| l == class).count();
                prop_assert_eq!(count, per_class);
            }
        }

        // After normalization every non-flagged column has unit norm.
        #[test]
        fn normalized_columns_have_unit_norm(seed in 0u64..200) {
            let ds = crate::synth::random_dataset(5, &[4, 4], seed);
            let (normalized, zeros) = preprocess(&ds, true);
            prop_assert!(zeros.is_empty());
            for column in normalized.features().columns() {
                let norm = column.dot(&column).sqrt();
                prop_assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }
}

//! Seeded synthetic datasets for tests and benchmarks.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::LabeledDataset;

/// Uniform noise in `[-1, 1)` with `per_class[k]` columns labeled `k + 1`,
/// grouped by class in column order.
pub fn random_dataset(feature_dim: usize, per_class: &[usize], seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = per_class.iter().sum();
    let features = Array2::from_shape_fn((feature_dim, total), |_| rng.gen_range(-1.0..1.0));
    let labels = per_class
        .iter()
        .enumerate()
        .flat_map(|(k, &n)| std::iter::repeat_n(k + 1, n))
        .collect();
    LabeledDataset::new(features, labels, per_class.len()).unwrap()
}

/// Train/test pair where each class occupies its own disjoint coordinate
/// block, so class subspaces are exactly orthogonal and any reasonable
/// classifier should reach 100% accuracy on the test half.
pub fn separable_pair(
    classes: usize,
    train_per_class: usize,
    test_per_class: usize,
    dims_per_class: usize,
    seed: u64,
) -> (LabeledDataset, LabeledDataset) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = classes * dims_per_class;
    let mut build = |per_class: usize| {
        let mut features = Array2::zeros((d, classes * per_class));
        let mut labels = Vec::with_capacity(classes * per_class);
        for class in 0..classes {
            for j in 0..per_class {
                let col = class * per_class + j;
                for r in 0..dims_per_class {
                    features[(class * dims_per_class + r, col)] = rng.gen_range(0.5..1.5);
                }
                labels.push(class + 1);
            }
        }
        LabeledDataset::new(features, labels, classes).unwrap()
    };
    let train = build(train_per_class);
    let test = build(test_per_class);
    (train, test)
}

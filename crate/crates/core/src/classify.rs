//! Nearest-reconstruction classification on top of ridge coding.
//!
//! Each class reconstructs the probe from its own coding slice; the class
//! with the smallest reconstruction error wins. Two error flavors are
//! supported: the plain squared residual, and the residual divided by the
//! squared norm of the class slice, which penalizes classes that only
//! reach the probe with large coefficients. A class that cannot represent
//! the probe at all (no samples, or an all-zero slice under the normalized
//! rule) gets an infinite error.

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::model::{build_class_partition, ClassPartition, Coefficients, Hyperparams, LabeledDataset};
use crate::ridge::compute_projector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualKind {
    Plain,
    #[default]
    Normalized,
}

/// One reconstruction error per class; index 0 holds class 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualVector {
    values: Vec<f64>,
}

impl ResidualVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn class_count(&self) -> usize {
        self.values.len()
    }
}

fn check_alignment(train: &LabeledDataset, coeffs: &Coefficients, probe: ArrayView1<'_, f64>) -> Result<()> {
    if coeffs.values().len() != train.sample_count() {
        return Err(Error::DimensionMismatch {
            context: "coefficients per training column",
            expected: train.sample_count(),
            actual: coeffs.values().len(),
        });
    }
    if probe.len() != train.feature_dim() {
        return Err(Error::DimensionMismatch {
            context: "probe length",
            expected: train.feature_dim(),
            actual: probe.len(),
        });
    }
    Ok(())
}

/// Squared reconstruction error of `probe` using only the columns of
/// `class`. Infinite when the class has no samples.
pub fn plain_residual(
    train: &LabeledDataset,
    coeffs: &Coefficients,
    probe: ArrayView1<'_, f64>,
    class: usize,
) -> Result<f64> {
    check_alignment(train, coeffs, probe)?;
    let indices = coeffs.partition().class_indices(class)?;
    if indices.is_empty() {
        return Ok(f64::INFINITY);
    }
    let mut reconstruction = vec![0.0f64; probe.len()];
    for &col in indices {
        let weight = coeffs.values()[col];
        for (acc, &x) in reconstruction.iter_mut().zip(train.sample(col)) {
            *acc += weight * x;
        }
    }
    Ok(probe
        .iter()
        .zip(&reconstruction)
        .map(|(y, r)| (y - r) * (y - r))
        .sum())
}

/// Plain residual divided by the squared norm of the class slice; infinite
/// when that norm is zero (which covers empty classes).
pub fn normalized_residual(
    train: &LabeledDataset,
    coeffs: &Coefficients,
    probe: ArrayView1<'_, f64>,
    class: usize,
) -> Result<f64> {
    let slice_norm_sq: f64 = coeffs
        .class_slice(class)?
        .iter()
        .map(|v| v * v)
        .sum();
    if slice_norm_sq == 0.0 {
        check_alignment(train, coeffs, probe)?;
        return Ok(f64::INFINITY);
    }
    Ok(plain_residual(train, coeffs, probe, class)? / slice_norm_sq)
}

/// All per-class errors for one probe.
pub fn compute_residuals(
    train: &LabeledDataset,
    coeffs: &Coefficients,
    probe: ArrayView1<'_, f64>,
    kind: ResidualKind,
) -> Result<ResidualVector> {
    let c = coeffs.partition().class_count();
    let mut values = Vec::with_capacity(c);
    for class in 1..=c {
        values.push(match kind {
            ResidualKind::Plain => plain_residual(train, coeffs, probe, class)?,
            ResidualKind::Normalized => normalized_residual(train, coeffs, probe, class)?,
        });
    }
    Ok(ResidualVector::new(values))
}

/// Pick the class with the smallest error, lowest class index on ties.
/// Fails when every entry is infinite.
pub fn classify(residuals: &ResidualVector) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &r) in residuals.values().iter().enumerate() {
        if r.is_finite() && best.is_none_or(|(_, b)| r < b) {
            best = Some((i + 1, r));
        }
    }
    best.map(|(class, _)| class).ok_or(Error::NoRepresentableClass)
}

/// Per-class squared reconstruction errors for a whole probe batch at once:
/// one row per class, one column per probe. Classes with no members get an
/// infinite row. This is the batched core both predictors reduce to.
pub(crate) fn residual_table(
    train: &LabeledDataset,
    partition: &ClassPartition,
    coeffs: &Array2<f64>,
    probes: ArrayView2<'_, f64>,
    kind: ResidualKind,
) -> Array2<f64> {
    let c = partition.class_count();
    let n = probes.ncols();
    let mut table = Array2::zeros((c, n));
    for class in 1..=c {
        let indices = partition.class_indices(class).expect("class in range");
        let mut row = table.row_mut(class - 1);
        if indices.is_empty() {
            row.fill(f64::INFINITY);
            continue;
        }
        let x_class = train.features().select(Axis(1), indices);
        let a_class = coeffs.select(Axis(0), indices);
        let reconstruction = x_class.dot(&a_class);
        for j in 0..n {
            let residual: f64 = probes
                .column(j)
                .iter()
                .zip(reconstruction.column(j))
                .map(|(y, r)| (y - r) * (y - r))
                .sum();
            row[j] = match kind {
                ResidualKind::Plain => residual,
                ResidualKind::Normalized => {
                    let norm_sq: f64 = a_class.column(j).iter().map(|v| v * v).sum();
                    if norm_sq == 0.0 {
                        f64::INFINITY
                    } else {
                        residual / norm_sq
                    }
                }
            };
        }
    }
    table
}

pub(crate) fn argmin_labels(table: &Array2<f64>) -> Result<Vec<usize>> {
    let mut labels = Vec::with_capacity(table.ncols());
    for j in 0..table.ncols() {
        let residuals = ResidualVector::new(table.column(j).to_vec());
        labels.push(classify(&residuals).map_err(|e| e.at_sample(j))?);
    }
    Ok(labels)
}

/// Classify every probe column with ridge coding and the given error rule.
pub fn cr_predict_with(
    train: &LabeledDataset,
    test: ArrayView2<'_, f64>,
    params: &Hyperparams,
    kind: ResidualKind,
) -> Result<Vec<usize>> {
    params.validate()?;
    build_class_partition(train)?;
    let projector = compute_projector(train, params.lambda)?;
    let coeffs = projector.encode_batch(test)?;
    let table = residual_table(train, projector.partition(), &coeffs, test, kind);
    argmin_labels(&table)
}

/// Classify with the default normalized error rule.
pub fn cr_predict(
    train: &LabeledDataset,
    test: ArrayView2<'_, f64>,
    params: &Hyperparams,
) -> Result<Vec<usize>> {
    cr_predict_with(train, test, params, ResidualKind::Normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use ndarray::{arr1, arr2};
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn plain_residual_hand_checked() {
        // Class 1 is the single column e1 with weight 0.5:
        // reconstruction (0.5, 0), probe (1, 0), error 0.25.
        let train =
            LabeledDataset::new(arr2(&[[1.0, 0.0], [0.0, 1.0]]), vec![1, 2], 2).unwrap();
        let partition = Arc::new(build_class_partition(&train).unwrap());
        let coeffs = Coefficients::new(arr1(&[0.5, 0.0]), partition).unwrap();
        let probe = arr1(&[1.0, 0.0]);
        let r1 = plain_residual(&train, &coeffs, probe.view(), 1).unwrap();
        assert!((r1 - 0.25).abs() < 1e-15);
        // Class 2 has weight 0: reconstruction is zero, error is |probe|^2.
        let r2 = plain_residual(&train, &coeffs, probe.view(), 2).unwrap();
        assert!((r2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalized_residual_divides_by_slice_norm() {
        let train =
            LabeledDataset::new(arr2(&[[1.0, 0.0], [0.0, 1.0]]), vec![1, 2], 2).unwrap();
        let partition = Arc::new(build_class_partition(&train).unwrap());
        let coeffs = Coefficients::new(arr1(&[0.5, 0.0]), partition).unwrap();
        let probe = arr1(&[1.0, 0.0]);
        let r1 = normalized_residual(&train, &coeffs, probe.view(), 1).unwrap();
        assert!((r1 - 1.0).abs() < 1e-15, "0.25 / 0.25 = 1");
        // Zero slice: infinite no matter how small the plain error is.
        let r2 = normalized_residual(&train, &coeffs, probe.view(), 2).unwrap();
        assert!(r2.is_infinite());
    }

    #[test]
    fn classify_breaks_ties_toward_smaller_class() {
        let r = ResidualVector::new(vec![2.0, 1.0, 1.0]);
        assert_eq!(classify(&r).unwrap(), 2);
        let r = ResidualVector::new(vec![f64::INFINITY, 3.0]);
        assert_eq!(classify(&r).unwrap(), 2);
    }

    #[test]
    fn classify_rejects_all_infinite() {
        let r = ResidualVector::new(vec![f64::INFINITY, f64::INFINITY]);
        match classify(&r) {
            Err(Error::NoRepresentableClass) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn predict_is_perfect_on_separable_classes() {
        let (train, test) = synth::separable_pair(4, 5, 3, 6, 11);
        let params = Hyperparams::new(1e-3);
        for kind in [ResidualKind::Plain, ResidualKind::Normalized] {
            let labels = cr_predict_with(&train, test.features(), &params, kind).unwrap();
            assert_eq!(labels, test.labels(), "{kind:?}");
        }
    }

    #[test]
    fn predict_rejects_empty_training_class() {
        let train =
            LabeledDataset::new(arr2(&[[1.0, 2.0]]), vec![1, 1], 2).unwrap();
        let test = arr2(&[[1.0]]);
        match cr_predict(&train, test.view(), &Hyperparams::new(0.1)) {
            Err(Error::EmptyClass { class: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn batched_table_matches_per_probe_residuals() {
        let ds = synth::random_dataset(7, &[4, 3, 5], 33);
        let probes = synth::random_dataset(7, &[6], 34);
        let projector = compute_projector(&ds, 0.02).unwrap();
        let batch = projector.encode_batch(probes.features()).unwrap();
        for kind in [ResidualKind::Plain, ResidualKind::Normalized] {
            let table = residual_table(&ds, projector.partition(), &batch, probes.features(), kind);
            for j in 0..probes.sample_count() {
                let coeffs = projector.encode(probes.sample(j)).unwrap();
                let single = compute_residuals(&ds, &coeffs, probes.sample(j), kind).unwrap();
                for class in 1..=3 {
                    let a = table[(class - 1, j)];
                    let b = single.values()[class - 1];
                    assert!(
                        (a - b).abs() <= 1e-12 * b.abs().max(1.0),
                        "{kind:?} class {class} probe {j}: {a} vs {b}"
                    );
                }
            }
        }
    }

    proptest! {
        // Positive rescaling of the probe never changes the decision.
        #[test]
        fn decision_is_scale_invariant(seed in 0u64..200, scale in 0.1f64..10.0) {
            let (train, test) = synth::separable_pair(3, 4, 2, 4, seed);
            let params = Hyperparams::new(0.05);
            let scaled = test.features().to_owned() * scale;
            for kind in [ResidualKind::Plain, ResidualKind::Normalized] {
                let base = cr_predict_with(&train, test.features(), &params, kind).unwrap();
                let after = cr_predict_with(&train, scaled.view(), &params, kind).unwrap();
                prop_assert_eq!(&base, &after);
            }
        }

        // Adding a constant to every class error never changes the argmin.
        #[test]
        fn argmin_ignores_constant_shifts(
            values in proptest::collection::vec(0.0f64..1e6, 2..12),
            shift in 0.0f64..1e5,
        ) {
            let base = ResidualVector::new(values.clone());
            let shifted = ResidualVector::new(values.iter().map(|v| v + shift).collect());
            prop_assert_eq!(classify(&base).unwrap(), classify(&shifted).unwrap());
        }
    }
}

//! Diverse-subset ensemble classification.
//!
//! Each repetition splits every class into two random halves, `rounds`
//! times over, giving `2 * rounds` subsets that each span all classes.
//! Every subset codes the probe on its own columns and scores each class;
//! a class absent from a subset scores infinity. The per-subset scores are
//! summed (infinity absorbs), the sums are averaged across repetitions,
//! and the smallest averaged error picks the class. Randomness comes from
//! a counter-based generator keyed by `(seed, repetition)`, so results do
//! not depend on thread count or scheduling.

use ndarray::{Array2, ArrayView1, ArrayView2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{argmin_labels, compute_residuals, residual_table, ResidualKind};
use crate::error::{Error, Result};
use crate::model::{build_class_partition, ClassPartition, Hyperparams, LabeledDataset};
use crate::ridge::compute_projector;

/// How the ensemble draws its subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetStrategy {
    /// The real method: independent per-class halvings.
    #[default]
    RandomHalvings,
    /// Diagnostic mode: one subset containing every training column, which
    /// must reproduce plain ridge classification exactly.
    SingleFullSubset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrfdsOptions {
    pub residual_kind: ResidualKind,
    pub strategy: SubsetStrategy,
}

impl Default for SrfdsOptions {
    fn default() -> Self {
        Self {
            residual_kind: ResidualKind::Plain,
            strategy: SubsetStrategy::RandomHalvings,
        }
    }
}

/// The subsets drawn for one repetition. Column indices within a subset are
/// kept sorted; the split sizes record how many columns of each class land
/// in the first and second half of a round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetPlan {
    subsets: Vec<Vec<usize>>,
    split_sizes: Vec<(usize, usize)>,
    degenerate: bool,
}

impl SubsetPlan {
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Per-class `(first_half, second_half)` sizes; the first half gets the
    /// extra column when a class has an odd count.
    pub fn split_sizes(&self) -> &[(usize, usize)] {
        &self.split_sizes
    }

    /// True when some class is too small to populate both halves.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The diagnostic plan: a single subset holding every column.
    pub fn single_full(partition: &ClassPartition) -> SubsetPlan {
        let mut all: Vec<usize> = Vec::with_capacity(partition.total_samples());
        let mut split_sizes = Vec::with_capacity(partition.class_count());
        for class in 1..=partition.class_count() {
            let indices = partition.class_indices(class).expect("class in range");
            all.extend_from_slice(indices);
            split_sizes.push((indices.len(), 0));
        }
        all.sort_unstable();
        SubsetPlan {
            subsets: vec![all],
            split_sizes,
            degenerate: false,
        }
    }
}

/// The plan the ensemble uses for repetition `repetition` under `seed`:
/// each repetition draws from its own independent stream, so plans don't
/// depend on evaluation order.
pub fn plan_for_repetition(
    partition: &ClassPartition,
    rounds: usize,
    seed: u64,
    repetition: u64,
) -> Result<SubsetPlan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(repetition);
    make_subsets(partition, rounds, &mut rng)
}

/// Draw `2 * rounds` subsets by halving each class independently per round.
pub fn make_subsets(
    partition: &ClassPartition,
    rounds: usize,
    rng: &mut impl Rng,
) -> Result<SubsetPlan> {
    if rounds == 0 {
        return Err(Error::InvalidHyperparam("rounds must be at least 1".into()));
    }
    let c = partition.class_count();
    let mut split_sizes = Vec::with_capacity(c);
    let mut degenerate = false;
    for class in 1..=c {
        let n = partition.class_size(class)?;
        let first = n.div_ceil(2);
        split_sizes.push((first, n - first));
        if n < 2 {
            degenerate = true;
        }
    }
    let mut subsets = Vec::with_capacity(2 * rounds);
    for _ in 0..rounds {
        let mut first_half = Vec::new();
        let mut second_half = Vec::new();
        for class in 1..=c {
            let mut pool: Vec<usize> = partition.class_indices(class)?.to_vec();
            pool.shuffle(rng);
            let cut = pool.len().div_ceil(2);
            first_half.extend_from_slice(&pool[..cut]);
            second_half.extend_from_slice(&pool[cut..]);
        }
        first_half.sort_unstable();
        second_half.sort_unstable();
        subsets.push(first_half);
        subsets.push(second_half);
    }
    Ok(SubsetPlan {
        subsets,
        split_sizes,
        degenerate,
    })
}

/// Per-subset, per-class errors for one probe within one repetition, plus
/// their fused (summed) form.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTensor {
    per_subset: Array2<f64>,
    fused: Vec<f64>,
    repetition: usize,
}

impl ErrorTensor {
    /// Wrap a `subsets x classes` error matrix, computing the fused row.
    pub fn new(per_subset: Array2<f64>, repetition: usize) -> Self {
        let fused = fuse_rows(&per_subset);
        Self {
            per_subset,
            fused,
            repetition,
        }
    }

    pub fn per_subset(&self) -> ArrayView2<'_, f64> {
        self.per_subset.view()
    }

    pub fn fused(&self) -> &[f64] {
        &self.fused
    }

    pub fn repetition(&self) -> usize {
        self.repetition
    }
}

fn fuse_rows(per_subset: &Array2<f64>) -> Vec<f64> {
    (0..per_subset.ncols())
        .map(|class| per_subset.column(class).iter().sum())
        .collect()
}

/// Sum each class's errors across subsets; any infinite entry makes the
/// class's fused error infinite.
pub fn fuse_errors(tensor: &ErrorTensor) -> Vec<f64> {
    fuse_rows(&tensor.per_subset)
}

/// Score one probe against every subset of a plan.
pub fn subset_errors(
    train: &LabeledDataset,
    plan: &SubsetPlan,
    probe: ArrayView1<'_, f64>,
    lambda: f64,
    kind: ResidualKind,
) -> Result<ErrorTensor> {
    let c = train.class_count();
    let mut per_subset = Array2::zeros((plan.subsets.len(), c));
    for (s, subset) in plan.subsets.iter().enumerate() {
        let sub_train = train.restrict(subset);
        let projector = compute_projector(&sub_train, lambda)?;
        let coeffs = projector.encode(probe)?;
        let residuals = compute_residuals(&sub_train, &coeffs, probe, kind)?;
        for (class, &r) in residuals.values().iter().enumerate() {
            per_subset[(s, class)] = r;
        }
    }
    Ok(ErrorTensor::new(per_subset, 0))
}

/// Fused errors averaged across repetitions, for one probe.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedError {
    values: Vec<f64>,
    repeats: usize,
}

impl AveragedError {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn repeats(&self) -> usize {
        self.repeats
    }
}

/// Ensemble prediction with explicit error rule and subset strategy.
///
/// Returns one label and one averaged error vector per probe column.
/// Repetitions run in parallel; the averaging order is fixed, so the
/// output is identical no matter how the work is scheduled.
pub fn srfds_predict_with(
    train: &LabeledDataset,
    test: ArrayView2<'_, f64>,
    params: &Hyperparams,
    options: &SrfdsOptions,
) -> Result<(Vec<usize>, Vec<AveragedError>)> {
    params.validate()?;
    let partition = build_class_partition(train)?;
    let c = train.class_count();
    let n = test.ncols();

    let plans: Vec<SubsetPlan> = (0..params.repeats)
        .map(|z| match options.strategy {
            SubsetStrategy::SingleFullSubset => Ok(SubsetPlan::single_full(&partition)),
            SubsetStrategy::RandomHalvings => {
                plan_for_repetition(&partition, params.rounds, params.seed, z as u64)
            }
        })
        .collect::<Result<_>>()?;

    // Indexed parallel collect keeps repetition order, and the sum below is
    // sequential, so scheduling cannot perturb the floating-point result.
    let fused_per_repetition: Vec<Result<Array2<f64>>> = plans
        .par_iter()
        .map(|plan| {
            let mut fused = Array2::zeros((c, n));
            for subset in plan.subsets() {
                let sub_train = train.restrict(subset);
                let projector = compute_projector(&sub_train, params.lambda)?;
                let coeffs = projector.encode_batch(test)?;
                let table = residual_table(
                    &sub_train,
                    projector.partition(),
                    &coeffs,
                    test,
                    options.residual_kind,
                );
                fused += &table;
            }
            Ok(fused)
        })
        .collect();

    let mut averaged = Array2::zeros((c, n));
    for fused in fused_per_repetition {
        averaged += &fused?;
    }
    averaged /= params.repeats as f64;

    let labels = argmin_labels(&averaged)?;
    let errors = (0..n)
        .map(|j| AveragedError {
            values: averaged.column(j).to_vec(),
            repeats: params.repeats,
        })
        .collect();
    Ok((labels, errors))
}

/// Ensemble prediction with the default options.
pub fn srfds_predict(
    train: &LabeledDataset,
    test: ArrayView2<'_, f64>,
    params: &Hyperparams,
) -> Result<Vec<usize>> {
    srfds_predict_with(train, test, params, &SrfdsOptions::default()).map(|(labels, _)| labels)
}

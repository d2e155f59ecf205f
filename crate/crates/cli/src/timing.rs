//! Wall-clock comparison of subset-divided projectors against one full
//! projector. Division wins on cubic factorization cost: two half-size
//! solves are cheaper than one full-size solve.

use std::time::{Duration, Instant};

use srfds::{build_class_partition, compute_projector, plan_for_repetition, Error, LabeledDataset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetTiming {
    /// Median time to draw a plan and project every one of its subsets.
    pub divided: Duration,
    /// Median time for a single projector over the whole training set.
    pub undivided: Duration,
}

/// Measure both pipelines `runs` times and keep the medians. Each run uses
/// the plan of a different repetition index, like the ensemble would.
pub fn time_subset_division(
    train: &LabeledDataset,
    lambda: f64,
    rounds: usize,
    seed: u64,
    runs: usize,
) -> srfds::Result<SubsetTiming> {
    if runs == 0 {
        return Err(Error::InvalidHyperparam("runs must be at least 1".into()));
    }
    let partition = build_class_partition(train)?;
    let mut divided = Vec::with_capacity(runs);
    let mut undivided = Vec::with_capacity(runs);
    for run in 0..runs {
        let start = Instant::now();
        let plan = plan_for_repetition(&partition, rounds, seed, run as u64)?;
        for subset in plan.subsets() {
            compute_projector(&train.restrict(subset), lambda)?;
        }
        divided.push(start.elapsed());

        let start = Instant::now();
        compute_projector(train, lambda)?;
        undivided.push(start.elapsed());
    }
    divided.sort_unstable();
    undivided.sort_unstable();
    Ok(SubsetTiming {
        divided: divided[runs / 2],
        undivided: undivided[runs / 2],
    })
}

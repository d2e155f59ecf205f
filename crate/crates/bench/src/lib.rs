//! Shared fixtures for the criterion benchmarks.

use srfds::LabeledDataset;

/// A train/test pair sized to stress the projector and batch encoding.
pub fn benchmark_pair(per_class: usize, test_per_class: usize) -> (LabeledDataset, LabeledDataset) {
    srfds::synth::separable_pair(10, per_class, test_per_class, 12, 2024)
}

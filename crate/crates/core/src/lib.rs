//! Classification by class-wise reconstruction error.
//!
//! The crate implements three related classifiers over datasets whose
//! samples are the columns of a feature matrix:
//!
//! * **Ridge coding** ([`cr_predict`]): code a probe against all training
//!   columns through a precomputed projector, then pick the class whose
//!   columns reconstruct the probe best.
//! * **SRFDS** ([`srfds_predict`]): an ensemble that repeatedly halves
//!   every class into random subsets, scores each subset independently,
//!   and fuses the per-subset errors before deciding.
//! * **l1 coding** ([`src_predict`]): the classic sparse-coding baseline,
//!   solved with FISTA.
//!
//! All randomness is counter-based and derived from an explicit seed, so
//! every prediction is reproducible bit for bit regardless of thread
//! count.

pub mod classify;
pub mod data;
pub mod ensemble;
pub mod error;
pub mod l1;
mod linalg;
pub mod model;
pub mod ridge;
pub mod synth;

pub use classify::{
    classify, compute_residuals, cr_predict, cr_predict_with, normalized_residual, plain_residual,
    ResidualKind, ResidualVector,
};
pub use data::{
    load_dataset, preprocess, split_first_n, write_idx_images, write_idx_labels, DatasetFormat,
    DatasetSpec, LoadedDataset,
};
pub use ensemble::{
    fuse_errors, make_subsets, plan_for_repetition, srfds_predict, srfds_predict_with,
    subset_errors, AveragedError, ErrorTensor, SrfdsOptions, SubsetPlan, SubsetStrategy,
};
pub use error::{Error, Result};
pub use l1::{fista_solve, soft_threshold, src_predict, L1SolveConfig, L1Solution, SrcOutcome, StepSize};
pub use model::{
    build_class_partition, ClassPartition, Coefficients, Hyperparams, LabeledDataset,
};
pub use ridge::{compute_projector, Projector};

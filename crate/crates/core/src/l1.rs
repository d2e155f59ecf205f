//! l1-regularized coding baseline.
//!
//! Minimizes `|y - X a|^2 + lambda * |a|_1` with FISTA. The implementation
//! iterates on the equivalent objective scaled by one half, so the step
//! size is `1 / |X|_2^2` (estimated by power iteration with a safety
//! factor) and the shrinkage threshold is `lambda / 2 * step`.

use ndarray::{Array1, ArrayView1, ArrayView2};
use rayon::prelude::*;
use std::sync::Arc;

use crate::classify::{classify, compute_residuals, ResidualKind};
use crate::error::{Error, Result};
use crate::model::{build_class_partition, Coefficients, LabeledDataset};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StepSize {
    /// `0.95 / |X|_2^2` with the spectral norm taken from 20 power
    /// iterations.
    #[default]
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1SolveConfig {
    pub lambda: f64,
    pub max_iters: usize,
    pub tolerance: f64,
    pub step_size: StepSize,
}

impl L1SolveConfig {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            max_iters: 500,
            tolerance: 1e-6,
            step_size: StepSize::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda <= 0.0 {
            return Err(Error::InvalidHyperparam(format!(
                "lambda must be positive and finite, got {}",
                self.lambda
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidHyperparam("max_iters must be at least 1".into()));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::InvalidHyperparam(format!(
                "tolerance must be positive and finite, got {}",
                self.tolerance
            )));
        }
        if let StepSize::Fixed(step) = self.step_size {
            if !step.is_finite() || step <= 0.0 {
                return Err(Error::InvalidHyperparam(format!(
                    "fixed step must be positive and finite, got {step}"
                )));
            }
        }
        Ok(())
    }
}

/// Shrink `value` toward zero by `threshold`, clamping at zero.
pub fn soft_threshold(value: f64, threshold: f64) -> f64 {
    if value > threshold {
        value - threshold
    } else if value < -threshold {
        value + threshold
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct L1Solution {
    pub values: Array1<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Final `|y - X a|^2 + lambda * |a|_1`.
    pub objective: f64,
}

fn spectral_norm_sq(x: ArrayView2<'_, f64>, iterations: usize) -> f64 {
    let m = x.ncols();
    if m == 0 || x.nrows() == 0 {
        return 0.0;
    }
    let mut v = Array1::from_elem(m, 1.0 / (m as f64).sqrt());
    let mut estimate = 0.0;
    for _ in 0..iterations {
        let w = x.t().dot(&x.dot(&v));
        let norm = w.dot(&w).sqrt();
        if norm == 0.0 || norm.is_nan() {
            return 0.0;
        }
        estimate = v.dot(&w);
        v = w / norm;
    }
    estimate
}

fn objective_value(
    x: ArrayView2<'_, f64>,
    y: ArrayView1<'_, f64>,
    a: &Array1<f64>,
    lambda: f64,
) -> f64 {
    let r = &y.to_owned() - &x.dot(a);
    r.dot(&r) + lambda * a.iter().map(|v| v.abs()).sum::<f64>()
}

/// Solve `min_a |y - X a|^2 + lambda |a|_1` from a zero start.
///
/// Convergence is declared when the relative coefficient change
/// `|a_next - a| / max(1, |a|)` drops below the tolerance; `converged`
/// reports whether that happened within the iteration budget.
pub fn fista_solve(
    x: ArrayView2<'_, f64>,
    y: ArrayView1<'_, f64>,
    config: &L1SolveConfig,
) -> Result<L1Solution> {
    config.validate()?;
    if y.len() != x.nrows() {
        return Err(Error::DimensionMismatch {
            context: "target length",
            expected: x.nrows(),
            actual: y.len(),
        });
    }
    for ((row, column), v) in x.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row, column });
        }
    }
    for (row, &v) in y.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { row, column: 0 });
        }
    }

    let m = x.ncols();
    let zeros = || Array1::zeros(m);
    let step = match config.step_size {
        StepSize::Fixed(step) => step,
        StepSize::Auto => {
            let norm_sq = spectral_norm_sq(x, 20);
            if norm_sq <= 0.0 || norm_sq.is_nan() {
                // A zero operator never moves the iterate off the origin.
                let a = zeros();
                let objective = objective_value(x, y, &a, config.lambda);
                return Ok(L1Solution {
                    values: a,
                    converged: true,
                    iterations: 0,
                    objective,
                });
            }
            0.95 / norm_sq
        }
    };

    let threshold = 0.5 * config.lambda * step;
    let mut a = zeros();
    let mut momentum = a.clone();
    let mut t = 1.0f64;
    let mut converged = false;
    let mut iterations = 0;
    for k in 1..=config.max_iters {
        iterations = k;
        let gradient = x.t().dot(&(&x.dot(&momentum) - &y));
        let candidate: Array1<f64> = momentum
            .iter()
            .zip(&gradient)
            .map(|(&v, &g)| soft_threshold(v - step * g, threshold))
            .collect();
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        momentum = &candidate + &((&candidate - &a) * ((t - 1.0) / t_next));
        let change = (&candidate - &a).dot(&(&candidate - &a)).sqrt();
        let scale = a.dot(&a).sqrt().max(1.0);
        a = candidate;
        t = t_next;
        if change <= config.tolerance * scale {
            converged = true;
            break;
        }
    }
    let objective = objective_value(x, y, &a, config.lambda);
    Ok(L1Solution {
        values: a,
        converged,
        iterations,
        objective,
    })
}

/// Sparse-coding classification: code each probe with [`fista_solve`] over
/// the training columns, then pick the class with the smallest plain
/// reconstruction error.
#[derive(Debug, Clone, PartialEq)]
pub struct SrcOutcome {
    pub labels: Vec<usize>,
    /// Probe columns whose solve hit the iteration budget.
    pub nonconverged: Vec<usize>,
}

pub fn src_predict(
    train: &LabeledDataset,
    test: ArrayView2<'_, f64>,
    config: &L1SolveConfig,
) -> Result<SrcOutcome> {
    config.validate()?;
    let partition = Arc::new(build_class_partition(train)?);
    if test.nrows() != train.feature_dim() {
        return Err(Error::DimensionMismatch {
            context: "probe rows",
            expected: train.feature_dim(),
            actual: test.nrows(),
        });
    }
    let per_probe: Vec<Result<(usize, bool)>> = (0..test.ncols())
        .into_par_iter()
        .map(|j| {
            let probe = test.column(j);
            let solution = fista_solve(train.features(), probe, config)
                .map_err(|e| e.at_sample(j))?;
            let coeffs = Coefficients::new(solution.values, Arc::clone(&partition))
                .map_err(|e| e.at_sample(j))?;
            let residuals = compute_residuals(train, &coeffs, probe, ResidualKind::Plain)
                .map_err(|e| e.at_sample(j))?;
            let label = classify(&residuals).map_err(|e| e.at_sample(j))?;
            Ok((label, solution.converged))
        })
        .collect();

    let mut labels = Vec::with_capacity(test.ncols());
    let mut nonconverged = Vec::new();
    for (j, outcome) in per_probe.into_iter().enumerate() {
        let (label, converged) = outcome?;
        labels.push(label);
        if !converged {
            nonconverged.push(j);
        }
    }
    Ok(SrcOutcome {
        labels,
        nonconverged,
    })
}

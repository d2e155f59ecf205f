//! Experiment driver: load, split, preprocess, predict, score.

use std::time::Instant;

use srfds::{
    cr_predict, load_dataset, preprocess, split_first_n, src_predict, srfds_predict, Hyperparams,
    L1SolveConfig,
};

use crate::config::{ExperimentConfig, Method};
use crate::report::{Report, ReportRow};

/// Run the configured benchmark: one report row per training size. When
/// several regularizers are configured, each row keeps the most accurate
/// one (ties favor the earlier, smaller value) and the choice is noted.
pub fn run_experiment(config: &ExperimentConfig) -> srfds::Result<Report> {
    let loaded = load_dataset(&config.data)?;
    let mut report = Report::default();
    report.notes.push(format!(
        "loaded {}: {} samples, {} features, {} classes",
        config.data.path.display(),
        loaded.dataset.sample_count(),
        loaded.dataset.feature_dim(),
        loaded.dataset.class_count(),
    ));

    for &n in &config.train_per_class {
        let (train_raw, test_raw) = split_first_n(&loaded.dataset, n)?;
        let (train, zero_train) = preprocess(&train_raw, config.normalize);
        let (test, zero_test) = preprocess(&test_raw, config.normalize);
        let zero_columns = zero_train.len() + zero_test.len();

        let mut best: Option<(f64, ReportRow)> = None;
        for &lambda in &config.lambdas {
            let mut params = Hyperparams::new(lambda);
            params.repeats = config.repeats;
            params.seed = config.seed;
            params.normalize_columns = config.normalize;
            params.rounds = config.rounds;

            let mut flags = Vec::new();
            if zero_columns > 0 {
                flags.push(format!("zero-cols={zero_columns}"));
            }

            let start = Instant::now();
            let labels = match config.method {
                Method::Cr => cr_predict(&train, test.features(), &params)?,
                Method::Srfds => {
                    if n < 2 {
                        flags.push("degenerate-subsets".into());
                    }
                    srfds_predict(&train, test.features(), &params)?
                }
                Method::SrcL1 => {
                    let solver = L1SolveConfig::new(lambda);
                    let outcome = src_predict(&train, test.features(), &solver)?;
                    if !outcome.nonconverged.is_empty() {
                        flags.push(format!("nonconverged={}", outcome.nonconverged.len()));
                    }
                    outcome.labels
                }
            };
            let seconds = if config.include_timing {
                start.elapsed().as_secs_f64()
            } else {
                0.0
            };

            let correct = labels
                .iter()
                .zip(test.labels())
                .filter(|(a, b)| a == b)
                .count();
            let accuracy = 100.0 * correct as f64 / test.labels().len() as f64;
            let row = ReportRow {
                method: config.method.name(),
                n,
                accuracy,
                seconds,
                flags,
            };
            if best.as_ref().is_none_or(|(_, b)| accuracy > b.accuracy) {
                best = Some((lambda, row));
            }
        }

        let (lambda, row) = best.expect("config guarantees at least one lambda");
        if config.lambdas.len() > 1 {
            report.notes.push(format!(
                "n={n}: kept lambda={lambda:e} at {:.2}% accuracy",
                row.accuracy
            ));
        }
        report.rows.push(row);
    }
    Ok(report)
}

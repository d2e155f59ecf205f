//! Command-line surface and its translation into an experiment
//! configuration.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use srfds::{DatasetFormat, DatasetSpec, Error};

/// Regularizer values tried when the user asks for a sweep: one per decade.
pub const LAMBDA_SWEEP: [f64; 9] = [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Ridge coding over the full training set.
    Cr,
    /// Diverse-subset ensemble.
    Srfds,
    /// l1 sparse-coding baseline.
    SrcL1,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cr => "cr",
            Method::Srfds => "srfds",
            Method::SrcL1 => "src-l1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Idx,
    ImageDir,
}

fn parse_resize(s: &str) -> Result<(usize, usize), String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HEIGHTxWIDTH, got {s:?}"))?;
    let height = h.trim().parse().map_err(|_| format!("bad height {h:?}"))?;
    let width = w.trim().parse().map_err(|_| format!("bad width {w:?}"))?;
    if height == 0 || width == 0 {
        return Err("resize dimensions must be positive".into());
    }
    Ok((height, width))
}

#[derive(Debug, Parser)]
#[command(
    name = "srfds",
    about = "Benchmark reconstruction-error classifiers on labeled datasets",
    after_help = "Exit codes: 0 success, 1 bad configuration, 2 unreadable or malformed data, 3 numeric failure."
)]
pub struct Cli {
    /// Dataset location: a CSV file, an image tensor, or a directory of
    /// per-class subdirectories with PGM images.
    #[arg(long)]
    pub data: PathBuf,

    /// On-disk format of --data.
    #[arg(long, value_enum)]
    pub format: FormatArg,

    /// CSV: 0-based label column (default: last column).
    #[arg(long)]
    pub label_col: Option<usize>,

    /// CSV: skip one header row.
    #[arg(long)]
    pub has_header: bool,

    /// IDX: companion label file.
    #[arg(long)]
    pub labels: Option<PathBuf>,

    /// Image directories: resize every image to HEIGHTxWIDTH.
    #[arg(long, value_parser = parse_resize)]
    pub resize: Option<(usize, usize)>,

    /// Classifier to benchmark.
    #[arg(long, value_enum, default_value_t = Method::Srfds)]
    pub method: Method,

    /// Regularizer: a positive number, or "sweep" to try one value per
    /// decade from 1e-6 to 1e2 and keep the most accurate.
    #[arg(long, default_value = "0.1")]
    pub lambda: String,

    /// Training columns taken per class; a comma-separated list produces
    /// one report row per value.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub train_per_class: Vec<usize>,

    /// Ensemble repetitions.
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,

    /// Seed for subset drawing.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Rescale every feature column to unit norm before training.
    #[arg(long)]
    pub normalize: bool,

    /// Independent two-way splits per repetition (the ensemble scores
    /// 2*rounds subsets).
    #[arg(long, default_value_t = 2)]
    pub rounds: usize,

    /// Report format written to stdout.
    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub out: OutputFormat,

    /// Print 0.0000 in the seconds column so output is byte-stable.
    #[arg(long)]
    pub no_timing: bool,

    /// Worker threads (default: one per core).
    #[arg(long)]
    pub parallel: Option<usize>,

    /// Also time subset-divided projectors against one full projector on
    /// the whole dataset (medians over five runs, printed to stderr).
    #[arg(long)]
    pub time_subsets: bool,
}

/// Everything the runner needs, decoupled from flag parsing.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub data: DatasetSpec,
    pub method: Method,
    pub lambdas: Vec<f64>,
    pub train_per_class: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
    pub normalize: bool,
    pub rounds: usize,
    pub include_timing: bool,
}

fn parse_lambdas(text: &str) -> srfds::Result<Vec<f64>> {
    if text == "sweep" {
        return Ok(LAMBDA_SWEEP.to_vec());
    }
    let value: f64 = text.parse().map_err(|_| {
        Error::InvalidHyperparam(format!("lambda must be a number or \"sweep\", got {text:?}"))
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidHyperparam(format!(
            "lambda must be positive and finite, got {value}"
        )));
    }
    Ok(vec![value])
}

impl Cli {
    pub fn experiment_config(&self) -> srfds::Result<ExperimentConfig> {
        let format = match self.format {
            FormatArg::Csv => DatasetFormat::Csv,
            FormatArg::Idx => DatasetFormat::Idx,
            FormatArg::ImageDir => DatasetFormat::ImageDir,
        };
        if format == DatasetFormat::Idx && self.labels.is_none() {
            return Err(Error::InvalidHyperparam(
                "--format idx requires --labels".into(),
            ));
        }
        if self.train_per_class.is_empty() {
            return Err(Error::InvalidHyperparam(
                "--train-per-class needs at least one value".into(),
            ));
        }
        if self.train_per_class.contains(&0) {
            return Err(Error::InvalidHyperparam(
                "--train-per-class values must be positive".into(),
            ));
        }
        let data = DatasetSpec {
            path: self.data.clone(),
            format,
            label_column: self.label_col,
            has_header: self.has_header,
            labels_path: self.labels.clone(),
            expected_dims: self.resize,
        };
        Ok(ExperimentConfig {
            data,
            method: self.method,
            lambdas: parse_lambdas(&self.lambda)?,
            train_per_class: self.train_per_class.clone(),
            repeats: self.repeats,
            seed: self.seed,
            normalize: self.normalize,
            rounds: self.rounds,
            include_timing: !self.no_timing,
        })
    }
}

/// Map library errors onto the documented exit codes: 1 for configuration
/// problems, 2 for unreadable or malformed data, 3 for numeric failures.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidHyperparam(_) => 1,
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::Format { .. }
        | Error::EmptyClass { .. }
        | Error::SplitTooSmall { .. }
        | Error::LabelOutOfRange { .. }
        | Error::DimensionMismatch { .. }
        | Error::ClassIndexOutOfRange { .. } => 2,
        Error::NonFinite { .. } | Error::Factorization { .. } | Error::NoRepresentableClass => 3,
        Error::Sample { source, .. } => exit_code(source),
    }
}

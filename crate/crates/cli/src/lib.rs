//! Command-line benchmark harness; see [`config::Cli`] for the flag
//! surface. The report goes to stdout, every diagnostic to stderr, and exit
//! codes distinguish configuration (1), data (2), and numeric (3) failures.

use std::io::Write;

use clap::Parser;

pub mod config;
pub mod report;
pub mod runner;
pub mod timing;

pub use config::{exit_code, Cli, ExperimentConfig, Method, OutputFormat};
pub use report::{Report, ReportRow};
pub use runner::run_experiment;
pub use timing::{time_subset_division, SubsetTiming};

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as "errors" but must exit 0.
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> srfds::Result<()> {
    let config = cli.experiment_config()?;
    if let Some(threads) = cli.parallel {
        if threads == 0 {
            return Err(srfds::Error::InvalidHyperparam(
                "--parallel must be at least 1".into(),
            ));
        }
        // Ignore failure: the global pool can only be sized once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let report = run_experiment(&config)?;
    for note in &report.notes {
        eprintln!("{note}");
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    report
        .emit(cli.out, &mut lock)
        .and_then(|()| lock.flush())
        .map_err(|source| srfds::Error::Io {
            path: "<stdout>".into(),
            source,
        })?;

    if cli.time_subsets {
        let loaded = srfds::load_dataset(&config.data)?;
        let (data, _) = srfds::preprocess(&loaded.dataset, config.normalize);
        let timing = time_subset_division(&data, config.lambdas[0], config.rounds, config.seed, 5)?;
        eprintln!(
            "subset-division projectors: median {:.4} s over 5 runs",
            timing.divided.as_secs_f64()
        );
        eprintln!(
            "single full projector:      median {:.4} s over 5 runs",
            timing.undivided.as_secs_f64()
        );
    }
    Ok(())
}

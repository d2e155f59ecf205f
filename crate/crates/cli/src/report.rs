//! Benchmark report: one row per (method, training-size) pair, emitted as
//! an aligned table or as CSV with fixed columns
//! `method,n,accuracy,seconds,flags`.

use std::io::{self, Write};

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: &'static str,
    pub n: usize,
    /// Percent correct on the test split.
    pub accuracy: f64,
    /// Wall time of the prediction call; 0 when timing is suppressed.
    pub seconds: f64,
    /// Anomalies worth surfacing (zero-norm columns, non-converged solves,
    /// degenerate subset plans); "-" in the output when empty.
    pub flags: Vec<String>,
}

impl ReportRow {
    fn flags_cell(&self) -> String {
        if self.flags.is_empty() {
            "-".to_string()
        } else {
            self.flags.join(";")
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    /// Diagnostics for stderr; never part of the stdout report.
    pub notes: Vec<String>,
}

impl Report {
    pub fn emit(&self, format: OutputFormat, writer: &mut impl Write) -> io::Result<()> {
        match format {
            OutputFormat::Csv => self.emit_csv(writer),
            OutputFormat::Pretty => self.emit_pretty(writer),
        }
    }

    pub fn emit_csv(&self, writer: &mut impl Write) -> io::Result<()> {
        writeln!(writer, "method,n,accuracy,seconds,flags")?;
        for row in &self.rows {
            writeln!(
                writer,
                "{},{},{:.2},{:.4},{}",
                row.method,
                row.n,
                row.accuracy,
                row.seconds,
                row.flags_cell()
            )?;
        }
        Ok(())
    }

    pub fn emit_pretty(&self, writer: &mut impl Write) -> io::Result<()> {
        writeln!(
            writer,
            "{:<8} {:>5} {:>9} {:>9}  flags",
            "method", "n", "accuracy", "seconds"
        )?;
        for row in &self.rows {
            writeln!(
                writer,
                "{:<8} {:>5} {:>9.2} {:>9.4}  {}",
                row.method,
                row.n,
                row.accuracy,
                row.seconds,
                row.flags_cell()
            )?;
        }
        Ok(())
    }
}

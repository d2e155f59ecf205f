//! Labeled CSV: one sample per row, numeric features, one label column
//! holding arbitrary strings. Labels are numbered by first appearance.

use std::fs::File;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::model::LabeledDataset;

use super::{DatasetSpec, LoadedDataset};

pub(super) fn load_csv(spec: &DatasetSpec) -> Result<LoadedDataset> {
    let file = File::open(&spec.path).map_err(|source| Error::Io {
        path: spec.path.clone(),
        source,
    })?;
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(spec.has_header)
        .trim(::csv::Trim::All)
        .flexible(false)
        .from_reader(file);

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut label_names: Vec<String> = Vec::new();

    for (i, record) in reader.records().enumerate() {
        // Row and column numbers in errors are 1-based file coordinates.
        let fallback_line = i + 1 + usize::from(spec.has_header);
        let record = record.map_err(|e| Error::Parse {
            path: spec.path.clone(),
            row: e
                .position()
                .map_or(fallback_line, |p| p.line() as usize),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record
            .position()
            .map_or(fallback_line, |p| p.line() as usize);
        let label_column = spec.label_column.unwrap_or(record.len().saturating_sub(1));
        if label_column >= record.len() {
            return Err(Error::Parse {
                path: spec.path.clone(),
                row: line,
                column: label_column + 1,
                message: format!(
                    "label column {label_column} out of range for {} fields",
                    record.len()
                ),
            });
        }

        let mut features = Vec::with_capacity(record.len() - 1);
        for (j, field) in record.iter().enumerate() {
            if j == label_column {
                let name = field.to_string();
                let label = match label_names.iter().position(|n| n == &name) {
                    Some(k) => k + 1,
                    None => {
                        label_names.push(name);
                        label_names.len()
                    }
                };
                labels.push(label);
                continue;
            }
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                path: spec.path.clone(),
                row: line,
                column: j + 1,
                message: format!("expected a number, got {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    path: spec.path.clone(),
                    row: line,
                    column: j + 1,
                    message: format!("non-finite value {field:?}"),
                });
            }
            features.push(value);
        }
        rows.push(features);
    }

    if rows.is_empty() {
        return Err(Error::Parse {
            path: spec.path.clone(),
            row: 1 + usize::from(spec.has_header),
            column: 1,
            message: "no data rows".into(),
        });
    }

    let d = rows[0].len();
    let m = rows.len();
    let mut features = Array2::zeros((d, m));
    for (j, row) in rows.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            features[(i, j)] = v;
        }
    }
    let dataset = LabeledDataset::new(features, labels, label_names.len())?;
    Ok(LoadedDataset {
        dataset,
        label_names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file.flush().unwrap();
        file
    }

    #[test]
    fn labels_follow_first_appearance_in_last_column() {
        let file = write_temp("1.0,2.0,A\n3.0,4.0,B\n5.0,6.0,A\n");
        let spec = DatasetSpec::csv(file.path());
        let loaded = load_csv(&spec).unwrap();
        assert_eq!(loaded.label_names, vec!["A", "B"]);
        assert_eq!(loaded.dataset.labels(), &[1, 2, 1]);
        assert_eq!(loaded.dataset.feature_dim(), 2);
        assert_eq!(loaded.dataset.features()[(1, 2)], 6.0);
    }

    #[test]
    fn label_column_can_come_first() {
        let file = write_temp("yes,1.5\nno,2.5\n");
        let mut spec = DatasetSpec::csv(file.path());
        spec.label_column = Some(0);
        let loaded = load_csv(&spec).unwrap();
        assert_eq!(loaded.label_names, vec!["yes", "no"]);
        assert_eq!(loaded.dataset.features()[(0, 1)], 2.5);
    }

    #[test]
    fn header_row_is_skipped_when_requested() {
        let file = write_temp("f1,f2,class\n1.0,2.0,A\n");
        let mut spec = DatasetSpec::csv(file.path());
        spec.has_header = true;
        let loaded = load_csv(&spec).unwrap();
        assert_eq!(loaded.dataset.sample_count(), 1);
        assert_eq!(loaded.label_names, vec!["A"]);
    }

    #[test]
    fn bad_number_reports_file_coordinates() {
        let file = write_temp("1.0,2.0,A\n3.0,oops,B\n");
        let spec = DatasetSpec::csv(file.path());
        match load_csv(&spec) {
            Err(Error::Parse { row: 2, column: 2, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let file = write_temp("1.0,inf,A\n");
        let spec = DatasetSpec::csv(file.path());
        match load_csv(&spec) {
            Err(Error::Parse { row: 1, column: 2, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let file = write_temp("1.0,2.0,A\n3.0,B\n");
        let spec = DatasetSpec::csv(file.path());
        match load_csv(&spec) {
            Err(Error::Parse { row: 2, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_an_error() {
        let file = write_temp("");
        let spec = DatasetSpec::csv(file.path());
        assert!(matches!(load_csv(&spec), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let spec = DatasetSpec::csv("/nonexistent/definitely-not-here.csv");
        assert!(matches!(load_csv(&spec), Err(Error::Io { .. })));
    }
}

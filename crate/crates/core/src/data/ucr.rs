use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::series::{sorted_class_names, Dataset, TimeSeries};

/// `<root>/<name>/<name>_TRAIN.tsv` and `<root>/<name>/<name>_TEST.tsv`.
pub fn ucr_paths(root: impl AsRef<Path>, name: &str) -> (PathBuf, PathBuf) {
    let dir = root.as_ref().join(name);
    (dir.join(format!("{name}_TRAIN.tsv")), dir.join(format!("{name}_TEST.tsv")))
}

/// Reads `label<sep>v1<sep>v2...` lines, `<sep>` being a tab or a comma.
///
/// Blank lines are skipped. Rows must all have the same number of values and
/// every value must be a finite number; missing values (`NaN`) are rejected.
pub fn parse_rows(path: &Path, text: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let err = |line: usize, message: String| Error::Parse { path: path.to_path_buf(), line, message };
    let mut rows: Vec<(String, Vec<f64>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split(['\t', ',']).map(str::trim);
        let label = cells.next().unwrap_or_default().to_owned();
        if label.is_empty() {
            return Err(err(line_no, "missing class label".into()));
        }
        let mut values = Vec::new();
        let cells: Vec<&str> = cells.collect();
        let trailing_empty = cells.last().is_some_and(|c| c.is_empty());
        let cells = if trailing_empty { &cells[..cells.len() - 1] } else { &cells[..] };
        for (col, cell) in cells.iter().enumerate() {
            let value: f64 = cell
                .parse()
                .map_err(|_| err(line_no, format!("column {}: {cell:?} is not a number", col + 1)))?;
            if !value.is_finite() {
                return Err(err(
                    line_no,
                    format!("column {}: missing or non-finite value {cell:?} (not supported)", col + 1),
                ));
            }
            values.push(value);
        }
        if let Some((_, first)) = rows.first() {
            if first.len() != values.len() {
                return Err(err(
                    line_no,
                    format!("ragged row: {} values, expected {} (variable-length series are not supported)", values.len(), first.len()),
                ));
            }
        }
        rows.push((label, values));
    }
    if rows.is_empty() {
        return Err(err(0, "file contains no series".into()));
    }
    Ok(rows)
}

fn dataset_name(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("dataset");
    stem.strip_suffix("_TRAIN").or_else(|| stem.strip_suffix("_TEST")).unwrap_or(stem).to_owned()
}

/// Loads one UCR file, numbering classes by sorted label.
pub fn load_tsv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let rows = parse_rows(path, &fs::read_to_string(path)?)?;
    Dataset::from_labelled(dataset_name(path), rows)
}

/// Loads a train/test pair sharing the training set's class numbering.
pub fn load_ucr_pair(root: impl AsRef<Path>, name: &str) -> Result<(Dataset, Dataset)> {
    let (train_path, test_path) = ucr_paths(root, name);
    let train_rows = parse_rows(&train_path, &fs::read_to_string(&train_path)?)?;
    let test_rows = parse_rows(&test_path, &fs::read_to_string(&test_path)?)?;
    let classes = sorted_class_names(train_rows.iter().map(|(l, _)| l.as_str()));
    let build = |rows: Vec<(String, Vec<f64>)>| -> Result<(Vec<TimeSeries>, Vec<usize>)> {
        let mut series = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (label, values) in rows {
            let class = classes.iter().position(|c| *c == label).ok_or(Error::UnknownClass(label))?;
            labels.push(class);
            series.push(TimeSeries::new(values)?);
        }
        Ok((series, labels))
    };
    let (train_series, train_labels) = build(train_rows)?;
    let (test_series, test_labels) = build(test_rows)?;
    let train = Dataset::new(name, train_series, train_labels, classes.clone())?;
    let test = Dataset::evaluation(name, test_series, test_labels, classes)?;
    if train.series_length() != test.series_length() {
        return Err(Error::LengthMismatch { expected: train.series_length(), actual: test.series_length() });
    }
    Ok((train, test))
}

/// Writes `dataset` in the tab-separated UCR layout. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_tsv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    for (series, &label) in dataset.series().iter().zip(dataset.labels()) {
        write!(out, "{}", dataset.class_names()[label])?;
        for v in series.values() {
            write!(out, "\t{v}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

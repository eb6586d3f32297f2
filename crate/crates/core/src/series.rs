//! Labelled, equal-length univariate series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KERNEL_LENGTH;

/// Shortest series accepted: one unpadded output exists at dilation 1.
pub const MIN_SERIES_LENGTH: usize = KERNEL_LENGTH + 1;

/// A finite univariate series of length at least [`MIN_SERIES_LENGTH`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_SERIES_LENGTH {
            return Err(Error::SeriesTooShort { length: values.len(), minimum: MIN_SERIES_LENGTH });
        }
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<TimeSeries> for Vec<f64> {
    fn from(series: TimeSeries) -> Self {
        series.0
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

/// Equal-length series with dense class ids `0..C`.
///
/// `class_names[c]` keeps the original label string of class `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    series: Vec<TimeSeries>,
    labels: Vec<usize>,
    class_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset in which every class `0..class_names.len()` occurs.
    pub fn new(
        name: impl Into<String>,
        series: Vec<TimeSeries>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        let dataset = Self::evaluation(name, series, labels, class_names)?;
        let mut seen = vec![false; dataset.num_classes()];
        for &label in &dataset.labels {
            seen[label] = true;
        }
        if let Some(class) = seen.iter().position(|s| !s) {
            return Err(Error::MissingClass { class, name: dataset.class_names[class].clone() });
        }
        Ok(dataset)
    }

    /// Like [`Dataset::new`] but allows classes without examples. Used for
    /// held-out sets whose class list is inherited from a training set.
    pub fn evaluation(
        name: impl Into<String>,
        series: Vec<TimeSeries>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if series.len() != labels.len() {
            return Err(Error::LabelCountMismatch { series: series.len(), labels: labels.len() });
        }
        let expected = series[0].len();
        if let Some((index, s)) = series.iter().enumerate().find(|(_, s)| s.len() != expected) {
            return Err(Error::RaggedSeries { index, expected, actual: s.len() });
        }
        let num_classes = class_names.len();
        if let Some(&label) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(Error::LabelOutOfRange { label, num_classes });
        }
        Ok(Self { name: name.into(), series, labels, class_names })
    }

    /// Builds a dataset from raw values and label strings, assigning class ids
    /// in sorted label order (numeric when every label parses as a number).
    pub fn from_labelled(
        name: impl Into<String>,
        rows: Vec<(String, Vec<f64>)>,
    ) -> Result<Self> {
        let class_names = sorted_class_names(rows.iter().map(|(l, _)| l.as_str()));
        let mut series = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for (label, values) in rows {
            labels.push(class_names.iter().position(|c| *c == label).expect("label collected"));
            series.push(TimeSeries::new(values)?);
        }
        Self::new(name, series, labels, class_names)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn series_length(&self) -> usize {
        self.series[0].len()
    }

    /// Per-class example counts, indexed by class id.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes()];
        for &label in &self.labels {
            counts[label] += 1;
        }
        counts
    }

    /// Rows selected by `indices`, keeping this dataset's class list.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        Self::evaluation(
            self.name.clone(),
            indices.iter().map(|&i| self.series[i].clone()).collect(),
            indices.iter().map(|&i| self.labels[i]).collect(),
            self.class_names.clone(),
        )
    }
}

/// Sorts label strings numerically when all parse as `f64`, lexically otherwise.
pub(crate) fn sorted_class_names<'a>(labels: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut names: Vec<String> = labels.map(str::to_owned).collect();
    names.sort();
    names.dedup();
    let numeric: Option<Vec<f64>> = names.iter().map(|n| n.trim().parse::<f64>().ok()).collect();
    if let Some(keys) = numeric {
        let mut paired: Vec<(f64, String)> = keys.into_iter().zip(names).collect();
        paired.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        names = paired.into_iter().map(|(_, n)| n).collect();
    }
    names
}

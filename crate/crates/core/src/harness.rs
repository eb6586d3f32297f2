//! End-to-end runs over UCR datasets with per-stage wall-clock timing.
//!
//! Results go to a CSV file with the header
//!
//! ```text
//! dataset,resample,num_features,representations,pooling,seed,threads,t_fit,t_apply_train,t_apply_test,t_clf,t_pred,acc_train,acc_test
//! ```
//!
//! `representations` and `pooling` list the selections joined by `+`
//! (for example `base+first_diff` and `ppv+mpv+mipv+lspv`). Times are seconds.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::data::{load_ucr_pair, stratified_resample};
use crate::error::{Error, Result};
use crate::model::SavedModel;
use crate::ridge::{accuracy, default_alphas, ridge_fit, RidgeModel};
use crate::series::Dataset;
use crate::transform::pooling::PoolingOp;
use crate::transform::{fit, with_threads, FittedTransform, Representation, TransformConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    pub resample: u32,
    pub num_features: usize,
    pub representations: String,
    pub pooling: String,
    pub seed: u64,
    pub threads: usize,
    pub t_fit: f64,
    pub t_apply_train: f64,
    pub t_apply_test: f64,
    pub t_clf: f64,
    pub t_pred: f64,
    pub acc_train: f64,
    pub acc_test: f64,
}

impl RunRecord {
    fn key(&self) -> RunKey {
        (
            self.dataset.clone(),
            self.resample,
            self.num_features,
            self.representations.clone(),
            self.pooling.clone(),
            self.seed,
        )
    }
}

type RunKey = (String, u32, usize, String, String, u64);

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub transform: TransformConfig,
    pub threads: usize,
    pub resample: u32,
    pub alphas: Vec<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { transform: TransformConfig::default(), threads: 0, resample: 0, alphas: default_alphas() }
    }
}

pub fn join_representations(reps: &[Representation]) -> String {
    reps.iter().map(|r| r.name()).collect::<Vec<_>>().join("+")
}

pub fn join_pooling(ops: &[PoolingOp]) -> String {
    ops.iter().map(|o| o.name()).collect::<Vec<_>>().join("+")
}

/// Parses a `,` or `+` separated list.
pub fn parse_list<T: std::str::FromStr<Err = Error>>(text: &str) -> Result<Vec<T>> {
    text.split([',', '+']).filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

/// Everything produced by one train/test run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub transform: FittedTransform,
    pub classifier: RidgeModel,
    pub test_predictions: Vec<usize>,
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed()))
}

/// Fit, transform and classify one split.
pub fn run_split(train: &Dataset, test: &Dataset, options: &RunOptions) -> Result<RunOutcome> {
    let config = options.transform.clone().validated()?;
    with_threads(options.threads, || {
        let (transform, t_fit) = timed(|| fit(train, &config))?;
        let (x_train, t_apply_train) = timed(|| transform.apply(train, options.threads))?;
        let (x_test, t_apply_test) = timed(|| transform.apply(test, options.threads))?;
        let (classifier, t_clf) =
            timed(|| ridge_fit(&x_train, train.labels(), train.class_names(), &options.alphas))?;
        let (test_predictions, t_pred) = timed(|| classifier.predict(&x_test))?;
        let train_predictions = classifier.predict(&x_train)?;
        let record = RunRecord {
            dataset: train.name().to_owned(),
            resample: options.resample,
            num_features: transform.num_features(),
            representations: join_representations(&config.representations),
            pooling: join_pooling(&config.pooling_ops),
            seed: config.seed,
            threads: options.threads,
            t_fit: t_fit.as_secs_f64(),
            t_apply_train: t_apply_train.as_secs_f64(),
            t_apply_test: t_apply_test.as_secs_f64(),
            t_clf: t_clf.as_secs_f64(),
            t_pred: t_pred.as_secs_f64(),
            acc_train: accuracy(&train_predictions, train.labels()),
            acc_test: accuracy(&test_predictions, test.labels()),
        };
        Ok(RunOutcome { record, transform, classifier, test_predictions })
    })
}

/// Splits a dataset directory `<root>/<Name>` into `(root, Name)`.
pub fn split_dataset_dir(dir: &Path) -> Result<(PathBuf, String)> {
    let name = dir
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Config(format!("{} is not a dataset directory", dir.display())))?;
    let root = dir.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((root, name.to_owned()))
}

/// Loads `<root>/<name>` and applies the requested resample.
pub fn load_resampled(root: &Path, name: &str, resample: u32) -> Result<(Dataset, Dataset)> {
    let (train, test) = load_ucr_pair(root, name)?;
    stratified_resample(&train, &test, resample)?.apply(&train, &test)
}

/// Runs the full pipeline on one dataset directory and appends the record
/// to `out` when given.
pub fn cmd_run(dataset_dir: &Path, options: &RunOptions, out: Option<&Path>) -> Result<RunOutcome> {
    let (root, name) = split_dataset_dir(dataset_dir)?;
    let (train, test) = load_resampled(&root, &name, options.resample)?;
    let outcome = run_split(&train, &test, options)?;
    if let Some(path) = out {
        append_record(path, &outcome.record)?;
    }
    Ok(outcome)
}

/// Fits transform and classifier on the training split and saves both.
pub fn cmd_fit(dataset_dir: &Path, options: &RunOptions, save: &Path) -> Result<SavedModel> {
    let (root, name) = split_dataset_dir(dataset_dir)?;
    let (train, _) = load_resampled(&root, &name, options.resample)?;
    let config = options.transform.clone().validated()?;
    let model = with_threads(options.threads, || -> Result<SavedModel> {
        let transform = fit(&train, &config)?;
        let features = transform.apply(&train, options.threads)?;
        let classifier = ridge_fit(&features, train.labels(), train.class_names(), &options.alphas)?;
        Ok(SavedModel::new(transform, Some(classifier)))
    })?;
    model.save(save)?;
    Ok(model)
}

/// Predicts `data` with a saved model, returning predicted label names.
pub fn predict_with(model: &SavedModel, data: &Dataset, threads: usize) -> Result<Vec<String>> {
    let classifier = model
        .classifier
        .as_ref()
        .ok_or_else(|| Error::ModelFormat("model has no classifier".into()))?;
    let features = model.transform.apply(data, threads)?;
    let predicted = with_threads(threads, || classifier.predict(&features))?;
    Ok(predicted.into_iter().map(|c| classifier.class_labels[c].clone()).collect())
}

fn csv_line(record: &RunRecord, header: bool) -> Result<Vec<u8>> {
    let mut writer = csv::WriterBuilder::new().has_headers(header).from_writer(Vec::new());
    writer.serialize(record)?;
    writer.flush()?;
    writer.into_inner().map_err(|e| Error::Io(e.into_error()))
}

/// Appends `record`, writing the header first when the file is new or empty.
/// The row is written with a single call so a failure leaves no partial row.
pub fn append_record(path: &Path, record: &RunRecord) -> Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let bytes = csv_line(record, fresh)?;
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(&bytes)?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader.deserialize().map(|r| r.map_err(Error::from)).collect()
}

#[derive(Debug, Clone, Default)]
pub struct BenchmarkSummary {
    pub completed: Vec<RunRecord>,
    pub skipped: usize,
    pub failures: Vec<(String, u32, String)>,
    pub wall_time: Duration,
}

impl BenchmarkSummary {
    pub fn mean_test_accuracy(&self) -> Option<f64> {
        if self.completed.is_empty() {
            None
        } else {
            Some(self.completed.iter().map(|r| r.acc_test).sum::<f64>() / self.completed.len() as f64)
        }
    }

    pub fn succeeded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every dataset in `datasets` for every id in `resamples`, appending
/// to `out`. Runs already recorded in `out` with the same configuration are
/// skipped. Failing runs are collected and do not stop the loop.
pub fn cmd_benchmark(
    root: &Path,
    datasets: &[String],
    resamples: &[u32],
    options: &RunOptions,
    out: &Path,
    mut on_record: impl FnMut(&RunRecord),
) -> Result<BenchmarkSummary> {
    let start = Instant::now();
    let config = options.transform.clone().validated()?;
    let done: HashSet<RunKey> = if out.exists() && fs::metadata(out)?.len() > 0 {
        read_records(out)?.iter().map(RunRecord::key).collect()
    } else {
        HashSet::new()
    };
    let num_features = config.num_features()?;
    let reps = join_representations(&config.representations);
    let pooling = join_pooling(&config.pooling_ops);
    let mut summary = BenchmarkSummary::default();
    for name in datasets {
        for &resample in resamples {
            let key = (name.clone(), resample, num_features, reps.clone(), pooling.clone(), config.seed);
            if done.contains(&key) {
                summary.skipped += 1;
                continue;
            }
            let opts = RunOptions { resample, transform: config.clone(), ..options.clone() };
            let result = load_resampled(root, name, resample)
                .and_then(|(train, test)| run_split(&train, &test, &opts))
                .and_then(|outcome| {
                    append_record(out, &outcome.record)?;
                    Ok(outcome.record)
                });
            match result {
                Ok(record) => {
                    on_record(&record);
                    summary.completed.push(record);
                }
                Err(e) => summary.failures.push((name.clone(), resample, e.to_string())),
            }
        }
    }
    summary.wall_time = start.elapsed();
    Ok(summary)
}

//! Fitting and applying the convolutional feature transform.
//!
//! # Column order
//!
//! Feature columns are laid out as nested blocks, outermost first:
//!
//! 1. representation, in the order `base`, `first_diff` (selected ones only)
//! 2. pooling operator, in the order PPV, MPV, MIPV, LSPV (selected ones only)
//! 3. kernel, in [`enumerate_kernels`](crate::kernel::enumerate_kernels) order
//! 4. dilation, increasing
//! 5. bias slot within the dilation
//!
//! Levels 4 and 5 together form the *combination index* of a kernel, which
//! runs over `0..combos_per_kernel`. Use [`FittedTransform::column_info`] to
//! decode a column.

pub mod bias;
pub mod convolve;
pub mod dilation;
pub mod pooling;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::kernel::{kernel_bank, NUM_KERNELS};
use crate::series::Dataset;

use self::bias::{sample_biases, ExampleSelector};
use self::convolve::{padding_for, DilatedWindows};
use self::dilation::compute_dilations;
use self::pooling::{compute_features_shifted, PoolingOp};

pub use self::convolve::convolve;
pub use self::pooling::{compute_features, pool_lspv, pool_mipv, pool_mpv, pool_ppv, PooledFeatures};

pub const DEFAULT_NUM_FEATURES: usize = 50_000;

/// A view of the input series that gets its own convolution parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Base,
    FirstDiff,
}

impl Representation {
    pub const ALL: [Representation; 2] = [Representation::Base, Representation::FirstDiff];

    pub fn name(self) -> &'static str {
        match self {
            Representation::Base => "base",
            Representation::FirstDiff => "first_diff",
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }

    /// The series this representation convolves.
    pub fn derive(self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Representation::Base => Ok(x.to_vec()),
            Representation::FirstDiff => first_order_difference(x),
        }
    }

    pub fn derived_length(self, input_length: usize) -> usize {
        match self {
            Representation::Base => input_length,
            Representation::FirstDiff => input_length.saturating_sub(1),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "base" => Ok(Representation::Base),
            "first_diff" | "diff" => Ok(Representation::FirstDiff),
            other => Err(Error::Config(format!("unknown representation {other:?}"))),
        }
    }
}

/// `out[t] = x[t + 1] - x[t]`.
pub fn first_order_difference(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 2 {
        return Err(Error::SeriesTooShort { length: x.len(), minimum: 2 });
    }
    Ok(x.windows(2).map(|w| w[1] - w[0]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformConfig {
    pub target_num_features: usize,
    pub representations: Vec<Representation>,
    pub pooling_ops: Vec<PoolingOp>,
    pub seed: u64,
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self {
            target_num_features: DEFAULT_NUM_FEATURES,
            representations: Representation::ALL.to_vec(),
            pooling_ops: PoolingOp::ALL.to_vec(),
            seed: 0,
        }
    }
}

impl TransformConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_num_features(mut self, target: usize) -> Self {
        self.target_num_features = target;
        self
    }

    pub fn with_representations(mut self, reps: &[Representation]) -> Self {
        self.representations = reps.to_vec();
        self
    }

    pub fn with_pooling(mut self, ops: &[PoolingOp]) -> Self {
        self.pooling_ops = ops.to_vec();
        self
    }

    /// Sorts and deduplicates the selections, then checks the feature budget.
    pub fn validated(mut self) -> Result<Self> {
        self.representations.sort();
        self.representations.dedup();
        self.pooling_ops.sort();
        self.pooling_ops.dedup();
        if self.representations.is_empty() {
            return Err(Error::Config("no representation selected".into()));
        }
        if self.pooling_ops.is_empty() {
            return Err(Error::Config("no pooling operator selected".into()));
        }
        self.combos_per_kernel()?;
        Ok(self)
    }

    /// `floor(target / (84 * |representations| * |pooling_ops|))`.
    pub fn combos_per_kernel(&self) -> Result<usize> {
        let per_combo = NUM_KERNELS * self.representations.len() * self.pooling_ops.len();
        let combos = self.target_num_features.checked_div(per_combo).unwrap_or(0);
        if combos == 0 {
            return Err(Error::Config(format!(
                "{} features cannot cover {per_combo} features per combination",
                self.target_num_features
            )));
        }
        Ok(combos)
    }

    /// Number of columns produced, at most the target.
    pub fn num_features(&self) -> Result<usize> {
        Ok(self.combos_per_kernel()?
            * NUM_KERNELS
            * self.representations.len()
            * self.pooling_ops.len())
    }
}

/// Fitted dilations, biases and paddings for one representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationParams {
    pub representation: Representation,
    /// Length of the series this representation convolves.
    pub series_length: usize,
    pub dilations: Vec<usize>,
    pub combos_per_dilation: Vec<usize>,
    /// Indexed by `kernel * combos_per_kernel + combination`.
    pub biases: Vec<f64>,
    /// Same indexing as `biases`.
    pub paddings: Vec<bool>,
}

impl RepresentationParams {
    pub fn combos_per_kernel(&self) -> usize {
        self.combos_per_dilation.iter().sum()
    }

    pub fn num_combinations(&self) -> usize {
        self.combos_per_kernel() * NUM_KERNELS
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ModelFormat(format!("{}: {m}", self.representation)));
        if self.dilations.len() != self.combos_per_dilation.len() || self.dilations.is_empty() {
            return bad("dilation list inconsistent");
        }
        if !self.dilations.windows(2).all(|w| w[0] < w[1]) || self.dilations[0] == 0 {
            return bad("dilations must be positive and increasing");
        }
        if self.dilations.iter().any(|&d| convolve::valid_length(self.series_length, d).is_none()) {
            return bad("dilation too large for series length");
        }
        let n = self.num_combinations();
        if self.biases.len() != n || self.paddings.len() != n {
            return bad("bias or padding count mismatch");
        }
        if self.biases.iter().any(|b| !b.is_finite()) {
            return bad("non-finite bias");
        }
        Ok(())
    }
}

/// Padding flag of combination `combo`: even indices are padded.
pub fn padding_for_combination(combo: usize) -> bool {
    combo.is_multiple_of(2)
}

/// Location of one feature column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnInfo {
    pub representation: Representation,
    pub pooling: PoolingOp,
    pub kernel: usize,
    pub dilation: usize,
    pub bias_slot: usize,
    pub combination: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedTransform {
    pub config: TransformConfig,
    pub input_length: usize,
    pub params: Vec<RepresentationParams>,
}

/// Fits dilations, paddings and biases for each selected representation.
pub fn fit(train: &Dataset, config: &TransformConfig) -> Result<FittedTransform> {
    let config = config.clone().validated()?;
    let combos_per_kernel = config.combos_per_kernel()?;
    let input_length = train.series_length();
    let bank = kernel_bank();
    let mut params = Vec::with_capacity(config.representations.len());
    for &rep in &config.representations {
        let derived: Vec<Vec<f64>> =
            train.series().iter().map(|s| rep.derive(s.values())).collect::<Result<_>>()?;
        let series_length = rep.derived_length(input_length);
        let (dilations, combos_per_dilation) = compute_dilations(series_length, combos_per_kernel);
        let selector = ExampleSelector::new(config.seed, rep.stream());
        let biases = sample_biases(&derived, bank, &dilations, &combos_per_dilation, &selector);
        let paddings = (0..NUM_KERNELS)
            .flat_map(|_| (0..combos_per_kernel).map(padding_for_combination))
            .collect();
        params.push(RepresentationParams {
            representation: rep,
            series_length,
            dilations,
            combos_per_dilation,
            biases,
            paddings,
        });
    }
    Ok(FittedTransform { config, input_length, params })
}

/// Runs `f` on a pool of `threads` workers; `0` uses the global pool.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

impl FittedTransform {
    pub fn params(&self, rep: Representation) -> Option<&RepresentationParams> {
        self.params.iter().find(|p| p.representation == rep)
    }

    pub fn num_features(&self) -> usize {
        self.params.iter().map(RepresentationParams::num_combinations).sum::<usize>()
            * self.config.pooling_ops.len()
    }

    /// Checks internal consistency, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        let config = self.config.clone().validated()?;
        if config != self.config {
            return Err(Error::ModelFormat("config selections not in canonical order".into()));
        }
        let reps: Vec<Representation> = self.params.iter().map(|p| p.representation).collect();
        if reps != self.config.representations {
            return Err(Error::ModelFormat("fitted representations differ from config".into()));
        }
        let combos = self.config.combos_per_kernel()?;
        for p in &self.params {
            p.validate()?;
            if p.combos_per_kernel() != combos
                || p.series_length != p.representation.derived_length(self.input_length)
            {
                return Err(Error::ModelFormat(format!("{} parameters inconsistent", p.representation)));
            }
        }
        Ok(())
    }

    pub fn column_info(&self, col: usize) -> ColumnInfo {
        let ops = &self.config.pooling_ops;
        let mut rest = col;
        for p in &self.params {
            let cpk = p.combos_per_kernel();
            let block = cpk * NUM_KERNELS;
            if rest < block * ops.len() {
                let pooling = ops[rest / block];
                rest %= block;
                let kernel = rest / cpk;
                let combination = rest % cpk;
                let mut start = 0;
                for (di, &count) in p.combos_per_dilation.iter().enumerate() {
                    if combination < start + count {
                        return ColumnInfo {
                            representation: p.representation,
                            pooling,
                            kernel,
                            dilation: p.dilations[di],
                            bias_slot: combination - start,
                            combination,
                        };
                    }
                    start += count;
                }
            }
            rest -= block * ops.len();
        }
        panic!("column {col} out of range");
    }

    /// Features of a single series, written into `out`.
    pub fn transform_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if x.len() != self.input_length {
            return Err(Error::LengthMismatch { expected: self.input_length, actual: x.len() });
        }
        assert_eq!(out.len(), self.num_features());
        let bank = kernel_bank();
        let ops = &self.config.pooling_ops;
        let mut col_base = 0;
        for p in &self.params {
            let series = p.representation.derive(x)?;
            let length = series.len();
            let cpk = p.combos_per_kernel();
            let op_stride = cpk * NUM_KERNELS;
            let mut windows = DilatedWindows::new(length);
            let mut z = vec![0.0; length];
            let mut combo_start = 0;
            for (&dilation, &slots) in p.dilations.iter().zip(&p.combos_per_dilation) {
                windows.load(&series, dilation);
                let pad = padding_for(dilation);
                for (k, kernel) in bank.iter().enumerate() {
                    windows.kernel_output(kernel, &mut z);
                    for combo in combo_start..combo_start + slots {
                        let idx = k * cpk + combo;
                        let view = if p.paddings[idx] { &z[..] } else { &z[pad..length - pad] };
                        let pooled = compute_features_shifted(view, p.biases[idx]);
                        for (oi, &op) in ops.iter().enumerate() {
                            out[col_base + oi * op_stride + idx] = pooled.get(op);
                        }
                    }
                }
                combo_start += slots;
            }
            col_base += op_stride * ops.len();
        }
        Ok(())
    }

    /// Features of every series in `data`, computed on `threads` workers
    /// (`0` for the global pool). The result does not depend on `threads`.
    pub fn apply(&self, data: &Dataset, threads: usize) -> Result<FeatureMatrix> {
        let series: Vec<&[f64]> = data.series().iter().map(|s| s.values()).collect();
        self.apply_series(&series, threads)
    }

    pub fn apply_series<S: AsRef<[f64]> + Sync>(&self, series: &[S], threads: usize) -> Result<FeatureMatrix> {
        let cols = self.num_features();
        if let Some(bad) = series.iter().find(|s| s.as_ref().len() != self.input_length) {
            return Err(Error::LengthMismatch { expected: self.input_length, actual: bad.as_ref().len() });
        }
        let mut matrix = FeatureMatrix::zeros(series.len(), cols);
        if cols == 0 {
            return Ok(matrix);
        }
        with_threads(threads, || {
            matrix
                .as_mut_slice()
                .par_chunks_mut(cols)
                .zip(series.par_iter())
                .try_for_each(|(row, s)| self.transform_into(s.as_ref(), row))
        })?;
        Ok(matrix)
    }
}

//! Pooling operators over a convolution output.
//!
//! All four operators test for strictly positive entries; zeros do not count.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolingOp {
    /// Proportion of positive values.
    Ppv,
    /// Mean of positive values.
    Mpv,
    /// Mean of (0-based) indices of positive values.
    Mipv,
    /// Longest stretch of consecutive positive values.
    Lspv,
}

impl PoolingOp {
    pub const ALL: [PoolingOp; 4] = [PoolingOp::Ppv, PoolingOp::Mpv, PoolingOp::Mipv, PoolingOp::Lspv];

    pub fn name(self) -> &'static str {
        match self {
            PoolingOp::Ppv => "ppv",
            PoolingOp::Mpv => "mpv",
            PoolingOp::Mipv => "mipv",
            PoolingOp::Lspv => "lspv",
        }
    }

    pub(crate) fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PoolingOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PoolingOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ppv" => Ok(PoolingOp::Ppv),
            "mpv" => Ok(PoolingOp::Mpv),
            "mipv" => Ok(PoolingOp::Mipv),
            "lspv" => Ok(PoolingOp::Lspv),
            other => Err(Error::Config(format!("unknown pooling operator {other:?}"))),
        }
    }
}

/// The four pooled values of one convolution output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PooledFeatures {
    pub ppv: f64,
    pub mpv: f64,
    pub mipv: f64,
    pub lspv: f64,
}

impl PooledFeatures {
    pub fn get(&self, op: PoolingOp) -> f64 {
        self.as_array()[op.slot()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.ppv, self.mpv, self.mipv, self.lspv]
    }
}

pub fn pool_ppv(z: &[f64]) -> f64 {
    let positive = z.iter().filter(|&&v| v > 0.0).count();
    positive as f64 / z.len() as f64
}

/// Returns 0 when no entry is positive.
pub fn pool_mpv(z: &[f64]) -> f64 {
    let (count, sum) = z
        .iter()
        .filter(|&&v| v > 0.0)
        .fold((0usize, 0.0), |(c, s), &v| (c + 1, s + v));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Returns -1 when no entry is positive.
pub fn pool_mipv(z: &[f64]) -> f64 {
    let indices: Vec<usize> =
        z.iter().enumerate().filter(|(_, &v)| v > 0.0).map(|(i, _)| i).collect();
    if indices.is_empty() {
        -1.0
    } else {
        indices.iter().sum::<usize>() as f64 / indices.len() as f64
    }
}

/// Element count of the longest run of consecutive positive entries.
pub fn pool_lspv(z: &[f64]) -> f64 {
    z.split(|&v| v <= 0.0 || v.is_nan()).map(<[f64]>::len).max().unwrap_or(0) as f64
}

/// All four operators in a single pass over `z`.
pub fn compute_features(z: &[f64]) -> PooledFeatures {
    compute_features_shifted(z, 0.0)
}

/// All four operators applied to `z - bias`, in a single pass.
#[inline]
pub fn compute_features_shifted(z: &[f64], bias: f64) -> PooledFeatures {
    let mut count = 0usize;
    let mut sum = 0.0;
    let mut index_sum = 0usize;
    let mut run = 0usize;
    let mut longest = 0usize;
    for (j, &v) in z.iter().enumerate() {
        let shifted = v - bias;
        if shifted > 0.0 {
            count += 1;
            sum += shifted;
            index_sum += j;
            run += 1;
        } else {
            longest = longest.max(run);
            run = 0;
        }
    }
    longest = longest.max(run);
    let (mpv, mipv) = if count == 0 {
        (0.0, -1.0)
    } else {
        (sum / count as f64, index_sum as f64 / count as f64)
    };
    PooledFeatures { ppv: count as f64 / z.len() as f64, mpv, mipv, lspv: longest as f64 }
}

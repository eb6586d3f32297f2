//! Reference implementations and fixtures shared by the integration tests.
//! Nothing here calls into the library's convolution or pooling code.

#![allow(dead_code)]

use std::path::PathBuf;

use multirocket::{Dataset, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ucr_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr")
}

/// Sliding dot product over an explicitly zero-padded copy of `x`.
pub fn naive_convolve(x: &[f64], weights: &[i8; 9], dilation: usize, padded: bool) -> Vec<f64> {
    let pad = if padded { 4 * dilation } else { 0 };
    let mut ext = vec![0.0; pad];
    ext.extend_from_slice(x);
    ext.extend(std::iter::repeat_n(0.0, pad));
    let span = 8 * dilation;
    let mut out = Vec::new();
    let mut start = 0;
    while start + span < ext.len() {
        let mut acc = 0.0;
        for (j, &w) in weights.iter().enumerate() {
            acc += w as f64 * ext[start + j * dilation];
        }
        out.push(acc);
        start += 1;
    }
    out
}

/// Sum of |w_j * x_j| over the window: the magnitude scale of one output.
pub fn naive_convolve_scale(x: &[f64], weights: &[i8; 9], dilation: usize, padded: bool) -> Vec<f64> {
    let abs_x: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let abs_w = weights.map(|w| w.abs());
    naive_convolve(&abs_x, &abs_w, dilation, padded)
}

pub fn naive_ppv(z: &[f64]) -> f64 {
    let mut c = 0.0;
    for &v in z {
        if v > 0.0 {
            c += 1.0;
        }
    }
    c / z.len() as f64
}

pub fn naive_mpv(z: &[f64]) -> f64 {
    let pos: Vec<f64> = z.iter().copied().filter(|&v| v > 0.0).collect();
    if pos.is_empty() {
        0.0
    } else {
        pos.iter().sum::<f64>() / pos.len() as f64
    }
}

pub fn naive_mipv(z: &[f64]) -> f64 {
    let idx: Vec<f64> = (0..z.len()).filter(|&i| z[i] > 0.0).map(|i| i as f64).collect();
    if idx.is_empty() {
        -1.0
    } else {
        idx.iter().sum::<f64>() / idx.len() as f64
    }
}

/// Longest maximal run of positive entries, by checking every (start, end).
pub fn naive_lspv(z: &[f64]) -> f64 {
    let mut best = 0;
    for i in 0..z.len() {
        for j in i..z.len() {
            if z[i..=j].iter().all(|&v| v > 0.0) {
                best = best.max(j - i + 1);
            }
        }
    }
    best as f64
}

/// Exact quantile with linear interpolation between order statistics.
pub fn naive_quantile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (v.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

pub fn random_vec(rng: &mut ChaCha8Rng, len: usize, scale: f64) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-scale..scale)).collect()
}

/// Two-class sine/square toy problem with some noise.
pub fn toy_dataset(name: &str, n: usize, length: usize, seed: u64) -> Dataset {
    let mut r = rng(seed);
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        let class = i % 2;
        let phase: f64 = r.random_range(0.0..std::f64::consts::TAU);
        let values = (0..length)
            .map(|t| {
                let s = (t as f64 * 0.3 + phase).sin();
                let base = if class == 0 { s } else { s.signum() };
                base + r.random_range(-0.2..0.2)
            })
            .collect();
        series.push(TimeSeries::new(values).unwrap());
        labels.push(class);
    }
    Dataset::new(name, series, labels, vec!["sine".into(), "square".into()]).unwrap()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()).unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Column standardisation with population std floored at 1e-8.
pub fn standardize_rows(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.len() as f64;
    let f = rows[0].len();
    let mean: Vec<f64> = (0..f).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let std: Vec<f64> = (0..f)
        .map(|j| (rows.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n).sqrt().max(1e-8))
        .collect();
    rows.iter().map(|r| (0..f).map(|j| (r[j] - mean[j]) / std[j]).collect()).collect()
}

/// Centred one-vs-rest +/-1 target of class `c`.
pub fn centred_target(labels: &[usize], c: usize) -> Vec<f64> {
    let y: Vec<f64> = labels.iter().map(|&l| if l == c { 1.0 } else { -1.0 }).collect();
    let m = y.iter().sum::<f64>() / y.len() as f64;
    y.iter().map(|v| v - m).collect()
}

/// `X^T X + alpha I` and `X^T y`.
pub fn normal_equations(x: &[Vec<f64>], y: &[f64], alpha: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let f = x[0].len();
    let mut a = vec![vec![0.0; f]; f];
    let mut b = vec![0.0; f];
    for (row, &t) in x.iter().zip(y) {
        for i in 0..f {
            b[i] += row[i] * t;
            for j in 0..f {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    for (i, r) in a.iter_mut().enumerate() {
        r[i] += alpha;
    }
    (a, b)
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line.
//!
//! Run with `cargo test -p multirocket --test acceptance -- --nocapture`.
//! The spot check on SemgHandMovementCh2 and PigAirwayPressure needs those
//! datasets under `$UCR_ROOT` and is run with `-- --ignored`.

mod common;

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use common::*;
use multirocket::data::load_ucr_pair;
use multirocket::harness::{run_split, RunOptions};
use multirocket::kernel::enumerate_kernels;
use multirocket::ridge::{accuracy, default_alphas, ridge_fit, ridge_fit_alpha};
use multirocket::transform::{
    compute_features, convolve, fit, pool_lspv, pool_mipv, pool_mpv, pool_ppv, TransformConfig,
};
use multirocket::{FeatureMatrix, PoolingOp, Representation};
use rand::Rng;

/// Serialises the heavy criteria so their timings do not overlap.
static HEAVY: Mutex<()> = Mutex::new(());

fn report(name: &str, ok: bool, detail: &str) {
    println!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name} failed: {detail}");
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

#[test]
fn pooling_golden_values() {
    let start = Instant::now();
    let rows: [([f64; 10], [f64; 4]); 5] = [
        ([0., 0., 0., 0., 0., 0., 1., 1., 1., 1.], [0.4, 1.0, 7.5, 4.0]),
        ([1., 1., 1., 1., 0., 0., 0., 0., 0., 0.], [0.4, 1.0, 1.5, 4.0]),
        ([1., 1., 0., 0., 0., 0., 0., 0., 1., 1.], [0.4, 1.0, 4.5, 2.0]),
        ([0., 0., 0., 1., 1., 1., 1., 0., 0., 0.], [0.4, 1.0, 4.5, 4.0]),
        ([0., 0., 0., 0., 0., 0., 10., 10., 10., 10.], [0.4, 10.0, 7.5, 4.0]),
    ];
    let mut matched = 0;
    for (z, want) in &rows {
        let standalone = [pool_ppv(z), pool_mpv(z), pool_mipv(z), pool_lspv(z)];
        let fused = compute_features(z).as_array();
        for i in 0..4 {
            if standalone[i] == want[i] && fused[i] == want[i] {
                matched += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "pooling golden values",
        matched == 20 && within(elapsed, Duration::from_secs(1)),
        &format!("{matched}/20 cells exact in {elapsed:?}"),
    );
}

#[test]
fn kernel_bank() {
    let bank = enumerate_kernels();
    let distinct: HashSet<[i8; 9]> = bank.iter().map(|k| *k.weights()).collect();
    let well_formed = bank.iter().all(|k| {
        let w = k.weights();
        w.iter().map(|&v| v as i32).sum::<i32>() == 0
            && w.iter().filter(|&&v| v == -1).count() == 6
            && w.iter().filter(|&&v| v == 2).count() == 3
    });
    report(
        "kernel bank",
        bank.len() == 84 && distinct.len() == 84 && well_formed,
        &format!("{} kernels, {} distinct, well formed: {well_formed}", bank.len(), distinct.len()),
    );
}

#[test]
fn default_feature_count() {
    let (train, _) = load_ucr_pair(ucr_root(), "Coffee").unwrap();
    let toy = toy_dataset("toy", 6, 10, 1);
    let mut counts = Vec::new();
    for data in [&train, &toy] {
        let t = fit(data, &TransformConfig::default()).unwrap();
        counts.push(t.apply(data, 0).unwrap().cols());
    }
    report(
        "default feature count",
        counts.iter().all(|&c| c == 49_728),
        &format!("columns {counts:?}, expected 49728"),
    );
}

#[test]
fn convolution_oracle() {
    let start = Instant::now();
    let bank = enumerate_kernels();
    let mut r = rng(2024);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let len = r.random_range(10..300);
        let amp = r.random_range(0.1..100.0);
        let x = random_vec(&mut r, len, amp);
        let kernel = bank.get(r.random_range(0..84));
        let padded = r.random_bool(0.5);
        let max_dilation = if padded { len } else { (len - 1) / 8 };
        let dilation = r.random_range(1..=max_dilation.max(1));
        let got = convolve(&x, kernel, dilation, padded).unwrap();
        let want = naive_convolve(&x, kernel.weights(), dilation, padded);
        let scale = naive_convolve_scale(&x, kernel.weights(), dilation, padded);
        assert_eq!(got.len(), want.len());
        for i in 0..got.len() {
            let err = (got[i] - want[i]).abs() / scale[i].max(f64::MIN_POSITIVE);
            worst = worst.max(if got[i] == want[i] { 0.0 } else { err });
        }
    }
    let elapsed = start.elapsed();
    report(
        "convolution oracle",
        worst <= 1e-9 && within(elapsed, Duration::from_secs(30)),
        &format!("1000 cases, worst relative error {worst:.3e} in {elapsed:?}"),
    );
}

#[test]
fn pooling_properties() {
    let start = Instant::now();
    let mut r = rng(77);
    let mut failures = Vec::new();
    let cases = 10_000;
    for case in 0..cases {
        let n = r.random_range(1..200);
        let z: Vec<f64> = (0..n)
            .map(|_| match r.random_range(0..5) {
                0 => 0.0,
                1 => r.random_range(-3i32..4) as f64,
                _ => r.random_range(-50.0..50.0),
            })
            .collect();
        let f = compute_features(&z);
        let (ppv, mpv, mipv, lspv) = (pool_ppv(&z), pool_mpv(&z), pool_mipv(&z), pool_lspv(&z));
        if f.as_array() != [ppv, mpv, mipv, lspv] {
            failures.push(format!("case {case}: fused != standalone"));
        }
        if ppv != naive_ppv(&z) || mipv != naive_mipv(&z) || lspv != naive_lspv(&z)
            || (mpv - naive_mpv(&z)).abs() > 1e-12 * (1.0 + mpv.abs())
        {
            failures.push(format!("case {case}: standalone != naive"));
        }
        let c: f64 = r.random_range(0.01..100.0);
        let scaled: Vec<f64> = z.iter().map(|v| v * c).collect();
        if pool_ppv(&scaled) != ppv
            || pool_mipv(&scaled) != mipv
            || pool_lspv(&scaled) != lspv
            || (pool_mpv(&scaled) - c * mpv).abs() > 1e-12 * (1.0 + c * mpv)
        {
            failures.push(format!("case {case}: scaling"));
        }
        let rev: Vec<f64> = z.iter().rev().copied().collect();
        let mipv_rev_ok = if ppv > 0.0 {
            (pool_mipv(&rev) - (n as f64 - 1.0 - mipv)).abs() < 1e-9
        } else {
            pool_mipv(&rev) == -1.0
        };
        if pool_lspv(&rev) != lspv || pool_ppv(&rev) != ppv || !mipv_rev_ok {
            failures.push(format!("case {case}: reversal"));
        }
        let in_range = (0.0..=1.0).contains(&ppv)
            && mpv >= 0.0
            && (mipv == -1.0 || (0.0..=n as f64 - 1.0).contains(&mipv))
            && (0.0..=n as f64).contains(&lspv)
            && lspv.fract() == 0.0;
        if !in_range {
            failures.push(format!("case {case}: range"));
        }
        if z.iter().all(|&v| v != 0.0) {
            let neg: Vec<f64> = z.iter().map(|v| -v).collect();
            if (pool_ppv(&neg) + ppv - 1.0).abs() > 1e-12 {
                failures.push(format!("case {case}: complement"));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "pooling property suite",
        failures.is_empty() && within(elapsed, Duration::from_secs(30)),
        &format!("{cases} vectors, {} violations {:?} in {elapsed:?}", failures.len(), failures.first()),
    );
}

#[test]
fn determinism_across_threads() {
    let _guard = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let (train, test) = load_ucr_pair(ucr_root(), "GunPoint").unwrap();
    let config = TransformConfig::default().with_seed(17);
    let mut matrices: Vec<(FeatureMatrix, FeatureMatrix)> = Vec::new();
    let mut predictions = Vec::new();
    for threads in [1, 8, 1] {
        let t = fit(&train, &config).unwrap();
        let xtr = t.apply(&train, threads).unwrap();
        let xte = t.apply(&test, threads).unwrap();
        let outcome = run_split(&train, &test, &RunOptions { transform: config.clone(), threads, ..RunOptions::default() }).unwrap();
        predictions.push(outcome.test_predictions);
        matrices.push((xtr, xte));
    }
    let bits = |m: &FeatureMatrix| m.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    let same_features = matrices.iter().all(|(a, b)| bits(a) == bits(&matrices[0].0) && bits(b) == bits(&matrices[0].1));
    let same_predictions = predictions.iter().all(|p| *p == predictions[0]);
    let elapsed = start.elapsed();
    report(
        "determinism across threads {1, 8}",
        same_features && same_predictions && within(elapsed, Duration::from_secs(60)),
        &format!("bitwise features: {same_features}, predictions: {same_predictions}, {elapsed:?}"),
    );
}

#[test]
fn ridge_oracle() {
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let mut r = rng(500 + seed);
        let n = r.random_range(10..60);
        let f = r.random_range(2..40);
        let classes = r.random_range(2..5);
        let labels: Vec<usize> = (0..n).map(|i| if i < classes { i } else { r.random_range(0..classes) }).collect();
        let rows: Vec<Vec<f64>> = (0..n).map(|_| random_vec(&mut r, f, 3.0)).collect();
        let alpha = 10f64.powf(r.random_range(-3.0..3.0));
        let names: Vec<String> = (0..classes).map(|c| c.to_string()).collect();
        let model = ridge_fit_alpha(&FeatureMatrix::from_rows(&rows).unwrap(), &labels, &names, alpha).unwrap();
        let xs = standardize_rows(&rows);
        for c in 0..classes {
            let (a, b) = normal_equations(&xs, &centred_target(&labels, c), alpha);
            let w = model.class_weights(c);
            let res: Vec<f64> =
                a.iter().zip(&b).map(|(row, bi)| row.iter().zip(w).map(|(p, q)| p * q).sum::<f64>() - bi).collect();
            worst = worst.max(norm(&res) / norm(&b).max(f64::MIN_POSITIVE));
        }
    }
    let mut r = rng(1);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..40 {
        let c = i % 2;
        let offset = if c == 0 { -2.0 } else { 2.0 };
        rows.push(vec![offset + r.random_range(-0.5..0.5), offset + r.random_range(-0.5..0.5)]);
        labels.push(c);
    }
    let x = FeatureMatrix::from_rows(&rows).unwrap();
    let model = ridge_fit(&x, &labels, &["a".into(), "b".into()], &default_alphas()).unwrap();
    let train_acc = accuracy(&model.predict(&x).unwrap(), &labels);
    report(
        "ridge oracle",
        worst <= 1e-6 && train_acc == 1.0,
        &format!("worst normal-equation residual {worst:.3e} over 20 problems, separable training accuracy {train_acc}"),
    );
}

const DESK_DATASETS: [&str; 5] = ["GunPoint", "ItalyPowerDemand", "Coffee", "ArrowHead", "OSULeaf"];

#[test]
fn desk_scale_accuracy() {
    let _guard = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let default = RunOptions { threads: 1, ..RunOptions::default() };
    let ablation = RunOptions {
        transform: TransformConfig::default()
            .with_representations(&[Representation::Base])
            .with_pooling(&[PoolingOp::Ppv]),
        threads: 1,
        ..RunOptions::default()
    };
    let mut full = Vec::new();
    let mut mini = Vec::new();
    for name in DESK_DATASETS {
        let (train, test) = load_ucr_pair(ucr_root(), name).unwrap();
        let a = run_split(&train, &test, &default).unwrap().record.acc_test;
        let b = run_split(&train, &test, &ablation).unwrap().record.acc_test;
        println!("    {name:<18} default {a:.4}  base+ppv {b:.4}");
        full.push(a);
        mini.push(b);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let elapsed = start.elapsed();
    let ok = mean(&full) >= mean(&mini) && full.iter().all(|&a| a >= 0.85) && within(elapsed, Duration::from_secs(600));
    report(
        "desk-scale accuracy",
        ok,
        &format!(
            "mean default {:.4} vs base+ppv {:.4}, minimum {:.4}, {elapsed:?}",
            mean(&full),
            mean(&mini),
            full.iter().copied().fold(1.0, f64::min)
        ),
    );
}

#[test]
fn feature_count_scaling() {
    let _guard = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
    let (train, test) = load_ucr_pair(ucr_root(), "OSULeaf").unwrap();
    let time_transform = |features: usize| {
        let config = TransformConfig::default().with_num_features(features);
        (0..3)
            .map(|_| {
                let start = Instant::now();
                let t = fit(&train, &config).unwrap();
                t.apply(&train, 1).unwrap();
                t.apply(&test, 1).unwrap();
                start.elapsed().as_secs_f64()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let small = time_transform(10_000);
    let large = time_transform(50_000);
    let ratio = large / small;
    report(
        "feature-count scaling",
        (3.0..=8.0).contains(&ratio),
        &format!("transform {large:.3}s at 50k vs {small:.3}s at 10k, ratio {ratio:.2} (band [3, 8])"),
    );
}

fn spot_root() -> Option<PathBuf> {
    std::env::var_os("UCR_ROOT").map(PathBuf::from)
}

#[test]
#[ignore = "needs SemgHandMovementCh2 and PigAirwayPressure under $UCR_ROOT"]
fn reference_accuracy_spot_check() {
    let _guard = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let Some(root) = spot_root() else {
        report("reference accuracy spot check", false, "UCR_ROOT is not set");
        return;
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, target, band) in [("SemgHandMovementCh2", 0.792, 0.07), ("PigAirwayPressure", 0.647, 0.10)] {
        let (train, test) = match load_ucr_pair(&root, name) {
            Ok(pair) => pair,
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {e}"));
                continue;
            }
        };
        let acc = run_split(&train, &test, &RunOptions::default()).unwrap().record.acc_test;
        ok &= (acc - target).abs() <= band;
        lines.push(format!("{name} {acc:.4} (target {target} ± {band})"));
    }
    let elapsed = start.elapsed();
    report(
        "reference accuracy spot check",
        ok && within(elapsed, Duration::from_secs(1800)),
        &format!("{}; {elapsed:?}", lines.join(", ")),
    );
}

//! Small resumable benchmark over the bundled datasets.

use std::path::PathBuf;

use multirocket::harness::{cmd_benchmark, RunOptions};
use multirocket::TransformConfig;

fn main() -> multirocket::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let out = std::env::temp_dir().join("multirocket-example-results.csv");
    let datasets: Vec<String> = ["GunPoint", "ItalyPowerDemand", "Coffee"].map(String::from).into();
    let options = RunOptions { transform: TransformConfig::default().with_num_features(10_000), ..RunOptions::default() };

    // second pass finds every run already recorded and skips it
    for pass in 0..2 {
        let summary = cmd_benchmark(&root, &datasets, &[0, 1], &options, &out, |r| {
            println!("  {} #{}: acc {:.4}", r.dataset, r.resample, r.acc_test);
        })?;
        println!(
            "pass {pass}: {} completed, {} skipped, {} failed, mean acc {:?}",
            summary.completed.len(),
            summary.skipped,
            summary.failures.len(),
            summary.mean_test_accuracy()
        );
    }
    std::fs::remove_file(&out)?;
    Ok(())
}

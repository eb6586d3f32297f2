//! Compare the full pipeline against reduced representation/pooling sets.

use std::path::PathBuf;

use multirocket::data::load_ucr_pair;
use multirocket::harness::{run_split, RunOptions};
use multirocket::{PoolingOp, Representation, TransformConfig};

fn main() -> multirocket::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "ArrowHead".into());
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let (train, test) = load_ucr_pair(&root, &name)?;

    let variants = [
        ("default", TransformConfig::default()),
        ("base only", TransformConfig::default().with_representations(&[Representation::Base])),
        ("ppv only", TransformConfig::default().with_pooling(&[PoolingOp::Ppv])),
        (
            "base + ppv",
            TransformConfig::default()
                .with_representations(&[Representation::Base])
                .with_pooling(&[PoolingOp::Ppv]),
        ),
    ];
    println!("{name}");
    for (label, transform) in variants {
        let outcome = run_split(&train, &test, &RunOptions { transform, ..RunOptions::default() })?;
        let r = &outcome.record;
        println!(
            "  {label:<11} {:>6} features  acc {:.4}  transform {:.2}s",
            r.num_features,
            r.acc_test,
            r.t_fit + r.t_apply_train + r.t_apply_test
        );
    }
    Ok(())
}

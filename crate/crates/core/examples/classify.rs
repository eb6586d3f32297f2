//! Train and evaluate a classifier on one bundled dataset.
//!
//! `cargo run --release --example classify -- ItalyPowerDemand`

use std::path::PathBuf;

use multirocket::data::load_ucr_pair;
use multirocket::ridge::{accuracy, default_alphas, ridge_fit};
use multirocket::transform::fit;
use multirocket::TransformConfig;

fn main() -> multirocket::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "GunPoint".into());
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let (train, test) = load_ucr_pair(&root, &name)?;

    let transform = fit(&train, &TransformConfig::default())?;
    let xtr = transform.apply(&train, 0)?;
    let xte = transform.apply(&test, 0)?;

    let model = ridge_fit(&xtr, train.labels(), train.class_names(), &default_alphas())?;
    let predicted = model.predict(&xte)?;
    println!("{name}: alpha {:.4}, test accuracy {:.4}", model.alpha, accuracy(&predicted, test.labels()));
    for (alpha, loo) in &model.alpha_scores {
        println!("  alpha {alpha:>10.4}  loo mse {loo:.5}");
    }
    Ok(())
}

//! Persist a fitted pipeline and reload it for prediction.

use std::path::PathBuf;

use multirocket::data::load_ucr_pair;
use multirocket::harness::predict_with;
use multirocket::model::SavedModel;
use multirocket::ridge::{default_alphas, ridge_fit};
use multirocket::transform::fit;
use multirocket::TransformConfig;

fn main() -> multirocket::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let (train, test) = load_ucr_pair(&root, "ItalyPowerDemand")?;

    let transform = fit(&train, &TransformConfig::default().with_num_features(10_000))?;
    let xtr = transform.apply(&train, 0)?;
    let ridge = ridge_fit(&xtr, train.labels(), train.class_names(), &default_alphas())?;

    let path = std::env::temp_dir().join("multirocket-example-model.json");
    SavedModel::new(transform, Some(ridge)).save(&path)?;
    println!("saved {} bytes to {}", std::fs::metadata(&path)?.len(), path.display());

    let model = SavedModel::load(&path)?;
    let predicted = predict_with(&model, &test, 0)?;
    let correct = predicted.iter().zip(test.labels()).filter(|(p, &t)| **p == test.class_names()[t]).count();
    println!("reloaded model: {correct}/{} correct", test.len());
    std::fs::remove_file(&path)?;
    Ok(())
}

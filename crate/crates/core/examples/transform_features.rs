//! Fit the transform on GunPoint and look at the feature matrix layout.

use std::path::PathBuf;

use multirocket::data::load_ucr_pair;
use multirocket::transform::fit;
use multirocket::{PoolingOp, Representation, TransformConfig};

fn main() -> multirocket::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let (train, test) = load_ucr_pair(&root, "GunPoint")?;

    let config = TransformConfig::default().with_seed(7);
    let transform = fit(&train, &config)?;
    println!("{} features per series (series length {})", transform.num_features(), train.series_length());
    for rep in Representation::ALL {
        let p = transform.params(rep).expect("both representations are fitted");
        println!("  {rep}: dilations {:?}", p.dilations);
    }

    let x = transform.apply(&test, 0)?;
    println!("test matrix {} x {}", x.rows(), x.cols());
    for col in [0, 1, 12_431, x.cols() - 1] {
        let info = transform.column_info(col);
        println!("  column {col:>5}: {info:?}  first value {:.4}", x.get(0, col));
    }

    let small = TransformConfig::default()
        .with_num_features(5_000)
        .with_representations(&[Representation::FirstDiff])
        .with_pooling(&[PoolingOp::Ppv, PoolingOp::Lspv]);
    println!("diff-only ppv+lspv budget of 5000 gives {} features", small.num_features()?);
    Ok(())
}

//! Deterministic stratified resamples of a train/test split.

use std::path::PathBuf;

use multirocket::data::{load_ucr_pair, resample_seed, stratified_resample};

fn main() -> multirocket::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ucr");
    let (train, test) = load_ucr_pair(&root, "Coffee")?;
    println!("original train class counts {:?}", train.class_counts());

    for id in 0..4 {
        let plan = stratified_resample(&train, &test, id)?;
        let (rtrain, rtest) = plan.apply(&train, &test)?;
        println!(
            "resample {id}: seed {:>20}  train {:?}  test size {}  first train idx {:?}",
            resample_seed(train.name(), id),
            rtrain.class_counts(),
            rtest.len(),
            &plan.train_indices[..4]
        );
    }
    Ok(())
}

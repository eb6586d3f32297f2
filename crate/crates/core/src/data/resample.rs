use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::series::Dataset;

/// A train/test split of the pooled examples (train rows first, then test).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResamplePlan {
    pub resample_id: u32,
    pub seed: u64,
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

/// Seed of a resample: the first eight bytes (little endian) of
/// `SHA-256(name || 0x00 || resample_id as u32 little endian)`.
pub fn resample_seed(name: &str, resample_id: u32) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(name.as_bytes());
    hasher.update([0u8]);
    hasher.update(resample_id.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

fn check_compatible(train: &Dataset, test: &Dataset) -> Result<()> {
    if train.series_length() != test.series_length() {
        return Err(Error::LengthMismatch { expected: train.series_length(), actual: test.series_length() });
    }
    if train.class_names() != test.class_names() {
        return Err(Error::Config("train and test use different class lists".into()));
    }
    let train_counts = train.class_counts();
    for (c, &n) in test.class_counts().iter().enumerate() {
        if n > 0 && train_counts[c] == 0 {
            return Err(Error::UnknownClass(test.class_names()[c].clone()));
        }
    }
    Ok(())
}

/// Train rows followed by test rows.
pub fn pool(train: &Dataset, test: &Dataset) -> Result<Dataset> {
    check_compatible(train, test)?;
    let series = train.series().iter().chain(test.series()).cloned().collect();
    let labels = train.labels().iter().chain(test.labels()).copied().collect();
    Dataset::evaluation(train.name(), series, labels, train.class_names().to_vec())
}

/// Stratified re-split of `train ∪ test` keeping each class's training count.
///
/// Resample 0 is the original split. Other ids shuffle each class's pooled
/// indices with a generator seeded by [`resample_seed`] and move the first
/// `train_count[class]` of them into the training set. Index lists are sorted.
pub fn stratified_resample(train: &Dataset, test: &Dataset, resample_id: u32) -> Result<ResamplePlan> {
    check_compatible(train, test)?;
    let seed = resample_seed(train.name(), resample_id);
    let n_train = train.len();
    let total = n_train + test.len();
    if resample_id == 0 {
        return Ok(ResamplePlan {
            resample_id,
            seed,
            train_indices: (0..n_train).collect(),
            test_indices: (n_train..total).collect(),
        });
    }
    let labels: Vec<usize> = train.labels().iter().chain(test.labels()).copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_indices = Vec::with_capacity(n_train);
    let mut test_indices = Vec::with_capacity(test.len());
    for (class, &count) in train.class_counts().iter().enumerate() {
        let mut members: Vec<usize> = (0..total).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        train_indices.extend_from_slice(&members[..count]);
        test_indices.extend_from_slice(&members[count..]);
    }
    train_indices.sort_unstable();
    test_indices.sort_unstable();
    Ok(ResamplePlan { resample_id, seed, train_indices, test_indices })
}

impl ResamplePlan {
    /// Materialises the split from the original pair.
    pub fn apply(&self, train: &Dataset, test: &Dataset) -> Result<(Dataset, Dataset)> {
        let pooled = pool(train, test)?;
        let new_train = pooled.select(&self.train_indices)?;
        let new_train = Dataset::new(
            new_train.name().to_owned(),
            new_train.series().to_vec(),
            new_train.labels().to_vec(),
            new_train.class_names().to_vec(),
        )?;
        Ok((new_train, pooled.select(&self.test_indices)?))
    }
}

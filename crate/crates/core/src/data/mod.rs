//! UCR-archive ingestion and stratified resampling.

mod resample;
mod ucr;

pub use resample::{pool, resample_seed, stratified_resample, ResamplePlan};
pub use ucr::{load_tsv, load_ucr_pair, parse_rows, ucr_paths, write_tsv};

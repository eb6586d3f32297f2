//! MultiRocket time series classification.
//!
//! A series and its first-order difference are convolved with 84 fixed
//! length-9 kernels at a range of dilations. Each output is thresholded by a
//! bias learned from training data and summarised by four pooling operators
//! (PPV, MPV, MIPV, LSPV). The resulting features feed a ridge classifier.
//!
//! ```no_run
//! use multirocket::{data, transform, ridge};
//!
//! let (train, test) = data::load_ucr_pair("data/ucr", "GunPoint")?;
//! let fitted = transform::fit(&train, &transform::TransformConfig::default())?;
//! let x_train = fitted.apply(&train, 0)?;
//! let model = ridge::ridge_fit(&x_train, train.labels(), train.class_names(), &ridge::default_alphas())?;
//! let predicted = model.predict(&fitted.apply(&test, 0)?)?;
//! # Ok::<(), multirocket::Error>(())
//! ```

pub mod data;
pub mod error;
pub mod features;
pub mod harness;
pub mod kernel;
pub mod model;
pub mod ridge;
pub mod series;
pub mod transform;

pub use error::{Error, Result};
pub use features::FeatureMatrix;
pub use kernel::{enumerate_kernels, Kernel, KernelBank};
pub use series::{Dataset, TimeSeries};
pub use transform::pooling::PoolingOp;
pub use transform::{FittedTransform, Representation, TransformConfig};

//! Saved models.
//!
//! A model file is a JSON document:
//!
//! ```text
//! {
//!   "format": "multirocket-model",
//!   "version": 1,
//!   "transform": {
//!     "config": { "target_num_features", "representations", "pooling_ops", "seed" },
//!     "input_length": <int>,
//!     "params": [ { "representation", "series_length", "dilations",
//!                   "combos_per_dilation", "biases", "paddings" }, ... ]
//!   },
//!   "classifier": null | { "weights", "intercepts", "feature_means",
//!                          "feature_stds", "alpha", "class_labels", "alpha_scores" }
//! }
//! ```
//!
//! Floats are written in shortest round-trip form, so loading a saved model
//! reproduces every parameter bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ridge::RidgeModel;
use crate::transform::FittedTransform;

pub const FORMAT_NAME: &str = "multirocket-model";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedModel {
    pub format: String,
    pub version: u32,
    pub transform: FittedTransform,
    pub classifier: Option<RidgeModel>,
}

impl SavedModel {
    pub fn new(transform: FittedTransform, classifier: Option<RidgeModel>) -> Self {
        Self { format: FORMAT_NAME.into(), version: FORMAT_VERSION, transform, classifier }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: SavedModel = serde_json::from_str(text)?;
        if model.format != FORMAT_NAME {
            return Err(Error::ModelFormat(format!("expected format {FORMAT_NAME:?}, found {:?}", model.format)));
        }
        if model.version != FORMAT_VERSION {
            return Err(Error::ModelFormat(format!("unsupported version {}", model.version)));
        }
        model.transform.validate()?;
        if let Some(clf) = &model.classifier {
            clf.validate()?;
            if clf.num_features() != model.transform.num_features() {
                return Err(Error::FeatureMismatch {
                    expected: model.transform.num_features(),
                    actual: clf.num_features(),
                });
            }
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

//! Ridge regression classifier with leave-one-out selection of the
//! regularisation strength.
//!
//! Features are standardised with the training mean and (floored) standard
//! deviation. Each class gets a regression target of `+1` for its own examples
//! and `-1` for the rest, with an unpenalised intercept. The prediction is the
//! class with the highest score, lowest index on ties.
//!
//! Leave-one-out errors come from the usual closed form
//! `e_i = (y_i - yhat_i) / (1 - H_ii)` where `H` is the hat matrix of the
//! centred ridge fit plus the intercept's `1/n`. `H` is read off one symmetric
//! eigendecomposition: of the `n x n` Gram matrix when there are fewer
//! examples than features, of the `F x F` scatter matrix otherwise. Every
//! candidate alpha reuses that decomposition.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// Floor applied to feature standard deviations.
pub const STD_FLOOR: f64 = 1e-8;

/// Ten log-spaced values over `[1e-3, 1e3]`.
pub fn default_alphas() -> Vec<f64> {
    (0..10).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 9.0)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeModel {
    /// Class-major: `weights[c * num_features + f]`.
    pub weights: Vec<f64>,
    pub intercepts: Vec<f64>,
    pub feature_means: Vec<f64>,
    pub feature_stds: Vec<f64>,
    pub alpha: f64,
    pub class_labels: Vec<String>,
    /// Mean squared leave-one-out error for each candidate alpha tried.
    #[serde(default)]
    pub alpha_scores: Vec<(f64, f64)>,
}

/// Standardised training design stored as one column per example.
struct Design {
    /// `num_features x n`.
    columns: DMatrix<f64>,
    means: Vec<f64>,
    stds: Vec<f64>,
}

fn standardize(features: &FeatureMatrix) -> Design {
    let (n, f) = (features.rows(), features.cols());
    let mut means = vec![0.0; f];
    for r in 0..n {
        for (m, &v) in means.iter_mut().zip(features.row(r)) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n as f64);
    let mut vars = vec![0.0; f];
    for r in 0..n {
        for ((s, &v), &m) in vars.iter_mut().zip(features.row(r)).zip(&means) {
            *s += (v - m) * (v - m);
        }
    }
    let stds: Vec<f64> = vars.iter().map(|v| (v / n as f64).sqrt().max(STD_FLOOR)).collect();
    let mut columns = DMatrix::<f64>::zeros(f, n);
    columns
        .as_mut_slice()
        .par_chunks_mut(f.max(1))
        .enumerate()
        .for_each(|(r, col)| {
            for (j, (&v, (m, s))) in features.row(r).iter().zip(means.iter().zip(&stds)).enumerate() {
                col[j] = (v - m) / s;
            }
        });
    Design { columns, means, stds }
}

/// Eigen-structure of the centred design in sample space.
struct Spectrum {
    /// Eigenvalues of `Z^T Z`, clamped at zero.
    values: Vec<f64>,
    /// Matching orthonormal sample-space eigenvectors, `n x r`.
    vectors: DMatrix<f64>,
    /// `Z Z^T`, kept when the decomposition was taken in feature space.
    scatter: Option<DMatrix<f64>>,
}

fn gram(columns: &DMatrix<f64>) -> DMatrix<f64> {
    let n = columns.ncols();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let ci = columns.column(i);
            (i..n).map(|j| ci.dot(&columns.column(j))).collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| if j >= i { rows[i][j - i] } else { rows[j][i - j] })
}

fn spectrum(design: &Design) -> Spectrum {
    let (f, n) = design.columns.shape();
    if n <= f {
        let eig = SymmetricEigen::new(gram(&design.columns));
        return Spectrum {
            values: eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect(),
            vectors: eig.eigenvectors,
            scatter: None,
        };
    }
    let scatter = &design.columns * design.columns.transpose();
    let eig = SymmetricEigen::new(scatter.clone());
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b));
    // only directions with nonzero variance have a sample-space image
    let keep: Vec<usize> = (0..f).filter(|&j| eig.eigenvalues[j] > top * 1e-12).collect();
    let mut vectors = design.columns.tr_mul(&eig.eigenvectors.select_columns(keep.iter()));
    let values: Vec<f64> = keep.iter().map(|&j| eig.eigenvalues[j]).collect();
    for (j, &l) in values.iter().enumerate() {
        vectors.column_mut(j).iter_mut().for_each(|v| *v /= l.sqrt());
    }
    Spectrum { values, vectors, scatter: Some(scatter) }
}

fn encode_targets(labels: &[usize], num_classes: usize) -> (DMatrix<f64>, Vec<f64>) {
    let n = labels.len();
    let y = DMatrix::from_fn(n, num_classes, |i, c| if labels[i] == c { 1.0 } else { -1.0 });
    let means: Vec<f64> = (0..num_classes).map(|c| y.column(c).mean()).collect();
    let centred = DMatrix::from_fn(n, num_classes, |i, c| y[(i, c)] - means[c]);
    (centred, means)
}

/// Mean squared leave-one-out residual over all examples and classes.
fn loo_error(spec: &Spectrum, projected: &DMatrix<f64>, targets: &DMatrix<f64>, alpha: f64) -> f64 {
    let n = targets.nrows();
    let shrink: Vec<f64> = spec.values.iter().map(|&l| l / (l + alpha)).collect();
    let mut scaled = projected.clone();
    for (j, s) in shrink.iter().enumerate() {
        scaled.row_mut(j).iter_mut().for_each(|v| *v *= s);
    }
    let fitted = &spec.vectors * scaled;
    let mut total = 0.0;
    for i in 0..n {
        let leverage = 1.0 / n as f64
            + spec.vectors.row(i).iter().zip(&shrink).map(|(q, s)| q * q * s).sum::<f64>();
        let denom = 1.0 - leverage;
        for c in 0..targets.ncols() {
            let e = (targets[(i, c)] - fitted[(i, c)]) / denom;
            total += e * e;
        }
    }
    let score = total / (n * targets.ncols()) as f64;
    // leverage 1 makes the closed form undefined
    if score.is_finite() {
        score
    } else {
        f64::INFINITY
    }
}

fn check_inputs(features: &FeatureMatrix, labels: &[usize], class_labels: &[String]) -> Result<()> {
    if features.rows() != labels.len() {
        return Err(Error::LabelCountMismatch { series: features.rows(), labels: labels.len() });
    }
    if features.rows() == 0 {
        return Err(Error::EmptyDataset);
    }
    if let Some(&label) = labels.iter().find(|&&l| l >= class_labels.len()) {
        return Err(Error::LabelOutOfRange { label, num_classes: class_labels.len() });
    }
    let mut present = vec![false; class_labels.len()];
    labels.iter().for_each(|&l| present[l] = true);
    let distinct = present.iter().filter(|&&p| p).count();
    if distinct < 2 {
        return Err(Error::TooFewClasses(distinct));
    }
    features.check_finite()
}

/// Fits a ridge classifier, choosing alpha from `alphas` by leave-one-out
/// error (smallest alpha on ties).
pub fn ridge_fit(
    features: &FeatureMatrix,
    labels: &[usize],
    class_labels: &[String],
    alphas: &[f64],
) -> Result<RidgeModel> {
    check_inputs(features, labels, class_labels)?;
    if alphas.is_empty() || alphas.iter().any(|&a| !(a > 0.0 && a.is_finite())) {
        return Err(Error::Config("alphas must be positive and finite".into()));
    }
    let design = standardize(features);
    let (targets, target_means) = encode_targets(labels, class_labels.len());
    let spec = spectrum(&design);
    let projected = spec.vectors.tr_mul(&targets);
    let scores: Vec<(f64, f64)> =
        alphas.iter().map(|&a| (a, loo_error(&spec, &projected, &targets, a))).collect();
    let mut best = scores[0];
    for &s in &scores[1..] {
        if s.1 < best.1 {
            best = s;
        }
    }
    let mut model = solve(&design, &spec, &targets, target_means, best.0, class_labels);
    model.alpha_scores = scores;
    Ok(model)
}

/// Fits a ridge classifier with a fixed `alpha`.
pub fn ridge_fit_alpha(
    features: &FeatureMatrix,
    labels: &[usize],
    class_labels: &[String],
    alpha: f64,
) -> Result<RidgeModel> {
    ridge_fit(features, labels, class_labels, &[alpha])
}

fn solve(
    design: &Design,
    spec: &Spectrum,
    targets: &DMatrix<f64>,
    target_means: Vec<f64>,
    alpha: f64,
    class_labels: &[String],
) -> RidgeModel {
    let w = match &spec.scatter {
        // (Z Z^T + alpha I) w = Z y
        Some(scatter) => {
            let f = scatter.nrows();
            let system = scatter + DMatrix::<f64>::identity(f, f) * alpha;
            let rhs = &design.columns * targets;
            match system.clone().cholesky() {
                Some(chol) => chol.solve(&rhs),
                None => system.lu().solve(&rhs).expect("ridge system is positive definite"),
            }
        }
        // w = Z (Z^T Z + alpha I)^-1 y via the full Gram eigendecomposition
        None => {
            let mut dual = spec.vectors.tr_mul(targets);
            for (j, &l) in spec.values.iter().enumerate() {
                dual.row_mut(j).iter_mut().for_each(|v| *v /= l + alpha);
            }
            &design.columns * (&spec.vectors * dual)
        }
    };
    let (f, c) = w.shape();
    let mut weights = vec![0.0; f * c];
    for class in 0..c {
        weights[class * f..(class + 1) * f].copy_from_slice(w.column(class).as_slice());
    }
    RidgeModel {
        weights,
        intercepts: target_means,
        feature_means: design.means.clone(),
        feature_stds: design.stds.clone(),
        alpha,
        class_labels: class_labels.to_vec(),
        alpha_scores: Vec::new(),
    }
}

impl RidgeModel {
    pub fn num_features(&self) -> usize {
        self.feature_means.len()
    }

    pub fn num_classes(&self) -> usize {
        self.intercepts.len()
    }

    /// Weight vector of class `c` over standardised features.
    pub fn class_weights(&self, c: usize) -> &[f64] {
        let f = self.num_features();
        &self.weights[c * f..(c + 1) * f]
    }

    pub fn decision_function(&self, features: &FeatureMatrix) -> Result<Vec<Vec<f64>>> {
        if features.cols() != self.num_features() {
            return Err(Error::FeatureMismatch { expected: self.num_features(), actual: features.cols() });
        }
        Ok((0..features.rows())
            .into_par_iter()
            .map(|r| {
                let z: Vec<f64> = features
                    .row(r)
                    .iter()
                    .zip(self.feature_means.iter().zip(&self.feature_stds))
                    .map(|(&v, (m, s))| (v - m) / s)
                    .collect();
                (0..self.num_classes())
                    .map(|c| {
                        self.intercepts[c]
                            + self.class_weights(c).iter().zip(&z).map(|(w, x)| w * x).sum::<f64>()
                    })
                    .collect()
            })
            .collect())
    }

    /// Predicted class ids.
    pub fn predict(&self, features: &FeatureMatrix) -> Result<Vec<usize>> {
        Ok(self.decision_function(features)?.iter().map(|scores| argmax(scores)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let (f, c) = (self.num_features(), self.num_classes());
        if c < 2 || self.class_labels.len() != c {
            return Err(Error::ModelFormat("ridge model needs at least two labelled classes".into()));
        }
        if self.weights.len() != f * c || self.feature_stds.len() != f {
            return Err(Error::ModelFormat("ridge model dimensions inconsistent".into()));
        }
        if self.feature_stds.iter().any(|&s| s.is_nan() || s < STD_FLOOR) {
            return Err(Error::ModelFormat("feature std below floor".into()));
        }
        if self.weights.iter().chain(&self.intercepts).chain(&self.feature_means).any(|v| !v.is_finite()) {
            return Err(Error::ModelFormat("non-finite ridge parameter".into()));
        }
        Ok(())
    }
}

/// Index of the largest score; the first one wins ties.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

pub fn accuracy(predicted: &[usize], truth: &[usize]) -> f64 {
    assert_eq!(predicted.len(), truth.len());
    if truth.is_empty() {
        return 0.0;
    }
    predicted.iter().zip(truth).filter(|(p, t)| p == t).count() as f64 / truth.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(c: usize) -> Vec<String> {
        (0..c).map(|i| i.to_string()).collect()
    }

    #[test]
    fn default_grid() {
        let a = default_alphas();
        assert_eq!(a.len(), 10);
        assert!((a[0] - 1e-3).abs() < 1e-15);
        assert!((a[9] - 1e3).abs() < 1e-9);
        assert!(a.windows(2).all(|w| (w[1] / w[0] - 10f64.powf(6.0 / 9.0)).abs() < 1e-9));
    }

    #[test]
    fn rejects_single_class_and_nan() {
        let x = FeatureMatrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap();
        assert!(matches!(ridge_fit(&x, &[0, 0], &names(2), &[1.0]), Err(Error::TooFewClasses(1))));
        let x = FeatureMatrix::from_rows(&[vec![1.0], vec![f64::NAN]]).unwrap();
        assert!(matches!(ridge_fit(&x, &[0, 1], &names(2), &[1.0]), Err(Error::NonFiniteFeature { row: 1, col: 0 })));
    }

    #[test]
    fn constant_features_predict_majority() {
        let x = FeatureMatrix::from_rows(&vec![vec![3.0, -1.0, 0.5]; 7]).unwrap();
        let labels = [0, 1, 1, 2, 1, 0, 1];
        let model = ridge_fit(&x, &labels, &names(3), &default_alphas()).unwrap();
        assert!(model.feature_stds.iter().all(|&s| s == STD_FLOOR));
        assert!(model.weights.iter().all(|&w| w == 0.0));
        let test = FeatureMatrix::from_rows(&[vec![3.0, -1.0, 0.5], vec![9.0, 2.0, -4.0]]).unwrap();
        assert_eq!(model.predict(&test).unwrap(), vec![1, 1]);
    }

    #[test]
    fn argmax_ties_take_lowest() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]), 1);
        assert_eq!(argmax(&[2.0, 2.0]), 0);
    }

    #[test]
    fn predict_dimension_mismatch() {
        let x = FeatureMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let model = ridge_fit(&x, &[0, 1], &names(2), &[1.0]).unwrap();
        let bad = FeatureMatrix::from_rows(&[vec![0.0]]).unwrap();
        assert!(matches!(model.predict(&bad), Err(Error::FeatureMismatch { expected: 2, actual: 1 })));
    }
}

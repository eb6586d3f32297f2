//! Bias thresholds drawn as quantiles of training convolution outputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::convolve::DilatedWindows;
use crate::kernel::KernelBank;

/// Words of keystream reserved for each (kernel, dilation) draw.
const WORDS_PER_DRAW: u128 = 64;

/// Picks the training example used for each (kernel, dilation) pair.
///
/// Backed by ChaCha8 in counter mode: the seed keys the cipher, the stream id
/// separates representations, and the pair index fixes the keystream offset.
/// Each draw is therefore independent of the order in which pairs are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExampleSelector {
    seed: u64,
    stream: u64,
}

impl ExampleSelector {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Index in `0..num_examples` for the pair `(kernel, dilation_index)`.
    pub fn pick(&self, kernel: usize, dilation_index: usize, num_dilations: usize, num_examples: usize) -> usize {
        assert!(num_examples > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos((kernel * num_dilations + dilation_index) as u128 * WORDS_PER_DRAW);
        rng.random_range(0..num_examples)
    }
}

/// Quantile position of bias slot `slot`: `frac((slot + 1) * phi)` with
/// `phi = (sqrt(5) - 1) / 2`.
pub fn quantile_position(slot: usize) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    ((slot + 1) as f64 * phi).fract()
}

/// Linear-interpolation quantile of ascending `sorted` at `q` in `[0, 1]`.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + (sorted[hi] - sorted[lo]) * frac
    }
}

/// One bias per (kernel, combination) in kernel-major order.
///
/// For each (kernel, dilation) pair one training series is chosen by
/// `selector`, its padded convolution output is computed, and
/// `combos_per_dilation[d]` quantiles of that output become the biases of the
/// pair's combinations.
pub fn sample_biases<S: AsRef<[f64]>>(
    train: &[S],
    kernels: &KernelBank,
    dilations: &[usize],
    combos_per_dilation: &[usize],
    selector: &ExampleSelector,
) -> Vec<f64> {
    assert!(!train.is_empty());
    assert_eq!(dilations.len(), combos_per_dilation.len());
    let length = train[0].as_ref().len();
    let combos_per_kernel: usize = combos_per_dilation.iter().sum();
    let mut biases = vec![0.0; kernels.len() * combos_per_kernel];
    let mut windows = DilatedWindows::new(length);
    let mut z = vec![0.0; length];
    for (k, kernel) in kernels.iter().enumerate() {
        let mut combo = 0;
        for (di, (&dilation, &slots)) in dilations.iter().zip(combos_per_dilation).enumerate() {
            let example = selector.pick(k, di, dilations.len(), train.len());
            windows.load(train[example].as_ref(), dilation);
            windows.kernel_output(kernel, &mut z);
            z.sort_unstable_by(f64::total_cmp);
            for slot in 0..slots {
                biases[k * combos_per_kernel + combo] = quantile(&z, quantile_position(slot));
                combo += 1;
            }
        }
    }
    biases
}

//! Dilated convolution with the two-valued kernels.
//!
//! Every kernel is `-1` everywhere plus `3` at its three high positions, so
//! for a fixed dilation the output is `3 * (x_a + x_b + x_c) - (x_0 + ... + x_8)`
//! where `x_j` is the input shifted by `(j - 4) * dilation`. The nine shifted
//! views and their sum are built once per dilation and shared by all kernels.

use crate::error::{Error, Result};
use crate::kernel::{kernel_bank, Kernel, KERNEL_LENGTH};

const HALF: usize = KERNEL_LENGTH / 2;

/// Zero padding on each side for the padded (same-length) output.
pub fn padding_for(dilation: usize) -> usize {
    HALF * dilation
}

/// Length of the unpadded output, if any exists.
pub fn valid_length(length: usize, dilation: usize) -> Option<usize> {
    length.checked_sub((KERNEL_LENGTH - 1) * dilation).filter(|&n| n > 0)
}

/// Convolves `x` with `kernel` at `dilation`.
///
/// Padded output has the input's length; unpadded output has
/// `len - 8 * dilation` entries and equals the padded output trimmed by
/// `4 * dilation` on each side.
pub fn convolve(x: &[f64], kernel: &Kernel, dilation: usize, padded: bool) -> Result<Vec<f64>> {
    assert!(dilation >= 1, "dilation must be positive");
    if !padded && valid_length(x.len(), dilation).is_none() {
        let index = kernel_bank().iter().position(|k| k == kernel).unwrap_or(usize::MAX);
        return Err(Error::InsufficientLength {
            kernel: index,
            dilation,
            required: (KERNEL_LENGTH - 1) * dilation + 1,
            length: x.len(),
        });
    }
    let mut windows = DilatedWindows::new(x.len());
    windows.load(x, dilation);
    let mut out = vec![0.0; x.len()];
    windows.kernel_output(kernel, &mut out);
    if !padded {
        let pad = padding_for(dilation);
        out.drain(..pad);
        out.truncate(x.len() - 2 * pad);
    }
    Ok(out)
}

/// Shifted copies of one series at one dilation, reusable across dilations.
#[derive(Debug, Clone)]
pub(crate) struct DilatedWindows {
    length: usize,
    shifted: Vec<f64>,
    total: Vec<f64>,
}

impl DilatedWindows {
    pub(crate) fn new(length: usize) -> Self {
        Self { length, shifted: vec![0.0; KERNEL_LENGTH * length], total: vec![0.0; length] }
    }

    pub(crate) fn load(&mut self, x: &[f64], dilation: usize) {
        debug_assert_eq!(x.len(), self.length);
        let n = self.length as isize;
        self.total.iter_mut().for_each(|t| *t = 0.0);
        for j in 0..KERNEL_LENGTH {
            let shift = (j as isize - HALF as isize) * dilation as isize;
            let row = &mut self.shifted[j * self.length..(j + 1) * self.length];
            // row[i] = x[i + shift], zero outside the series
            let lo = (-shift).clamp(0, n) as usize;
            let hi = (n - shift).clamp(0, n) as usize;
            row[..lo].iter_mut().for_each(|v| *v = 0.0);
            row[hi.max(lo)..].iter_mut().for_each(|v| *v = 0.0);
            if lo < hi {
                let src = (lo as isize + shift) as usize;
                row[lo..hi].copy_from_slice(&x[src..src + (hi - lo)]);
            }
            for (t, &v) in self.total.iter_mut().zip(row.iter()) {
                *t += v;
            }
        }
    }

    fn row(&self, j: usize) -> &[f64] {
        &self.shifted[j * self.length..(j + 1) * self.length]
    }

    /// Padded output of `kernel` for the currently loaded dilation.
    pub(crate) fn kernel_output(&self, kernel: &Kernel, out: &mut [f64]) {
        let [a, b, c] = kernel.high_positions();
        let (ra, rb, rc) = (self.row(a), self.row(b), self.row(c));
        for i in 0..self.length {
            out[i] = 3.0 * (ra[i] + rb[i] + rc[i]) - self.total[i];
        }
    }
}

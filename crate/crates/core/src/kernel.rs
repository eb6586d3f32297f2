//! The fixed bank of length-9 two-valued kernels.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const KERNEL_LENGTH: usize = 9;
pub const NUM_KERNELS: usize = 84;

const LOW: i8 = -1;
const HIGH: i8 = 2;

/// A length-9 kernel with six weights of -1 and three weights of 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Kernel {
    weights: [i8; KERNEL_LENGTH],
    high: [usize; 3],
}

impl Kernel {
    pub fn new(weights: [i8; KERNEL_LENGTH]) -> Result<Self> {
        let lows = weights.iter().filter(|&&w| w == LOW).count();
        let highs: Vec<usize> =
            weights.iter().enumerate().filter(|(_, &w)| w == HIGH).map(|(i, _)| i).collect();
        if lows != 6 || highs.len() != 3 {
            return Err(Error::InvalidKernel(weights));
        }
        Ok(Self { weights, high: [highs[0], highs[1], highs[2]] })
    }

    fn from_high_positions(high: [usize; 3]) -> Self {
        let mut weights = [LOW; KERNEL_LENGTH];
        for &p in &high {
            weights[p] = HIGH;
        }
        Self { weights, high }
    }

    pub fn weights(&self) -> &[i8; KERNEL_LENGTH] {
        &self.weights
    }

    /// Sorted positions of the three weights equal to 2.
    pub fn high_positions(&self) -> [usize; 3] {
        self.high
    }
}

/// All 84 kernels, ordered lexicographically by their value-2 index triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBank {
    kernels: Vec<Kernel>,
}

impl KernelBank {
    pub fn kernels(&self) -> &[Kernel] {
        &self.kernels
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn get(&self, index: usize) -> &Kernel {
        &self.kernels[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Kernel> {
        self.kernels.iter()
    }
}

pub fn enumerate_kernels() -> KernelBank {
    let mut kernels = Vec::with_capacity(NUM_KERNELS);
    for a in 0..KERNEL_LENGTH {
        for b in a + 1..KERNEL_LENGTH {
            for c in b + 1..KERNEL_LENGTH {
                kernels.push(Kernel::from_high_positions([a, b, c]));
            }
        }
    }
    debug_assert_eq!(kernels.len(), NUM_KERNELS);
    KernelBank { kernels }
}

/// Shared instance of [`enumerate_kernels`].
pub fn kernel_bank() -> &'static KernelBank {
    static BANK: OnceLock<KernelBank> = OnceLock::new();
    BANK.get_or_init(enumerate_kernels)
}

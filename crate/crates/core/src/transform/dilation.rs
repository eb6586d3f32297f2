use crate::kernel::KERNEL_LENGTH;

/// Largest dilation exponent for a series of `input_length`:
/// `log2((input_length - 1) / (kernel_length - 1))`.
pub fn max_exponent(input_length: usize) -> f64 {
    ((input_length as f64 - 1.0) / (KERNEL_LENGTH as f64 - 1.0)).log2()
}

/// Spreads `combos_per_kernel` exponents uniformly on `[0, max_exponent]`,
/// maps each to `floor(2^e)`, and merges duplicates.
///
/// Returns the distinct dilations in increasing order together with the number
/// of exponents that landed on each one.
///
/// # Panics
///
/// If `input_length < 9` or `combos_per_kernel == 0`.
pub fn compute_dilations(input_length: usize, combos_per_kernel: usize) -> (Vec<usize>, Vec<usize>) {
    assert!(input_length >= KERNEL_LENGTH, "input length {input_length} shorter than kernel");
    assert!(combos_per_kernel >= 1, "need at least one combination per kernel");
    let top = max_exponent(input_length).max(0.0);
    let mut dilations: Vec<usize> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for k in 0..combos_per_kernel {
        let exponent = if combos_per_kernel == 1 {
            0.0
        } else {
            k as f64 * top / (combos_per_kernel - 1) as f64
        };
        let dilation = (2f64.powf(exponent).floor() as usize).max(1);
        match dilations.last() {
            Some(&last) if last == dilation => *counts.last_mut().unwrap() += 1,
            _ => {
                dilations.push(dilation);
                counts.push(1);
            }
        }
    }
    (dilations, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_exponent_values() {
        assert!((max_exponent(100) - (99.0f64 / 8.0).log2()).abs() < 1e-12);
        assert!((max_exponent(100) - 3.6293).abs() < 1e-4);
        assert_eq!(max_exponent(9), 0.0);
    }

    #[test]
    fn single_combination() {
        assert_eq!(compute_dilations(500, 1), (vec![1], vec![1]));
    }

    #[test]
    fn diff_of_shortest_series() {
        assert_eq!(compute_dilations(9, 74), (vec![1], vec![74]));
    }

    #[test]
    fn counts_sum_and_monotone() {
        for len in [9, 10, 24, 57, 150, 1000, 2000] {
            for cpk in [1, 2, 5, 14, 74, 200] {
                let (d, c) = compute_dilations(len, cpk);
                assert_eq!(c.iter().sum::<usize>(), cpk);
                assert!(d.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(d[0], 1);
                assert!(d.iter().all(|&x| (KERNEL_LENGTH - 1) * x < len));
            }
        }
    }

    #[test]
    fn hand_computed_spread() {
        // length 100, 5 combos: exponents 0, .907, 1.815, 2.722, 3.629
        let (d, c) = compute_dilations(100, 5);
        assert_eq!(d, vec![1, 3, 6, 12]);
        assert_eq!(c, vec![2, 1, 1, 1]);
    }
}

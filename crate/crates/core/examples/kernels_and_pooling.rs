//! Inspect the kernel bank, convolve a toy series and pool the result.

use multirocket::kernel::kernel_bank;
use multirocket::transform::{compute_features, convolve};

fn main() -> multirocket::Result<()> {
    let bank = kernel_bank();
    println!("{} kernels; first three:", bank.len());
    for k in bank.iter().take(3) {
        println!("  {:?}  high at {:?}", k.weights(), k.high_positions());
    }

    let x: Vec<f64> = (0..40).map(|i| (i as f64 / 4.0).sin()).collect();
    for (dilation, padded) in [(1, true), (2, false), (4, true)] {
        let z = convolve(&x, bank.get(10), dilation, padded)?;
        let bias = 0.5;
        let shifted: Vec<f64> = z.iter().map(|v| v - bias).collect();
        let f = compute_features(&shifted);
        println!(
            "d={dilation} padded={padded:<5} len={:>2}  ppv={:.3} mpv={:.3} mipv={:.2} lspv={}",
            z.len(),
            f.ppv,
            f.mpv,
            f.mipv,
            f.lspv
        );
    }
    Ok(())
}

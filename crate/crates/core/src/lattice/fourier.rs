//! Unitary discrete Fourier transforms and the momentum grid.

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Forward unitary DFT: `psi_hat_k = (1/sqrt(N)) sum_j e^{-i 2pi jk/N} psi_j`.
pub(crate) fn to_momentum(amps: &[Complex64]) -> Vec<Complex64> {
    let mut buf = amps.to_vec();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    let scale = 1.0 / (buf.len() as f64).sqrt();
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Inverse unitary DFT.
pub(crate) fn to_position(amps: &[Complex64]) -> Vec<Complex64> {
    let mut buf = amps.to_vec();
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    let scale = 1.0 / (buf.len() as f64).sqrt();
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Momentum value of DFT bin `j` on a ring of physical length `length`:
/// `2pi s(j) / length` with `s(j) = j` for `j < N/2` and `j - N` otherwise,
/// so the single Nyquist mode of an even grid sits at `-N/2`.
pub(crate) fn momentum_values(n: usize, length: f64) -> Vec<f64> {
    (0..n)
        .map(|j| std::f64::consts::TAU * signed_bin(j, n) / length)
        .collect()
}

/// Integer angular-momentum grid for an `n`-site circle, same bin layout.
pub(crate) fn angular_momentum_values(n: usize) -> Vec<f64> {
    (0..n).map(|j| signed_bin(j, n)).collect()
}

fn signed_bin(j: usize, n: usize) -> f64 {
    if j < n / 2 {
        j as f64
    } else {
        j as f64 - n as f64
    }
}

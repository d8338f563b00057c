//! Position and momentum operators as explicit finite matrices, and the
//! commutator diagnostics built on them.
//!
//! In any finite dimension `trace(AB - BA)` vanishes identically while the
//! canonical relation would require trace `i N`, so the canonical
//! commutator cannot hold as a matrix identity. Interior wavepackets still
//! reproduce it in expectation, which is what the diagnostics here measure.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{fourier, Lattice, LatticeState};

/// Dense square complex matrix with a descriptive label.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    entries: Vec<Complex64>,
    label: String,
}

impl OperatorMatrix {
    /// Builds from row-major entries; the length must be a perfect square
    /// matching `n * n`.
    pub fn new(n: usize, label: impl Into<String>, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: n * n,
            });
        }
        Ok(Self {
            n,
            entries,
            label: label.into(),
        })
    }

    pub fn from_diagonal(label: impl Into<String>, diag: &[f64]) -> Self {
        let n = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = Complex64::new(d, 0.0);
        }
        Self {
            n,
            entries,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let out = self
            .entries
            .chunks_exact(self.n)
            .map(|row| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, x) in row.iter().zip(v) {
                    acc += a * x;
                }
                acc
            })
            .collect();
        Ok(out)
    }

    /// Max elementwise deviation from Hermiticity, `max |A_ij - conj(A_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

/// Position and momentum matrices for a lattice: `X` diagonal with site
/// coordinates centered at 0, `P = F^dagger diag(k) F` with `F` the unitary
/// DFT and `k` the signed momentum grid.
pub fn build_xp(lat: &Lattice) -> (OperatorMatrix, OperatorMatrix) {
    let n = lat.n_sites();
    let center = lat.length() / 2.0;
    let coords: Vec<f64> = (0..n).map(|j| lat.position(j) - center).collect();
    let x = OperatorMatrix::from_diagonal("X", &coords);

    let k = fourier::momentum_values(n, lat.length());
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    // Column j of P is F^dagger (k .* F e_j).
    let mut basis = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        basis[j] = Complex64::new(1.0, 0.0);
        let mut hat = fourier::to_momentum(&basis);
        for (v, &kv) in hat.iter_mut().zip(&k) {
            *v *= kv;
        }
        let col = fourier::to_position(&hat);
        for i in 0..n {
            entries[i * n + j] = col[i];
        }
        basis[j] = Complex64::new(0.0, 0.0);
    }
    let p = OperatorMatrix::new(n, "P", entries).expect("square by construction");
    (x, p)
}

/// `trace(AB - BA)`. The two traces are accumulated independently so the
/// cancellation is a genuine floating-point outcome, not an algebraic
/// shortcut.
pub fn commutator_trace(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim();
    let mut tr_ab = Complex64::new(0.0, 0.0);
    let mut tr_ba = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr_ab += a.entry(i, j) * b.entry(j, i);
            tr_ba += b.entry(i, j) * a.entry(j, i);
        }
    }
    Ok(tr_ab - tr_ba)
}

/// Trace of `i * I_n`, the value the canonical relation would need:
/// computed literally as a reference for the contrast with
/// [`commutator_trace`].
pub fn canonical_trace_reference(n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        acc += Complex64::i();
    }
    acc
}

/// `<psi| (AB - BA) |psi>`.
pub fn commutator_expectation(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    psi: &LatticeState,
) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let ab = a.matvec(&b.matvec(psi.amplitudes())?)?;
    let ba = b.matvec(&a.matvec(psi.amplitudes())?)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, (u, v)) in psi.amplitudes().iter().zip(ab.iter().zip(&ba)) {
        acc += c.conj() * (u - v);
    }
    Ok(acc)
}

//! Quantum mechanics on a finite 1-D lattice and on a discrete circle.
//!
//! States are unit-norm complex amplitude vectors over `n_sites` equally
//! spaced points. The momentum operator and free evolution are defined
//! spectrally through the discrete Fourier basis, so evolution is unitary
//! and the momentum operator Hermitian to roundoff; finite differences
//! would leak dispersion error into the percent-level tolerances used by
//! the tests. Position spread on the periodic domain uses circular-mean
//! centering, and states too wrapped for a meaningful spread are flagged
//! instead of silently computed.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

mod circle;
mod fourier;
mod operators;
mod text_io;

pub use circle::{circle_commutator_check, linear_fit, ClassicalCircle};
pub use operators::{
    build_xp, canonical_trace_reference, commutator_expectation, commutator_trace, OperatorMatrix,
};

/// Spatial topology of the lattice. Both are periodic rings; `Circle`
/// additionally marks the coordinate as an angle variable for the
/// circle-specific operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    LinePeriodic,
    Circle,
}

impl std::str::FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line-periodic" => Ok(Self::LinePeriodic),
            "circle" => Ok(Self::Circle),
            other => Err(Error::Invalid(format!(
                "unknown topology {other:?}; expected line-periodic or circle"
            ))),
        }
    }
}

/// A finite periodic lattice of `n_sites` points spanning `length`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    n_sites: usize,
    length: f64,
    spacing: f64,
    topology: Topology,
}

impl Lattice {
    /// `n_sites` must be even and at least 4 so the momentum grid is
    /// symmetric with a single Nyquist mode.
    pub fn new(n_sites: usize, length: f64, topology: Topology) -> Result<Self> {
        if n_sites < 4 || !n_sites.is_multiple_of(2) {
            return Err(Error::OutOfRange {
                name: "n_sites",
                value: n_sites as f64,
                admissible: "even and >= 4".into(),
            });
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::OutOfRange {
                name: "length",
                value: length,
                admissible: "> 0".into(),
            });
        }
        Ok(Self {
            n_sites,
            length,
            spacing: length / n_sites as f64,
            topology,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn position(&self, j: usize) -> f64 {
        j as f64 * self.spacing
    }

    /// Signed distance from `x` to `x0` on the ring, in `[-L/2, L/2)`.
    pub fn wrapped_distance(&self, x: f64, x0: f64) -> f64 {
        let mut d = (x - x0).rem_euclid(self.length);
        if d >= self.length / 2.0 {
            d -= self.length;
        }
        d
    }

    fn momentum_grid(&self) -> Vec<f64> {
        fourier::momentum_values(self.n_sites, self.length)
    }
}

/// Unit-norm state vector on a lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeState {
    amplitudes: Vec<Complex64>,
}

impl LatticeState {
    /// Normalizes the given amplitudes. Rejects non-finite entries and
    /// vectors with negligible norm.
    pub fn from_amplitudes(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes
            .iter()
            .any(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(Error::NonFinite { name: "amplitudes" });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Invalid("state vector has zero norm".into()));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { amplitudes })
    }

    /// Wraps amplitudes that are already unit-norm by construction
    /// (e.g. the output of a unitary map), without renormalizing.
    pub(crate) fn from_unit_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn check_lattice(&self, lat: &Lattice) -> Result<()> {
        if self.amplitudes.len() != lat.n_sites {
            return Err(Error::DimensionMismatch {
                left: self.amplitudes.len(),
                right: lat.n_sites,
            });
        }
        Ok(())
    }
}

/// Gaussian wavepacket `exp(-d^2/(4 sigma^2) + i p0 x)` on the nearest-image
/// distance `d = x - x0`, normalized. `sigma` must be resolvable and
/// non-wrapping: `4 spacing <= sigma <= length / 8`.
pub fn gaussian_packet(lat: &Lattice, x0: f64, p0: f64, sigma: f64) -> Result<LatticeState> {
    let lo = 4.0 * lat.spacing;
    let hi = lat.length / 8.0;
    if !(sigma.is_finite() && sigma >= lo && sigma <= hi) {
        return Err(Error::OutOfRange {
            name: "sigma",
            value: sigma,
            admissible: format!("[{lo}, {hi}] for this lattice"),
        });
    }
    if !x0.is_finite() {
        return Err(Error::NonFinite { name: "x0" });
    }
    if !p0.is_finite() {
        return Err(Error::NonFinite { name: "p0" });
    }
    let amps = (0..lat.n_sites)
        .map(|j| {
            let x = lat.position(j);
            let d = lat.wrapped_distance(x, x0);
            let envelope = (-d * d / (4.0 * sigma * sigma)).exp();
            envelope * Complex64::from_polar(1.0, p0 * x)
        })
        .collect();
    LatticeState::from_amplitudes(amps)
}

/// Random localized smooth state for uncertainty sweeps: a chirped Gaussian
/// packet, sometimes superposed with a second displaced packet. Width,
/// center, carrier momentum, and chirp are drawn from ranges that keep the
/// state resolvable, unwrapped, and band-limited.
pub fn random_smooth_state(lat: &Lattice, rng: &mut impl Rng) -> LatticeState {
    let lo = (5.0 * lat.spacing).min(lat.length / 10.0);
    let hi = lat.length / 10.0;
    let sigma = lo * (hi / lo).powf(rng.random::<f64>());
    let x0 = rng.random_range(0.0..lat.length);
    let k_max = std::f64::consts::PI / lat.spacing;
    let p0 = rng.random_range(-k_max / 4.0..k_max / 4.0);
    let chirp = rng.random_range(-1.0..1.0);

    let packet = |x0: f64, sigma: f64, p0: f64, chirp: f64| -> Vec<Complex64> {
        (0..lat.n_sites)
            .map(|j| {
                let x = lat.position(j);
                let d = lat.wrapped_distance(x, x0);
                let quad = Complex64::new(1.0, chirp) * (-d * d / (4.0 * sigma * sigma));
                (quad + Complex64::new(0.0, p0 * x)).exp()
            })
            .collect()
    };

    let mut amps = packet(x0, sigma, p0, chirp);
    if 4.0 * sigma < lat.length / 5.0 && rng.random::<f64>() < 0.3 {
        // Second packet at modest separation; large separations would wrap
        // the circular-mean centering.
        let sep = rng.random_range(4.0 * sigma..lat.length / 5.0);
        let weight = rng.random_range(0.3..1.0);
        let phase = rng.random_range(0.0..TAU);
        let other = packet(x0 + sep, sigma, p0, chirp);
        let w = Complex64::from_polar(weight, phase);
        for (a, b) in amps.iter_mut().zip(other) {
            *a += w * b;
        }
    }
    LatticeState::from_amplitudes(amps).expect("generated packet is nonzero")
}

/// Free Schroedinger evolution `exp(-i t p^2 / (2m))`, applied diagonally in
/// the discrete Fourier momentum basis. Exactly unitary up to roundoff.
pub fn evolve_free(lat: &Lattice, psi: &LatticeState, mass: f64, t: f64) -> Result<LatticeState> {
    psi.check_lattice(lat)?;
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::OutOfRange {
            name: "mass",
            value: mass,
            admissible: "> 0".into(),
        });
    }
    if t == 0.0 {
        return Ok(psi.clone());
    }
    let mut hat = fourier::to_momentum(&psi.amplitudes);
    for (v, k) in hat.iter_mut().zip(lat.momentum_grid()) {
        *v *= Complex64::from_polar(1.0, -t * k * k / (2.0 * mass));
    }
    Ok(LatticeState::from_unit_amplitudes(fourier::to_position(
        &hat,
    )))
}

/// Position and momentum spreads of a state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spreads {
    pub delta_x: f64,
    pub delta_p: f64,
    /// Set when the circular variance of the position distribution exceeds
    /// 0.5: the state wraps the ring and `delta_x` is convention-dependent.
    pub wrapped: bool,
}

impl Spreads {
    pub fn product(&self) -> f64 {
        self.delta_x * self.delta_p
    }
}

/// Threshold on circular variance above which position spread is flagged.
pub const WRAP_VARIANCE_THRESHOLD: f64 = 0.5;

/// Circular mean angle and circular variance of the position distribution.
fn circular_stats(psi: &LatticeState) -> (f64, f64) {
    let mut m = Complex64::new(0.0, 0.0);
    for (j, a) in psi.amplitudes.iter().enumerate() {
        let w = a.norm_sqr();
        m += w * Complex64::from_polar(1.0, TAU * j as f64 / psi.len() as f64);
    }
    (m.arg(), 1.0 - m.norm())
}

/// `delta_x` from the second central moment about the circular mean;
/// `delta_p` from the discrete Fourier power spectrum.
pub fn spreads(lat: &Lattice, psi: &LatticeState) -> Result<Spreads> {
    psi.check_lattice(lat)?;
    let (mean_angle, circ_var) = circular_stats(psi);
    let wrapped = circ_var > WRAP_VARIANCE_THRESHOLD;
    let center = (mean_angle / TAU * lat.length).rem_euclid(lat.length);

    let mut var_x = 0.0;
    let mut mean_d = 0.0;
    for (j, a) in psi.amplitudes.iter().enumerate() {
        let d = lat.wrapped_distance(lat.position(j), center);
        let w = a.norm_sqr();
        var_x += w * d * d;
        mean_d += w * d;
    }
    // Subtract the residual first moment so delta_x is a true central
    // moment even when the circular mean sits off-grid.
    let delta_x = (var_x - mean_d * mean_d).max(0.0).sqrt();

    let hat = fourier::to_momentum(&psi.amplitudes);
    let k = lat.momentum_grid();
    let mut mean_p = 0.0;
    let mut mean_p2 = 0.0;
    for (v, &kj) in hat.iter().zip(&k) {
        let w = v.norm_sqr();
        mean_p += w * kj;
        mean_p2 += w * kj * kj;
    }
    let delta_p = (mean_p2 - mean_p * mean_p).max(0.0).sqrt();

    Ok(Spreads {
        delta_x,
        delta_p,
        wrapped,
    })
}

/// The product `delta_x * delta_p`, with the wraparound flag carried along.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyProduct {
    pub value: f64,
    pub wrapped: bool,
}

pub fn uncertainty_product(lat: &Lattice, psi: &LatticeState) -> Result<UncertaintyProduct> {
    let s = spreads(lat, psi)?;
    Ok(UncertaintyProduct {
        value: s.product(),
        wrapped: s.wrapped,
    })
}

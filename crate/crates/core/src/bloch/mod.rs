//! Qubit states on the Bloch sphere and operational distinguishability.
//!
//! A [`PureQubit`] stores the half-angle parameterization `(theta, phi)` of
//! the state vector `(cos theta, e^{i phi} sin theta)`, so the Bloch polar
//! angle is `2 theta` and `theta` ranges over `[0, pi/2]`. Every "Bloch
//! angle" in this crate is the great-circle angle between Bloch vectors,
//! never the half-angle parameter.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

mod discriminate;
mod grid;

pub use discriminate::brute_force_distinguish;
pub use grid::SphereGrid;

/// A pure qubit state in the half-angle parameterization.
///
/// Canonical ranges: `theta` in `[0, pi/2]`, `phi` in `[0, 2pi)`, with
/// `phi = 0` whenever `theta = 0` (the phase is a pole degeneracy there).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureQubit {
    theta: f64,
    phi: f64,
}

impl PureQubit {
    /// Builds a state from arbitrary finite angles, reducing them to the
    /// canonical ranges. Out-of-range `theta` is folded back into
    /// `[0, pi/2]` with the matching `phi` shift so the physical ray is
    /// unchanged; `phi` is reduced mod 2pi.
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { name: "theta" });
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite { name: "phi" });
        }
        // theta -> theta + pi flips the global sign only; fold to [0, pi),
        // then reflect the upper half with a pi phase shift.
        let folded = theta.rem_euclid(PI);
        let (theta, phi_shift) = if folded > FRAC_PI_2 {
            (PI - folded, PI)
        } else {
            (folded, 0.0)
        };
        // rem_euclid of a tiny negative can round up to the modulus itself.
        let mut phi = (phi + phi_shift).rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        if theta == 0.0 {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    /// Canonicalizes a two-component amplitude vector into a state.
    /// The input need not be normalized or phase-aligned; the ray is kept.
    pub fn from_amplitudes(a: Complex64, b: Complex64) -> Result<Self> {
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFinite { name: "amplitudes" });
        }
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::Invalid("cannot canonicalize a zero vector".into()));
        }
        let theta = b.norm().atan2(a.norm());
        let mut phi = (b.arg() - a.arg()).rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        if theta == 0.0 {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The canonical amplitude pair `(cos theta, e^{i phi} sin theta)`.
    pub fn amplitudes(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(self.theta.sin(), self.phi),
        ]
    }

    /// Bloch vector `(sin 2theta cos phi, sin 2theta sin phi, cos 2theta)`.
    pub fn bloch_vector(&self) -> BlochVector {
        let big = 2.0 * self.theta;
        let (s, c) = big.sin_cos();
        BlochVector {
            x: s * self.phi.cos(),
            y: s * self.phi.sin(),
            z: c,
        }
    }
}

/// Unit 3-vector on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Accepts a vector already unit-length within 1e-9 and renormalizes it.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() {
            return Err(Error::NonFinite {
                name: "bloch vector",
            });
        }
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitAxis { norm });
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Normalizes an arbitrary nonzero direction onto the sphere.
    pub fn from_direction(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() {
            return Err(Error::NonFinite { name: "direction" });
        }
        if norm < 1e-12 {
            return Err(Error::Invalid("direction vector is zero".into()));
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }

    /// Great-circle angle to another unit vector, in `[0, pi]`. The
    /// `atan2(|cross|, dot)` form resolves angles near both 0 and pi,
    /// where `acos(dot)` loses precision.
    pub fn angle_to(&self, other: &Self) -> f64 {
        let c = self.cross(other);
        let cross_norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        cross_norm.atan2(self.dot(other))
    }

    /// Chord-squared distance `|self - other|^2`.
    pub fn chord_sq(&self, other: &Self) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        dx * dx + dy * dy + dz * dz
    }

    /// Converts back to the half-angle parameterization. The polar angle
    /// comes from `atan2(hypot(x, y), z)`, which stays accurate at the
    /// poles where `acos(z)` does not.
    pub fn to_qubit(&self) -> PureQubit {
        let theta = 0.5 * self.x.hypot(self.y).atan2(self.z);
        let mut phi = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x).rem_euclid(TAU)
        };
        if phi >= TAU {
            phi = 0.0;
        }
        if theta == 0.0 {
            phi = 0.0;
        }
        PureQubit { theta, phi }
    }
}

/// Squared overlap `|<q1|q2>|^2`, in `[0, 1]`.
///
/// Evaluated in the cancellation-free difference form
/// `cos^2(t1 - t2) - 4 c1 c2 s1 s2 sin^2(dphi / 2)`, which is exactly 1 for
/// identical inputs and accurate for nearby states.
pub fn fidelity(q1: PureQubit, q2: PureQubit) -> f64 {
    let (s1, c1) = q1.theta.sin_cos();
    let (s2, c2) = q2.theta.sin_cos();
    let ct = (q1.theta - q2.theta).cos();
    let sp = ((q2.phi - q1.phi) / 2.0).sin();
    (ct * ct - 4.0 * c1 * c2 * s1 * s2 * sp * sp).clamp(0.0, 1.0)
}

/// Global-phase-minimized vector distance `sqrt(2 - 2 sqrt(F))`.
/// Equals `2 sin(delta/4)` for Bloch angle `delta`.
pub fn hilbert_distance(q1: PureQubit, q2: PureQubit) -> f64 {
    (2.0 - 2.0 * fidelity(q1, q2).sqrt()).max(0.0).sqrt()
}

/// Trace distance `sqrt(1 - F)`; equals `sin(delta/2)` for Bloch angle
/// `delta` and half the Euclidean Bloch-vector distance.
pub fn trace_distance(q1: PureQubit, q2: PureQubit) -> f64 {
    (1.0 - fidelity(q1, q2)).max(0.0).sqrt()
}

/// Optimal single-shot discrimination probability at equal priors:
/// `(1 + trace_distance)/2`.
pub fn helstrom_success(q1: PureQubit, q2: PureQubit) -> f64 {
    0.5 * (1.0 + trace_distance(q1, q2))
}

/// Great-circle (Bloch) angle between two states.
pub fn bloch_angle(q1: PureQubit, q2: PureQubit) -> f64 {
    q1.bloch_vector().angle_to(&q2.bloch_vector())
}

/// Rigid rotation of the state's Bloch vector about `axis` by `angle`
/// (Rodrigues formula). The axis must be unit-length within 1e-9.
pub fn rotate(q: PureQubit, axis: &BlochVector, angle: f64) -> Result<PureQubit> {
    let norm = (axis.x * axis.x + axis.y * axis.y + axis.z * axis.z).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitAxis { norm });
    }
    let k = [axis.x / norm, axis.y / norm, axis.z / norm];
    let v = q.bloch_vector();
    let v = [v.x, v.y, v.z];
    let (s, c) = angle.sin_cos();
    let kxv = [
        k[1] * v[2] - k[2] * v[1],
        k[2] * v[0] - k[0] * v[2],
        k[0] * v[1] - k[1] * v[0],
    ];
    let kdv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    let mut out = [0.0_f64; 3];
    for i in 0..3 {
        out[i] = v[i] * c + kxv[i] * s + k[i] * kdv * (1.0 - c);
    }
    let n = (out[0] * out[0] + out[1] * out[1] + out[2] * out[2]).sqrt();
    Ok(BlochVector {
        x: out[0] / n,
        y: out[1] / n,
        z: out[2] / n,
    }
    .to_qubit())
}

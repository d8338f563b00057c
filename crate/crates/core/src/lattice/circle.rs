//! Angle-commutator check for a free particle on a discrete circle.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::{fourier, Lattice, LatticeState, Topology};

/// Free particle on a circle: Hamiltonian `p^2 / (2 m r^2)` in the angular
/// momentum `p`, so a reference momentum fixes the classical angular
/// velocity `omega = p / (m r^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCircle {
    mass_m: f64,
    radius_r: f64,
    omega: f64,
}

impl ClassicalCircle {
    pub fn new(mass_m: f64, radius_r: f64, reference_p_phi: f64) -> Result<Self> {
        for (name, v) in [("mass_m", mass_m), ("radius_r", radius_r)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    admissible: "> 0".into(),
                });
            }
        }
        if !reference_p_phi.is_finite() {
            return Err(Error::NonFinite {
                name: "reference_p_phi",
            });
        }
        Ok(Self {
            mass_m,
            radius_r,
            omega: reference_p_phi / (mass_m * radius_r * radius_r),
        })
    }

    pub fn mass_m(&self) -> f64 {
        self.mass_m
    }

    pub fn radius_r(&self) -> f64 {
        self.radius_r
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Circular variance above which the angle operator's branch cut cannot be
/// kept clear of the packet.
pub const CIRCLE_VARIANCE_THRESHOLD: f64 = 0.1;

/// Expectation `<psi| [Phi(0), Phi(t)] |psi>` for the free circle.
///
/// `Phi(0)` multiplies by the angle, with the branch cut placed antipodal
/// to the packet's circular mean; `Phi(t) = U^dagger Phi(0) U` with
/// `U = exp(-i t p^2 / (2 m r^2))` diagonal in the angular-momentum basis.
/// For a tight interior packet the result approaches `i t / (m r^2)`.
///
/// The lattice coordinate is mapped affinely onto angles `2 pi j / N`, so
/// any circle-topology lattice works; packets built on a `length = 2 pi`
/// lattice keep their width in angle units.
pub fn circle_commutator_check(
    circ: &ClassicalCircle,
    lat: &Lattice,
    t: f64,
    psi: &LatticeState,
) -> Result<Complex64> {
    if lat.topology() != Topology::Circle {
        return Err(Error::Invalid(
            "circle_commutator_check requires a circle-topology lattice".into(),
        ));
    }
    if psi.len() != lat.n_sites() {
        return Err(Error::DimensionMismatch {
            left: psi.len(),
            right: lat.n_sites(),
        });
    }
    if !t.is_finite() {
        return Err(Error::NonFinite { name: "t" });
    }

    let n = lat.n_sites();
    // Packet localization in angle.
    let mut m = Complex64::new(0.0, 0.0);
    for (j, a) in psi.amplitudes().iter().enumerate() {
        m += a.norm_sqr() * Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
    }
    let circ_var = 1.0 - m.norm();
    if circ_var > CIRCLE_VARIANCE_THRESHOLD {
        return Err(Error::Delocalized {
            circular_variance: circ_var,
            threshold: CIRCLE_VARIANCE_THRESHOLD,
        });
    }
    let mean_angle = m.arg();

    // Angle values on the branch centered at the packet.
    let angle_values: Vec<f64> = (0..n)
        .map(|j| {
            let raw = TAU * j as f64 / n as f64 - mean_angle;
            let mut wrapped = raw.rem_euclid(TAU);
            if wrapped >= PI {
                wrapped -= TAU;
            }
            mean_angle + wrapped
        })
        .collect();

    let apply_angle = |v: &[Complex64]| -> Vec<Complex64> {
        v.iter()
            .zip(&angle_values)
            .map(|(a, &phi)| a * phi)
            .collect()
    };
    let ell = fourier::angular_momentum_values(n);
    let scale = 1.0 / (2.0 * circ.mass_m * circ.radius_r * circ.radius_r);
    let apply_u = |v: &[Complex64], sign: f64| -> Vec<Complex64> {
        if t == 0.0 {
            return v.to_vec();
        }
        let mut hat = fourier::to_momentum(v);
        for (h, &l) in hat.iter_mut().zip(&ell) {
            *h *= Complex64::from_polar(1.0, -sign * t * l * l * scale);
        }
        fourier::to_position(&hat)
    };

    // T1 = <psi| Phi0 U^dag Phi0 U |psi>, T2 = <psi| U^dag Phi0 U Phi0 |psi>.
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let u_psi = apply_u(psi.amplitudes(), 1.0);
    let t1 = {
        let w = apply_u(&apply_angle(&u_psi), -1.0);
        inner(psi.amplitudes(), &apply_angle(&w))
    };
    let t2 = {
        let b = apply_angle(psi.amplitudes());
        let w = apply_u(&apply_angle(&apply_u(&b, 1.0)), -1.0);
        inner(psi.amplitudes(), &w)
    };
    Ok(t1 - t2)
}

/// Ordinary least squares `y = a + b x`; returns `(slope, r_squared)`.
/// Used to verify linear-in-time scaling of the commutator.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let f = intercept + slope * x;
            (y - f) * (y - f)
        })
        .sum();
    (slope, 1.0 - ss_res / ss_tot)
}

//! Measurement-device constraints in Planck units.
//!
//! A device of mass `m` and size `r` measuring an angle over a duration `t`
//! is limited three ways: the quantum uncertainty floor
//! `sqrt(t / (2 m r^2))` on the angle, gravitational collapse unless
//! `r > m`, and causality `t >= r`. Minimizing the floor over the feasible
//! region gives the size-limited minimal angle `1 / (sqrt(2) r)`.

use crate::constants;
use crate::error::{Error, Result};

/// Device parameters in Planck units (all strictly positive).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeviceConfig {
    mass_m: f64,
    size_r: f64,
    duration_t: f64,
}

impl DeviceConfig {
    pub fn new(mass_m: f64, size_r: f64, duration_t: f64) -> Result<Self> {
        for (name, v) in [
            ("mass_m", mass_m),
            ("size_r", size_r),
            ("duration_t", duration_t),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name: "device parameter",
                });
            }
            if v <= 0.0 {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    admissible: "> 0".into(),
                });
            }
        }
        Ok(Self {
            mass_m,
            size_r,
            duration_t,
        })
    }

    pub fn mass_m(&self) -> f64 {
        self.mass_m
    }

    pub fn size_r(&self) -> f64 {
        self.size_r
    }

    pub fn duration_t(&self) -> f64 {
        self.duration_t
    }
}

/// Order-one coefficients in the feasibility constraints. Both default to
/// exactly 1: collapse requires `r > hoop_coefficient * m`, causality
/// requires `t >= causality_coefficient * r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeasibilityPolicy {
    pub hoop_coefficient: f64,
    pub causality_coefficient: f64,
}

impl Default for FeasibilityPolicy {
    fn default() -> Self {
        Self {
            hoop_coefficient: 1.0,
            causality_coefficient: 1.0,
        }
    }
}

impl FeasibilityPolicy {
    pub fn new(hoop_coefficient: f64, causality_coefficient: f64) -> Result<Self> {
        for (name, v) in [
            ("hoop_coefficient", hoop_coefficient),
            ("causality_coefficient", causality_coefficient),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    admissible: "> 0".into(),
                });
            }
        }
        Ok(Self {
            hoop_coefficient,
            causality_coefficient,
        })
    }
}

/// Outcome of the two feasibility checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    /// `r > m` (no gravitational collapse), strict.
    pub hoop_ok: bool,
    /// `t >= r`, non-strict.
    pub causal_ok: bool,
    pub feasible: bool,
}

/// Floor on the larger of the two angle uncertainties:
/// `sqrt(t / (2 m r^2))`.
pub fn uncertainty_floor(cfg: &DeviceConfig) -> f64 {
    (cfg.duration_t / (2.0 * cfg.mass_m * cfg.size_r * cfg.size_r)).sqrt()
}

pub fn check_feasible(cfg: &DeviceConfig) -> FeasibilityReport {
    check_feasible_with(cfg, &FeasibilityPolicy::default())
}

pub fn check_feasible_with(cfg: &DeviceConfig, policy: &FeasibilityPolicy) -> FeasibilityReport {
    let hoop_ok = cfg.size_r > policy.hoop_coefficient * cfg.mass_m;
    let causal_ok = cfg.duration_t >= policy.causality_coefficient * cfg.size_r;
    FeasibilityReport {
        hoop_ok,
        causal_ok,
        feasible: hoop_ok && causal_ok,
    }
}

/// A minimal-angle value together with the device parameters attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleBound {
    pub delta_phi: f64,
    pub argmin_m: f64,
    pub argmin_t: f64,
}

/// Analytic minimal angle for a device of size `r`: `1 / (sqrt(2) r)`,
/// attained on the feasibility boundary `m = r`, `t = r`.
pub fn min_angle(r: f64) -> Result<AngleBound> {
    if !r.is_finite() {
        return Err(Error::NonFinite { name: "r" });
    }
    if r <= 0.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            admissible: "> 0".into(),
        });
    }
    Ok(AngleBound {
        delta_phi: 1.0 / (2.0_f64.sqrt() * r),
        argmin_m: r,
        argmin_t: r,
    })
}

/// Mass grid spans two decades below its upper endpoint, giving the scan a
/// fixed relative resolution independent of `r`.
const SCAN_MASS_SPAN: f64 = 100.0;

/// Brute-force check on [`min_angle`]: minimizes [`uncertainty_floor`] over
/// feasible `(m, t)` on log-spaced grids with `m` in
/// `[m_max_factor * r / 100, m_max_factor * r]` and `t` in
/// `[r, t_max_factor * r]`. The grid minimum is always at or above the
/// analytic bound and converges to it as the grids refine.
pub fn min_angle_scan(
    r: f64,
    m_grid: usize,
    t_grid: usize,
    m_max_factor: f64,
    t_max_factor: f64,
) -> Result<AngleBound> {
    min_angle_scan_with(
        r,
        m_grid,
        t_grid,
        m_max_factor,
        t_max_factor,
        &FeasibilityPolicy::default(),
    )
}

pub fn min_angle_scan_with(
    r: f64,
    m_grid: usize,
    t_grid: usize,
    m_max_factor: f64,
    t_max_factor: f64,
    policy: &FeasibilityPolicy,
) -> Result<AngleBound> {
    min_angle(r)?; // validates r
    for (name, g) in [("m_grid", m_grid), ("t_grid", t_grid)] {
        if g < 16 {
            return Err(Error::OutOfRange {
                name,
                value: g as f64,
                admissible: ">= 16".into(),
            });
        }
    }
    if !(m_max_factor.is_finite() && m_max_factor > 0.0) {
        return Err(Error::OutOfRange {
            name: "m_max_factor",
            value: m_max_factor,
            admissible: "> 0".into(),
        });
    }
    if !(t_max_factor.is_finite() && t_max_factor >= 1.0) {
        return Err(Error::OutOfRange {
            name: "t_max_factor",
            value: t_max_factor,
            admissible: ">= 1 (the causal window starts at t = r)".into(),
        });
    }

    let m_values = logspace(m_max_factor * r / SCAN_MASS_SPAN, m_max_factor * r, m_grid);
    let t_values = logspace(r, t_max_factor * r, t_grid);

    let mut best: Option<AngleBound> = None;
    for &m in &m_values {
        for &t in &t_values {
            let cfg = DeviceConfig::new(m, r, t)?;
            if !check_feasible_with(&cfg, policy).feasible {
                continue;
            }
            let floor = uncertainty_floor(&cfg);
            let better = match &best {
                None => true,
                // Tie-break: smallest m, then smallest t, so the argmin is
                // independent of evaluation order.
                Some(b) => {
                    floor < b.delta_phi
                        || (floor == b.delta_phi
                            && (m < b.argmin_m || (m == b.argmin_m && t < b.argmin_t)))
                }
            };
            if better {
                best = Some(AngleBound {
                    delta_phi: floor,
                    argmin_m: m,
                    argmin_t: t,
                });
            }
        }
    }
    best.ok_or(Error::EmptyFeasibleSet)
}

fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 || a == b {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i == n - 1 {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Classical angular position `omega t + phi0`, reduced mod 2pi.
pub fn classical_angle(omega: f64, t: f64, phi0: f64) -> f64 {
    debug_assert!(omega.is_finite() && t.is_finite() && phi0.is_finite());
    let angle = (omega * t + phi0).rem_euclid(std::f64::consts::TAU);
    if angle >= std::f64::consts::TAU {
        0.0
    } else {
        angle
    }
}

/// Physical dimension tags for SI conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitKind {
    Length,
    Time,
    Mass,
    Angle,
}

impl std::str::FromStr for UnitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Self::Length),
            "time" => Ok(Self::Time),
            "mass" => Ok(Self::Mass),
            "angle" => Ok(Self::Angle),
            other => Err(Error::Invalid(format!(
                "unknown unit kind {other:?}; expected one of: length, time, mass, angle"
            ))),
        }
    }
}

fn planck_unit_in_si(kind: UnitKind) -> f64 {
    let table = constants::table();
    match kind {
        UnitKind::Length => table.planck_length_m,
        UnitKind::Time => table.planck_time_s(),
        UnitKind::Mass => table.planck_mass_kg(),
        UnitKind::Angle => 1.0,
    }
}

/// Converts a Planck-unit value to SI. Angles pass through unchanged.
pub fn to_si(value: f64, kind: UnitKind) -> f64 {
    debug_assert!(value.is_finite());
    value * planck_unit_in_si(kind)
}

/// Inverse of [`to_si`].
pub fn from_si(value: f64, kind: UnitKind) -> f64 {
    debug_assert!(value.is_finite());
    value / planck_unit_in_si(kind)
}

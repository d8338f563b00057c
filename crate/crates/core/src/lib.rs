//! Numerical laboratory for device-limited angular measurements.
//!
//! The crate has four subject areas:
//!
//! - [`bloch`]: qubit states on the Bloch sphere, finite-resolution grids,
//!   exact and grid-snapped rotations, and single-shot distinguishability
//!   (Helstrom bound plus a brute-force measurement scan).
//! - [`device`]: the measurement-device constraint engine in Planck units:
//!   angular uncertainty floor, collapse and causality feasibility, the
//!   analytic minimal angle and its grid-scan counterpart, SI conversion.
//! - [`lattice`]: quantum mechanics on a finite 1-D lattice or circle:
//!   wavepackets, spectral free evolution, uncertainty products, operator
//!   commutators, and the angle-commutator check on the circle.
//! - [`holography`]: composite-state uncertainty accumulation, Monte Carlo
//!   verification of the n-qubit scaling law, and the derived capacity
//!   bound.
//!
//! All operations are pure functions of their inputs; Monte Carlo entry
//! points take explicit seeds and derive per-trial generators so results
//! are independent of scheduling.

#![forbid(unsafe_code)]

pub mod bloch;
pub mod constants;
pub mod device;
pub mod error;
pub mod holography;
pub mod lattice;

pub use error::{Error, Result};

//! Brute-force measurement search, the independent check on the Helstrom
//! formula.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::PureQubit;

/// Maximizes the equal-prior success probability of discriminating `q1`
/// from `q2` over projective measurements whose axis ranges over a
/// `mesh x mesh` grid of Bloch directions (poles included).
///
/// Projective two-outcome measurements are optimal for two pure states at
/// equal priors, so this converges to the Helstrom value from below as the
/// mesh refines.
pub fn brute_force_distinguish(q1: PureQubit, q2: PureQubit, mesh: usize) -> Result<f64> {
    if mesh < 8 {
        return Err(Error::OutOfRange {
            name: "mesh",
            value: mesh as f64,
            admissible: ">= 8".into(),
        });
    }
    let b1 = q1.bloch_vector();
    let b2 = q2.bloch_vector();
    let diff = [b1.x - b2.x, b1.y - b2.y, b1.z - b2.z];

    // For axis n the better of the two outcome assignments succeeds with
    // probability 1/2 + |n . (b1 - b2)| / 4.
    let mut best = 0.5;
    for i in 0..mesh {
        let theta = PI * i as f64 / (mesh - 1) as f64;
        let (st, ct) = theta.sin_cos();
        for j in 0..mesh {
            let phi = TAU * j as f64 / mesh as f64;
            let n = [st * phi.cos(), st * phi.sin(), ct];
            let proj = n[0] * diff[0] + n[1] * diff[1] + n[2] * diff[2];
            let s = 0.5 + proj.abs() / 4.0;
            if s > best {
                best = s;
            }
        }
    }
    Ok(best)
}

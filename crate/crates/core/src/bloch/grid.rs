//! Finite-resolution discretizations of the Bloch sphere.
//!
//! Grids are golden-angle (Fibonacci) point sets with both poles appended,
//! sized so the covering radius stays below the requested resolution. The
//! construction is fully deterministic.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::{rotate, BlochVector, PureQubit};

/// Empirical covering coefficient of the golden-angle point set with poles
/// appended: `n = ceil(C / eps^2)` points keep the sampled covering radius
/// below `0.82 eps` across the supported range (see the grid tests). The
/// value includes the margin over the measured worst case.
const COVERAGE_CONSTANT: f64 = 11.0;

/// An `epsilon`-resolution grid of Bloch directions.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    epsilon: f64,
    mesh_diameter: f64,
    points: Vec<BlochVector>,
    /// Point indices sorted by z, for windowed nearest-neighbor search.
    z_order: Vec<u32>,
}

impl SphereGrid {
    /// Builds a grid whose covering radius (mesh diameter) is at most
    /// `epsilon`. Point count scales as `Theta(1/eps^2)`.
    pub fn build(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::NonFinite { name: "epsilon" });
        }
        if !(epsilon > 0.0 && epsilon <= PI) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: epsilon,
                admissible: "(0, pi]".into(),
            });
        }
        let count = (COVERAGE_CONSTANT / (epsilon * epsilon)).ceil().max(1.0) as usize;
        let mut points = fibonacci_points(count);
        points.push(BlochVector {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        });
        points.push(BlochVector {
            x: 0.0,
            y: 0.0,
            z: -1.0,
        });

        let mut z_order: Vec<u32> = (0..points.len() as u32).collect();
        z_order.sort_by(|&a, &b| {
            points[a as usize]
                .z
                .total_cmp(&points[b as usize].z)
                .then(a.cmp(&b))
        });

        Ok(Self {
            epsilon,
            mesh_diameter: epsilon,
            points,
            z_order,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Certified upper bound on the distance (Bloch angle) from any sphere
    /// point to its nearest grid point.
    pub fn mesh_diameter(&self) -> f64 {
        self.mesh_diameter
    }

    pub fn points(&self) -> &[BlochVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the grid point nearest to `v` (Euclidean, ties broken by
    /// lowest index).
    pub fn nearest_index(&self, v: &BlochVector) -> usize {
        // Any point further than the current best chord in |z| alone cannot
        // win, so scan outward from the z-insertion point and stop early.
        let start = self
            .z_order
            .partition_point(|&i| self.points[i as usize].z < v.z);
        let mut best_d2 = f64::INFINITY;
        let mut best_idx = usize::MAX;
        let mut up = start;
        let mut down = start;
        loop {
            let mut advanced = false;
            if up < self.z_order.len() {
                let i = self.z_order[up];
                let p = &self.points[i as usize];
                let dz = p.z - v.z;
                if dz * dz <= best_d2 {
                    let d2 = p.chord_sq(v);
                    if d2 < best_d2 || (d2 == best_d2 && (i as usize) < best_idx) {
                        best_d2 = d2;
                        best_idx = i as usize;
                    }
                    up += 1;
                    advanced = true;
                }
            }
            if down > 0 {
                let i = self.z_order[down - 1];
                let p = &self.points[i as usize];
                let dz = p.z - v.z;
                if dz * dz <= best_d2 {
                    let d2 = p.chord_sq(v);
                    if d2 < best_d2 || (d2 == best_d2 && (i as usize) < best_idx) {
                        best_d2 = d2;
                        best_idx = i as usize;
                    }
                    down -= 1;
                    advanced = true;
                }
            }
            if !advanced {
                break;
            }
        }
        best_idx
    }

    /// Nearest grid point to `q`, as a state. Idempotent, and the Bloch
    /// displacement never exceeds [`Self::mesh_diameter`].
    pub fn snap(&self, q: PureQubit) -> PureQubit {
        let v = q.bloch_vector();
        self.points[self.nearest_index(&v)].to_qubit()
    }

    /// Exact rotation followed by a snap back onto the grid. When the exact
    /// displacement is below the local grid spacing the output equals the
    /// input: the operational minimal rotation.
    pub fn snapped_rotate(
        &self,
        q: PureQubit,
        axis: &BlochVector,
        angle: f64,
    ) -> Result<PureQubit> {
        Ok(self.snap(rotate(q, axis, angle)?))
    }
}

fn fibonacci_points(n: usize) -> Vec<BlochVector> {
    // Golden angle increment with the half-offset z ladder; exact poles are
    // appended by the caller.
    let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = (i as f64 * golden_angle).rem_euclid(TAU);
            BlochVector {
                x: r * phi.cos(),
                y: r * phi.sin(),
                z,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::bloch::bloch_angle;

    fn random_direction(rng: &mut impl Rng) -> BlochVector {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        BlochVector {
            x: r * phi.cos(),
            y: r * phi.sin(),
            z,
        }
    }

    /// Sampled covering radius: max over random sphere points of the
    /// distance to the nearest grid point.
    fn sampled_mesh(grid: &SphereGrid, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        for _ in 0..samples {
            let v = random_direction(&mut rng);
            let p = &grid.points()[grid.nearest_index(&v)];
            worst = worst.max(v.angle_to(p));
        }
        worst
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(SphereGrid::build(0.0).is_err());
        assert!(SphereGrid::build(-1.0).is_err());
        assert!(SphereGrid::build(PI + 0.1).is_err());
        assert!(SphereGrid::build(f64::NAN).is_err());
    }

    #[test]
    fn coarsest_grid_has_poles_and_covers() {
        let grid = SphereGrid::build(PI).unwrap();
        assert!(grid.len() >= 2);
        assert!(sampled_mesh(&grid, 20_000, 7) <= PI);
    }

    #[test]
    fn point_count_matches_area_scaling() {
        let grid = SphereGrid::build(0.1).unwrap();
        let density = 4.0 * PI / (0.1 * 0.1);
        let n = grid.len() as f64;
        assert!(
            n >= 0.5 * density && n <= 4.0 * density,
            "count {n} outside the area-count window"
        );
    }

    #[test]
    fn sampled_mesh_within_epsilon() {
        for (eps, samples, seed) in [(1.0, 50_000, 1), (0.3, 100_000, 2), (0.1, 100_000, 3)] {
            let grid = SphereGrid::build(eps).unwrap();
            let mesh = sampled_mesh(&grid, samples, seed);
            assert!(
                mesh <= eps,
                "eps = {eps}: sampled covering radius {mesh} exceeds epsilon"
            );
            assert!(mesh <= grid.mesh_diameter());
        }
    }

    #[test]
    fn sampled_mesh_within_epsilon_fine() {
        let grid = SphereGrid::build(0.01).unwrap();
        let mesh = sampled_mesh(&grid, 100_000, 4);
        assert!(mesh <= 0.01, "sampled covering radius {mesh} exceeds 0.01");
    }

    #[test]
    fn all_points_unit_norm() {
        let grid = SphereGrid::build(0.2).unwrap();
        for p in grid.points() {
            let n = (p.x * p.x + p.y * p.y + p.z * p.z).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nearest_index_agrees_with_exhaustive_search() {
        let grid = SphereGrid::build(0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let v = random_direction(&mut rng);
            let fast = grid.nearest_index(&v);
            let mut slow = 0;
            let mut best = f64::INFINITY;
            for (i, p) in grid.points().iter().enumerate() {
                let d2 = p.chord_sq(&v);
                if d2 < best {
                    best = d2;
                    slow = i;
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn snap_is_idempotent_and_bounded() {
        let grid = SphereGrid::build(0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let q =
                PureQubit::from_angles(rng.random_range(0.0..PI / 2.0), rng.random_range(0.0..TAU))
                    .unwrap();
            let snapped = grid.snap(q);
            assert!(bloch_angle(q, snapped) <= grid.mesh_diameter());
            assert_eq!(grid.snap(snapped), snapped);
        }
    }

    #[test]
    fn north_pole_is_a_fixed_point() {
        // The poles are appended explicitly, so the north pole snaps to
        // itself exactly.
        let grid = SphereGrid::build(0.1).unwrap();
        let north = PureQubit::from_angles(0.0, 0.0).unwrap();
        let snapped = grid.snap(north);
        assert_eq!(snapped.theta(), 0.0);
        assert_eq!(snapped.phi(), 0.0);
    }

    #[test]
    fn sub_resolution_rotation_returns_the_input() {
        let grid = SphereGrid::build(0.1).unwrap();
        let q = grid.snap(PureQubit::from_angles(0.6, 1.0).unwrap());
        // An axis through the state's Bloch vector rotated 90 degrees away
        // displaces the state by exactly the rotation angle.
        let v = q.bloch_vector();
        let axis = BlochVector::from_direction(-v.y, v.x, 0.0).unwrap();
        let out = grid.snapped_rotate(q, &axis, 0.001).unwrap();
        assert_eq!(out, q);
    }

    #[test]
    fn repeated_snapped_rotations_stay_within_k_mesh() {
        let grid = SphereGrid::build(0.2).unwrap();
        let axis = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let k = 12;
        let angle = 0.31;
        let mut snapped = grid.snap(PureQubit::from_angles(0.5, 0.2).unwrap());
        let mut exact = snapped;
        for _ in 0..k {
            snapped = grid.snapped_rotate(snapped, &axis, angle).unwrap();
            exact = rotate(exact, &axis, angle).unwrap();
        }
        let dev = bloch_angle(snapped, exact);
        assert!(
            dev <= k as f64 * grid.mesh_diameter() + 1e-9,
            "cumulative deviation {dev} exceeds k * mesh"
        );
    }
}

//! Randomized invariant sweeps and property tests across the crate.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minangle::bloch::{
    bloch_angle, brute_force_distinguish, fidelity, helstrom_success, hilbert_distance, rotate,
    trace_distance, BlochVector, PureQubit, SphereGrid,
};
use minangle::device::{
    check_feasible, min_angle, min_angle_scan, uncertainty_floor, DeviceConfig,
};
use minangle::holography::{
    composite_distance_sq, composite_distance_sq_from_overlaps, mc_expected_distance,
    perturb_with_overlap, random_qubit, PerturbationModel,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_state(rng: &mut impl Rng) -> PureQubit {
    random_qubit(rng)
}

fn random_axis(rng: &mut impl Rng) -> BlochVector {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(r * phi.cos(), r * phi.sin(), z).unwrap()
}

#[test]
fn metric_axioms_on_random_triples() {
    let mut rng = rng(101);
    for _ in 0..10_000 {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let c = random_state(&mut rng);
        for dist in [trace_distance, hilbert_distance] {
            let ab = dist(a, b);
            let ba = dist(b, a);
            assert!((ab - ba).abs() < 1e-12, "asymmetric: {ab} vs {ba}");
            assert!(ab >= 0.0);
            assert!(
                dist(a, b) + dist(b, c) >= dist(a, c) - 1e-9,
                "triangle violated"
            );
        }
        // Zero iff fidelity 1.
        assert!(trace_distance(a, a) == 0.0 && hilbert_distance(a, a) == 0.0);
        if fidelity(a, b) < 1.0 - 1e-12 {
            assert!(trace_distance(a, b) > 0.0);
            assert!(hilbert_distance(a, b) > 0.0);
        }
    }
}

#[test]
fn helstrom_is_bounded_and_tight() {
    let mut rng = rng(102);
    for _ in 0..5_000 {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let h = helstrom_success(a, b);
        assert!((0.5..=1.0).contains(&h));
    }
    // 0.5 only for identical states, 1 only for orthogonal ones.
    let a = PureQubit::from_angles(0.4, 2.0).unwrap();
    assert_eq!(helstrom_success(a, a), 0.5);
    let orth = PureQubit::from_angles(0.4 + FRAC_PI_2, 2.0).unwrap();
    assert!((helstrom_success(a, orth) - 1.0).abs() < 1e-12);
    let nearby = PureQubit::from_angles(0.41, 2.0).unwrap();
    let h = helstrom_success(a, nearby);
    assert!(h > 0.5 && h < 1.0);
}

#[test]
fn measurement_scan_brackets_helstrom() {
    let mut rng = rng(103);
    for _ in 0..40 {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let scan = brute_force_distinguish(a, b, 256).unwrap();
        let exact = helstrom_success(a, b);
        assert!(scan <= exact + 1e-9, "scan {scan} above Helstrom {exact}");
        assert!(scan >= exact - 1e-3, "scan {scan} too far below {exact}");
    }
}

#[test]
fn rotation_preserves_pairwise_fidelity() {
    let mut rng = rng(104);
    for _ in 0..1_000 {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let axis = random_axis(&mut rng);
        let angle: f64 = rng.random_range(-10.0..10.0);
        let fa = fidelity(a, b);
        let fb = fidelity(
            rotate(a, &axis, angle).unwrap(),
            rotate(b, &axis, angle).unwrap(),
        );
        assert!(
            (fa - fb).abs() < 1e-12,
            "fidelity drift {}",
            (fa - fb).abs()
        );
    }
}

#[test]
fn indistinguishability_bound_over_random_pairs() {
    // Operational form: pairs closer than eps in Hilbert distance can never
    // beat the closed-form success ceiling.
    let mut rng = rng(105);
    for _ in 0..5_000 {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let d = hilbert_distance(a, b);
        let eps = d + rng.random_range(1e-6..0.3);
        let ceiling = 0.5 * (1.0 + eps * (1.0 - eps * eps / 4.0).sqrt());
        if eps <= 2.0_f64.sqrt() {
            assert!(
                helstrom_success(a, b) < ceiling + 1e-12,
                "distance {d}, eps {eps}"
            );
        }
    }
}

#[test]
fn uncertainty_floor_never_undercuts_the_bound() {
    // 1e5 random feasible devices per radius.
    for (ri, r) in [1.0, 10.0, 100.0].into_iter().enumerate() {
        let mut rng = rng(200 + ri as u64);
        let analytic = min_angle(r).unwrap().delta_phi;
        for _ in 0..100_000 {
            let m = r * rng.random_range(1e-3..1.0_f64);
            let t = r * rng.random_range(1.0..1e3_f64);
            let cfg = DeviceConfig::new(m, r, t).unwrap();
            assert!(check_feasible(&cfg).feasible);
            assert!(
                uncertainty_floor(&cfg) >= analytic - 1e-12,
                "floor below bound at m={m}, t={t}"
            );
        }
    }
}

#[test]
fn scan_gap_halves_under_refinement() {
    for r in [1.0, 10.0, 100.0] {
        let exact = min_angle(r).unwrap().delta_phi;
        let coarse = min_angle_scan(r, 256, 256, 10.0, 10.0).unwrap().delta_phi - exact;
        let fine = min_angle_scan(r, 512, 512, 10.0, 10.0).unwrap().delta_phi - exact;
        assert!(coarse > 0.0);
        assert!(
            fine <= 0.5 * coarse + 1e-15,
            "r = {r}: gap {coarse} -> {fine} did not halve"
        );
    }
}

/// Materializes the full tensor product of per-qubit amplitude pairs.
fn tensor_product(states: &[[Complex64; 2]]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for amp in states {
        let mut next = Vec::with_capacity(out.len() * 2);
        for v in &out {
            next.push(v * amp[0]);
            next.push(v * amp[1]);
        }
        out = next;
    }
    out
}

#[test]
fn composite_distance_matches_materialized_tensor_product() {
    // Canonical route: bare PureQubit lists against the explicit 2^n vector.
    let mut rng = rng(106);
    for n in [1usize, 2, 5, 8, 12] {
        let qs: Vec<PureQubit> = (0..n).map(|_| random_state(&mut rng)).collect();
        let qs2: Vec<PureQubit> = (0..n).map(|_| random_state(&mut rng)).collect();
        let fast = composite_distance_sq(&qs, &qs2).unwrap();
        let va = tensor_product(&qs.iter().map(|q| q.amplitudes()).collect::<Vec<_>>());
        let vb = tensor_product(&qs2.iter().map(|q| q.amplitudes()).collect::<Vec<_>>());
        let direct: f64 = va.iter().zip(&vb).map(|(a, b)| (a - b).norm_sqr()).sum();
        assert!(
            (fast - direct).abs() < 1e-10,
            "n = {n}: overlap route {fast} vs materialized {direct}"
        );
    }
}

#[test]
fn gauged_composite_distance_matches_materialized_tensor_product() {
    // Phase-aligned perturbations: the gauged overlaps must reproduce the
    // materialized distance once each perturbed vector is re-phased to make
    // its overlap real.
    let model = PerturbationModel::fixed(0.2).unwrap();
    let mut rng = rng(107);
    for n in [1usize, 3, 7, 12] {
        let mut gauged_overlaps = Vec::with_capacity(n);
        let mut base = Vec::with_capacity(n);
        let mut pert = Vec::with_capacity(n);
        for _ in 0..n {
            let q = random_state(&mut rng);
            let p = perturb_with_overlap(q, &model, &mut rng);
            let [a0, a1] = q.amplitudes();
            let [b0, b1] = p.state.amplitudes();
            let raw = a0.conj() * b0 + a1.conj() * b1;
            // Re-phase the perturbed vector so its overlap is real >= 0.
            let phase = raw.conj() / raw.norm();
            base.push([a0, a1]);
            pert.push([phase * b0, phase * b1]);
            gauged_overlaps.push(p.overlap);
        }
        let fast = composite_distance_sq_from_overlaps(gauged_overlaps.iter().copied());
        let va = tensor_product(&base);
        let vb = tensor_product(&pert);
        let direct: f64 = va.iter().zip(&vb).map(|(a, b)| (a - b).norm_sqr()).sum();
        assert!(
            (fast - direct).abs() < 1e-10,
            "n = {n}: gauged route {fast} vs materialized {direct}"
        );
    }
}

#[test]
fn interior_packets_are_canonical_across_the_window() {
    // Random Gaussians with sigma in [8 spacing, L/16], centered at least
    // 4 sigma from the coordinate seam, must reproduce <[X, P]> = i to 1%.
    use minangle::lattice::{build_xp, commutator_expectation, gaussian_packet, Lattice, Topology};
    let lat = Lattice::new(512, 100.0, Topology::LinePeriodic).unwrap();
    let (x, p) = build_xp(&lat);
    let mut rng = rng(108);
    for _ in 0..50 {
        let sigma = rng.random_range(8.0 * lat.spacing()..100.0 / 16.0);
        let x0 = rng.random_range(4.0 * sigma..100.0 - 4.0 * sigma);
        let psi = gaussian_packet(&lat, x0, 0.0, sigma).unwrap();
        let c = commutator_expectation(&x, &p, &psi).unwrap();
        let dev = (c - num_complex::Complex64::i()).norm();
        assert!(dev < 0.01, "x0 = {x0}, sigma = {sigma}: deviation {dev}");
    }
}

#[test]
fn composite_mean_is_monotone_in_n_and_saturates() {
    let model = PerturbationModel::fixed(0.05).unwrap();
    let means: Vec<f64> = [1_u64, 10, 100, 1000, 10_000]
        .iter()
        .map(|&n| {
            mc_expected_distance(n, &model, 300, 31)
                .unwrap()
                .mean_dist_sq
        })
        .collect();
    for pair in means.windows(2) {
        assert!(pair[1] >= pair[0] - 1e-3, "mean decreased with n: {pair:?}");
    }
    // n eps^2 = 25 for the last point: deep saturation.
    assert!((means[4] - 2.0).abs() < 0.05);
}

proptest! {
    #[test]
    fn canonicalization_lands_in_range(theta in -20.0..20.0f64, phi in -20.0..20.0f64) {
        let q = PureQubit::from_angles(theta, phi).unwrap();
        prop_assert!((0.0..=FRAC_PI_2).contains(&q.theta()));
        prop_assert!((0.0..TAU).contains(&q.phi()));
        // The canonical state must represent the same ray.
        let raw = [
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phi),
        ];
        let canon = q.amplitudes();
        let overlap = (raw[0].conj() * canon[0] + raw[1].conj() * canon[1]).norm();
        prop_assert!((overlap - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bloch_vector_round_trip(theta in 0.0..FRAC_PI_2, phi in 0.0..TAU) {
        let q = PureQubit::from_angles(theta, phi).unwrap();
        let back = q.bloch_vector().to_qubit();
        prop_assert!(bloch_angle(q, back) < 1e-9);
    }

    #[test]
    fn snap_is_idempotent_everywhere(theta in 0.0..FRAC_PI_2, phi in 0.0..TAU) {
        let grid = SphereGrid::build(0.4).unwrap();
        let q = PureQubit::from_angles(theta, phi).unwrap();
        let s = grid.snap(q);
        prop_assert!(bloch_angle(q, s) <= grid.mesh_diameter());
        prop_assert_eq!(grid.snap(s), s);
    }

    #[test]
    fn classical_angle_stays_reduced(omega in -50.0..50.0f64, t in 0.0..100.0f64, phi0 in -10.0..10.0f64) {
        let a = minangle::device::classical_angle(omega, t, phi0);
        prop_assert!((0.0..TAU).contains(&a));
        // Against direct reduction.
        let direct = (omega * t + phi0).rem_euclid(TAU) % TAU;
        prop_assert!((a - direct).abs() < 1e-9 || (TAU - (a - direct).abs()) < 1e-9);
    }

    #[test]
    fn composite_distance_is_bounded(n in 1usize..16, seed in 0u64..1000) {
        let mut r = rng(seed);
        let qs: Vec<PureQubit> = (0..n).map(|_| random_state(&mut r)).collect();
        let qs2: Vec<PureQubit> = (0..n).map(|_| random_state(&mut r)).collect();
        let d = composite_distance_sq(&qs, &qs2).unwrap();
        prop_assert!((0.0..=4.0).contains(&d));
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(t1 in 0.0..FRAC_PI_2, p1 in 0.0..TAU, t2 in 0.0..FRAC_PI_2, p2 in 0.0..TAU) {
        let a = PureQubit::from_angles(t1, p1).unwrap();
        let b = PureQubit::from_angles(t2, p2).unwrap();
        let f = fidelity(a, b);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity(b, a)).abs() < 1e-12);
        // Bloch-angle relation f = cos^2(delta / 2).
        let delta = bloch_angle(a, b);
        prop_assert!((f - (delta / 2.0).cos().powi(2)).abs() < 1e-9);
    }
}

#[test]
fn grid_epsilon_pi_has_at_least_two_points() {
    let grid = SphereGrid::build(PI).unwrap();
    assert!(grid.len() >= 2);
}

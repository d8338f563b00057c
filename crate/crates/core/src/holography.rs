//! Composite-state uncertainty accumulation and the capacity bound.
//!
//! Perturb each of `n` qubits independently by a Hilbert-norm deviation of
//! scale `epsilon` and the squared distance between the n-fold tensor
//! products grows as `n epsilon^2` while `n epsilon^2` is small, saturating
//! at 2 (orthogonality) when it is large. Requiring the accumulated
//! deviation to stay below an order-one budget with the per-qubit scale
//! tied to the device bound `epsilon = 1/r` caps the number of resolvable
//! qubits at `r^2`.
//!
//! Per-qubit overlaps are multiplied in log space so composite distances
//! stay finite for `n` far beyond float underflow.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::bloch::{fidelity, BlochVector, PureQubit};
use crate::error::{Error, Result};

/// How the per-qubit deviation magnitude is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagnitudeMode {
    /// Every qubit moves by exactly `epsilon`, in a uniformly random
    /// tangent direction on the Bloch sphere.
    FixedMagnitudeRandomDirection,
    /// Magnitudes are `|epsilon * g|` with `g` standard normal, capped at
    /// the maximal pure-state distance `sqrt(2)`.
    GaussianMagnitude,
}

/// Gauge convention for the per-qubit overlap entering the composite
/// distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseConvention {
    /// Each perturbed qubit is re-phased so its overlap with the original
    /// is real and nonnegative; deviations add without interference.
    PhaseFree,
    /// The deviation is drawn uniformly on the sphere of unit vectors at
    /// the target distance, so the overlap acquires a zero-mean imaginary
    /// part and the real part stays pinned by the distance constraint.
    RandomPhase,
}

/// Per-qubit perturbation model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationModel {
    epsilon: f64,
    mode: MagnitudeMode,
    phase: PhaseConvention,
}

impl PerturbationModel {
    pub fn new(epsilon: f64, mode: MagnitudeMode, phase: PhaseConvention) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: epsilon,
                admissible: "(0, 1)".into(),
            });
        }
        Ok(Self {
            epsilon,
            mode,
            phase,
        })
    }

    /// Fixed-magnitude, phase-free model: the default configuration.
    pub fn fixed(epsilon: f64) -> Result<Self> {
        Self::new(
            epsilon,
            MagnitudeMode::FixedMagnitudeRandomDirection,
            PhaseConvention::PhaseFree,
        )
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn mode(&self) -> MagnitudeMode {
        self.mode
    }

    pub fn phase(&self) -> PhaseConvention {
        self.phase
    }
}

/// Monte Carlo estimate of the composite squared distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McResult {
    pub n_qubits: u64,
    pub epsilon: f64,
    pub trials: u64,
    pub mean_dist_sq: f64,
    pub std_error: f64,
    pub seed: u64,
}

/// Uniform (Haar) random qubit: Bloch vector uniform on the sphere.
pub fn random_qubit(rng: &mut impl Rng) -> PureQubit {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    BlochVector {
        x: r * phi.cos(),
        y: r * phi.sin(),
        z,
    }
    .to_qubit()
}

fn standard_normal(rng: &mut impl Rng) -> f64 {
    // Box-Muller; the log argument is bounded away from zero.
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..TAU);
    (-2.0 * u1.ln()).sqrt() * u2.cos()
}

/// Largest representable pure-state distance; Gaussian magnitude draws are
/// capped here.
const MAX_DISTANCE: f64 = std::f64::consts::SQRT_2;

fn draw_magnitude(model: &PerturbationModel, rng: &mut impl Rng) -> f64 {
    match model.mode {
        MagnitudeMode::FixedMagnitudeRandomDirection => model.epsilon,
        MagnitudeMode::GaussianMagnitude => (model.epsilon * standard_normal(rng))
            .abs()
            .min(MAX_DISTANCE),
    }
}

/// Orthonormal tangent basis at a Bloch vector.
fn tangent_basis(v: &BlochVector) -> ([f64; 3], [f64; 3]) {
    let up = if v.z.abs() < 0.9 {
        BlochVector {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        }
    } else {
        BlochVector {
            x: 1.0,
            y: 0.0,
            z: 0.0,
        }
    };
    let t1 = v.cross(&up);
    let n1 = (t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]).sqrt();
    let e1 = [t1[0] / n1, t1[1] / n1, t1[2] / n1];
    let e2 = [
        v.y * e1[2] - v.z * e1[1],
        v.z * e1[0] - v.x * e1[2],
        v.x * e1[1] - v.y * e1[0],
    ];
    (e1, e2)
}

/// A perturbed qubit together with the gauged overlap `<q|q'>` used for
/// composite distances under the model's phase convention.
#[derive(Clone, Copy, Debug)]
pub struct PerturbedQubit {
    pub state: PureQubit,
    pub overlap: Complex64,
}

/// Perturbs `q` by a deviation of the model's magnitude and returns both
/// the new state and the gauged per-qubit overlap.
///
/// Phase-free: the Bloch vector moves by `delta = 4 asin(eps/2)` along a
/// uniform tangent direction, so the phase-minimized distance is exactly
/// `eps` and the overlap is real `sqrt(F)`.
///
/// Random-phase: the perturbed vector is drawn uniformly on the geodesic
/// sphere `{|psi'| = 1, |psi - psi'| = eps}`, which pins
/// `Re<psi|psi'> = 1 - eps^2/2` and leaves a zero-mean imaginary part.
pub fn perturb_with_overlap(
    q: PureQubit,
    model: &PerturbationModel,
    rng: &mut impl Rng,
) -> PerturbedQubit {
    let eps = draw_magnitude(model, rng);
    match model.phase {
        PhaseConvention::PhaseFree => {
            let delta = 4.0 * (eps / 2.0).asin();
            let v = q.bloch_vector();
            let (e1, e2) = tangent_basis(&v);
            let beta: f64 = rng.random_range(0.0..TAU);
            let (sb, cb) = beta.sin_cos();
            let (sd, cd) = delta.sin_cos();
            let dir = [
                e1[0] * cb + e2[0] * sb,
                e1[1] * cb + e2[1] * sb,
                e1[2] * cb + e2[2] * sb,
            ];
            let moved = BlochVector {
                x: v.x * cd + dir[0] * sd,
                y: v.y * cd + dir[1] * sd,
                z: v.z * cd + dir[2] * sd,
            };
            let state = moved.to_qubit();
            let overlap = Complex64::new(fidelity(q, state).sqrt(), 0.0);
            PerturbedQubit { state, overlap }
        }
        PhaseConvention::RandomPhase => {
            let re = 1.0 - eps * eps / 2.0;
            let radius = (1.0 - re * re).max(0.0).sqrt();
            // Uniform direction on the 2-sphere of deviations.
            let z: f64 = rng.random_range(-1.0..=1.0);
            let ang: f64 = rng.random_range(0.0..TAU);
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let alpha = Complex64::new(re, radius * z);
            let beta = Complex64::from_polar(radius * rho, ang);
            let [a0, a1] = q.amplitudes();
            // Orthogonal companion of (a0, a1): (-s, c e^{i phi}).
            let (s, c) = q.theta().sin_cos();
            let o0 = Complex64::new(-s, 0.0);
            let o1 = Complex64::from_polar(c, q.phi());
            let state = PureQubit::from_amplitudes(alpha * a0 + beta * o0, alpha * a1 + beta * o1)
                .expect("perturbed vector is unit norm");
            PerturbedQubit {
                state,
                overlap: alpha,
            }
        }
    }
}

/// Perturbed state only, when the gauged overlap is not needed.
pub fn perturb(q: PureQubit, model: &PerturbationModel, rng: &mut impl Rng) -> PureQubit {
    perturb_with_overlap(q, model, rng).state
}

/// Squared distance `|Psi - Psi'|^2 = 2 (1 - Re prod_i <psi_i|psi'_i>)` of
/// two bare tensor products, from the canonical per-qubit overlaps. No
/// global phase minimization. Computed in log space.
pub fn composite_distance_sq(qs: &[PureQubit], qs2: &[PureQubit]) -> Result<f64> {
    if qs.len() != qs2.len() {
        return Err(Error::DimensionMismatch {
            left: qs.len(),
            right: qs2.len(),
        });
    }
    if qs.is_empty() {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            admissible: ">= 1".into(),
        });
    }
    let overlaps = qs.iter().zip(qs2).map(|(a, b)| {
        let [a0, a1] = a.amplitudes();
        let [b0, b1] = b.amplitudes();
        a0.conj() * b0 + a1.conj() * b1
    });
    Ok(composite_distance_sq_from_overlaps(overlaps))
}

/// Log-space evaluation of `2 (1 - Re prod overlaps)`, safe for huge `n`.
pub fn composite_distance_sq_from_overlaps(overlaps: impl IntoIterator<Item = Complex64>) -> f64 {
    let mut log_mag = 0.0_f64;
    let mut arg = 0.0_f64;
    for ov in overlaps {
        log_mag += ov.norm().ln();
        arg += ov.arg();
    }
    let re_prod = if log_mag == f64::NEG_INFINITY {
        0.0
    } else {
        log_mag.exp() * arg.cos()
    };
    (2.0 * (1.0 - re_prod)).clamp(0.0, 4.0)
}

/// Monte Carlo mean of the composite squared distance over random base
/// qubits with independent perturbations.
///
/// Trials are independent: trial `i` uses a generator derived from
/// `(seed, i)`, so results are identical for any scheduling or degree of
/// parallelism. Trials run in parallel; the reduction is sequential in
/// trial order.
pub fn mc_expected_distance(
    n: u64,
    model: &PerturbationModel,
    trials: u64,
    seed: u64,
) -> Result<McResult> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            admissible: ">= 1".into(),
        });
    }
    if trials < 100 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: trials as f64,
            admissible: ">= 100".into(),
        });
    }
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let overlaps = (0..n).map(|_| {
                let q = random_qubit(&mut rng);
                perturb_with_overlap(q, model, &mut rng).overlap
            });
            composite_distance_sq_from_overlaps(overlaps)
        })
        .collect();

    let mean = samples.iter().sum::<f64>() / trials as f64;
    let var = samples.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (trials - 1) as f64;
    Ok(McResult {
        n_qubits: n,
        epsilon: model.epsilon,
        trials,
        mean_dist_sq: mean,
        std_error: (var / trials as f64).sqrt(),
        seed,
    })
}

/// Regime bound for the linear accumulation law.
pub const SMALL_REGIME_LIMIT: f64 = 0.1;

/// Least-squares slope through the origin of `mean_dist_sq` against `n`.
///
/// Requires at least 4 results with a common `epsilon` spanning a decade in
/// `n`, all inside the small-accumulation regime `n eps^2 <= 0.1`.
pub fn slope_fit(results: &[McResult]) -> Result<f64> {
    if results.len() < 4 {
        return Err(Error::OutOfRange {
            name: "results",
            value: results.len() as f64,
            admissible: ">= 4 results".into(),
        });
    }
    let eps = results[0].epsilon;
    if results.iter().any(|r| r.epsilon != eps) {
        return Err(Error::Invalid(
            "slope_fit requires results from a common model (equal epsilon)".into(),
        ));
    }
    let n_min = results.iter().map(|r| r.n_qubits).min().unwrap();
    let n_max = results.iter().map(|r| r.n_qubits).max().unwrap();
    if n_max < 10 * n_min {
        return Err(Error::Invalid(format!(
            "slope_fit requires n to span a decade, got [{n_min}, {n_max}]"
        )));
    }
    for r in results {
        let acc = r.n_qubits as f64 * eps * eps;
        if acc > SMALL_REGIME_LIMIT {
            return Err(Error::OutOfRange {
                name: "n * epsilon^2",
                value: acc,
                admissible: format!("<= {SMALL_REGIME_LIMIT} (small-accumulation regime)"),
            });
        }
    }
    let sxy: f64 = results
        .iter()
        .map(|r| r.n_qubits as f64 * r.mean_dist_sq)
        .sum();
    let sxx: f64 = results
        .iter()
        .map(|r| (r.n_qubits as f64) * (r.n_qubits as f64))
        .sum();
    Ok(sxy / sxx)
}

/// Capacity bound with explicit order-one choices: per-qubit uncertainty
/// `eps = coupling / r` and accumulated budget `|Psi - Psi'|^2 < budget`
/// give `n_max = floor(budget (r / coupling)^2)`.
pub fn holographic_capacity_with(r: f64, coupling: f64, budget: f64) -> Result<u64> {
    if !(r.is_finite() && r >= 1.0) {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            admissible: ">= 1 (sub-Planckian devices are excluded)".into(),
        });
    }
    for (name, v) in [("coupling", coupling), ("budget", budget)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::OutOfRange {
                name,
                value: v,
                admissible: "> 0".into(),
            });
        }
    }
    Ok((budget * (r / coupling) * (r / coupling)).floor() as u64)
}

/// Number of qubit degrees of freedom resolvable by a device of size `r`:
/// `floor(r^2)`, from `eps = 1/r` and unit budget.
pub fn holographic_capacity(r: f64) -> Result<u64> {
    holographic_capacity_with(r, 1.0, 1.0)
}

/// Per-qubit accuracy needed to hold `n` qubits within the unit budget:
/// `1/sqrt(n)`.
pub fn required_epsilon(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            admissible: ">= 1".into(),
        });
    }
    Ok(1.0 / (n as f64).sqrt())
}

/// CSV serialization of result lists, header
/// `n,epsilon,trials,mean_dist_sq,std_error,seed`.
pub fn results_to_csv(results: &[McResult]) -> String {
    let mut out = String::from("n,epsilon,trials,mean_dist_sq,std_error,seed\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n_qubits, r.epsilon, r.trials, r.mean_dist_sq, r.std_error, r.seed
        ));
    }
    out
}

pub fn results_from_csv(text: &str) -> Result<Vec<McResult>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "n,epsilon,trials,mean_dist_sq,std_error,seed" => {}
        other => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("bad or missing CSV header: {:?}", other.map(|(_, l)| l)),
            })
        }
    }
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 6 fields, got {}", fields.len()),
            });
        }
        let bad = |what: &str, e: &dyn std::fmt::Display| Error::Parse {
            line: idx + 1,
            msg: format!("bad {what}: {e}"),
        };
        out.push(McResult {
            n_qubits: fields[0].parse().map_err(|e| bad("n", &e))?,
            epsilon: fields[1].parse().map_err(|e| bad("epsilon", &e))?,
            trials: fields[2].parse().map_err(|e| bad("trials", &e))?,
            mean_dist_sq: fields[3].parse().map_err(|e| bad("mean_dist_sq", &e))?,
            std_error: fields[4].parse().map_err(|e| bad("std_error", &e))?,
            seed: fields[5].parse().map_err(|e| bad("seed", &e))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::hilbert_distance;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn model_rejects_bad_epsilon() {
        assert!(PerturbationModel::fixed(0.0).is_err());
        assert!(PerturbationModel::fixed(1.0).is_err());
        assert!(PerturbationModel::fixed(-0.1).is_err());
        assert!(PerturbationModel::fixed(0.5).is_ok());
    }

    #[test]
    fn fixed_magnitude_hits_the_target_distance() {
        let model = PerturbationModel::fixed(0.1).unwrap();
        let mut rng = rng(1);
        for _ in 0..200 {
            let q = random_qubit(&mut rng);
            let p = perturb(q, &model, &mut rng);
            assert!((hilbert_distance(q, p) - 0.1).abs() < 1e-9);
        }
    }

    #[test]
    fn tiny_epsilon_stays_close() {
        let model = PerturbationModel::fixed(1e-6).unwrap();
        let mut rng = rng(2);
        let q = random_qubit(&mut rng);
        let p = perturb(q, &model, &mut rng);
        assert!(hilbert_distance(q, p) < 2e-6);
    }

    #[test]
    fn perturbation_directions_are_isotropic() {
        // Tangent components of the Bloch displacement should average to
        // zero within 3 standard errors.
        let model = PerturbationModel::fixed(0.1).unwrap();
        let mut rng = rng(3);
        let q = PureQubit::from_angles(0.5, 1.2).unwrap();
        let v = q.bloch_vector();
        let (e1, e2) = tangent_basis(&v);
        let trials = 10_000;
        let mut c1 = Vec::with_capacity(trials);
        let mut c2 = Vec::with_capacity(trials);
        for _ in 0..trials {
            let p = perturb(q, &model, &mut rng).bloch_vector();
            let d = [p.x - v.x, p.y - v.y, p.z - v.z];
            c1.push(d[0] * e1[0] + d[1] * e1[1] + d[2] * e1[2]);
            c2.push(d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2]);
        }
        for comp in [c1, c2] {
            let mean = comp.iter().sum::<f64>() / trials as f64;
            let var =
                comp.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (trials - 1) as f64;
            let se = (var / trials as f64).sqrt();
            assert!(mean.abs() < 3.0 * se, "mean {mean}, se {se}");
        }
    }

    #[test]
    fn random_phase_overlap_has_pinned_real_part() {
        let model = PerturbationModel::new(
            0.2,
            MagnitudeMode::FixedMagnitudeRandomDirection,
            PhaseConvention::RandomPhase,
        )
        .unwrap();
        let mut rng = rng(4);
        for _ in 0..100 {
            let q = random_qubit(&mut rng);
            let p = perturb_with_overlap(q, &model, &mut rng);
            assert!((p.overlap.re - (1.0 - 0.02)).abs() < 1e-12);
            // The gauged overlap magnitude is the root fidelity of the pair.
            let f = fidelity(q, p.state);
            assert!((p.overlap.norm_sqr() - f).abs() < 1e-9);
        }
    }

    #[test]
    fn composite_distance_trivial_cases() {
        let mut rng = rng(5);
        let qs: Vec<PureQubit> = (0..6).map(|_| random_qubit(&mut rng)).collect();
        assert!(composite_distance_sq(&qs, &qs).unwrap() < 1e-12);
        assert!(composite_distance_sq(&qs, &qs[..4]).is_err());
        assert!(composite_distance_sq(&[], &[]).is_err());
    }

    #[test]
    fn composite_distance_two_real_overlaps() {
        // Two pairs with real overlap 0.99 each: 2 (1 - 0.9801) = 0.0398.
        let dth = 0.99_f64.acos();
        let qs = [
            PureQubit::from_angles(0.3, 0.0).unwrap(),
            PureQubit::from_angles(0.5, 0.0).unwrap(),
        ];
        let qs2 = [
            PureQubit::from_angles(0.3 + dth, 0.0).unwrap(),
            PureQubit::from_angles(0.5 + dth, 0.0).unwrap(),
        ];
        let d = composite_distance_sq(&qs, &qs2).unwrap();
        assert!((d - 0.0398).abs() < 1e-12);
    }

    #[test]
    fn single_qubit_composite_matches_hilbert_distance() {
        // With aligned phases (both states on the phi = 0 meridian) the
        // canonical overlap is real, so the composite distance squared is
        // the squared phase-minimized distance.
        let a = PureQubit::from_angles(0.4, 0.0).unwrap();
        let b = PureQubit::from_angles(0.7, 0.0).unwrap();
        let d = composite_distance_sq(&[a], &[b]).unwrap();
        let h = hilbert_distance(a, b);
        assert!((d - h * h).abs() < 1e-12);
    }

    #[test]
    fn log_space_product_handles_orthogonal_factors() {
        let z = Complex64::new(0.0, 0.0);
        let d = composite_distance_sq_from_overlaps([z]);
        assert_eq!(d, 2.0);
    }

    #[test]
    fn single_qubit_mean_is_exactly_epsilon_squared() {
        let model = PerturbationModel::fixed(0.25).unwrap();
        let res = mc_expected_distance(1, &model, 200, 9).unwrap();
        assert!(
            (res.mean_dist_sq - 0.0625).abs() < 1e-12,
            "mean {}",
            res.mean_dist_sq
        );
    }

    #[test]
    fn small_regime_law_holds() {
        let model = PerturbationModel::fixed(0.01).unwrap();
        let res = mc_expected_distance(100, &model, 10_000, 42).unwrap();
        let target = 100.0 * 0.01 * 0.01;
        assert!(
            (res.mean_dist_sq - target).abs() / target < 0.05,
            "mean {} vs {target}",
            res.mean_dist_sq
        );
    }

    #[test]
    fn small_regime_law_holds_for_random_phase() {
        let model = PerturbationModel::new(
            0.01,
            MagnitudeMode::FixedMagnitudeRandomDirection,
            PhaseConvention::RandomPhase,
        )
        .unwrap();
        for n in [10_u64, 100, 1000] {
            let res = mc_expected_distance(n, &model, 2000, 17).unwrap();
            let target = n as f64 * 1e-4;
            let window = (0.05 * target).max(3.0 * res.std_error);
            assert!(
                (res.mean_dist_sq - target).abs() <= window,
                "n = {n}: mean {} vs {target} (window {window})",
                res.mean_dist_sq
            );
        }
    }

    #[test]
    fn gaussian_magnitude_matches_in_expectation() {
        let model = PerturbationModel::new(
            0.01,
            MagnitudeMode::GaussianMagnitude,
            PhaseConvention::PhaseFree,
        )
        .unwrap();
        let res = mc_expected_distance(100, &model, 10_000, 11).unwrap();
        let target = 0.01_f64;
        let window = (0.05 * target).max(3.0 * res.std_error);
        assert!(
            (res.mean_dist_sq - target).abs() <= window,
            "mean {} vs {target}",
            res.mean_dist_sq
        );
    }

    #[test]
    fn saturation_reaches_orthogonality() {
        let model = PerturbationModel::fixed(0.01).unwrap();
        let res = mc_expected_distance(1_000_000, &model, 100, 7).unwrap();
        assert!(
            (res.mean_dist_sq - 2.0).abs() < 0.04,
            "mean {}",
            res.mean_dist_sq
        );
    }

    #[test]
    fn mc_is_reproducible_and_scheduling_independent() {
        let model = PerturbationModel::fixed(0.05).unwrap();
        let a = mc_expected_distance(50, &model, 400, 123).unwrap();
        let b = mc_expected_distance(50, &model, 400, 123).unwrap();
        assert_eq!(a.mean_dist_sq.to_bits(), b.mean_dist_sq.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = mc_expected_distance(50, &model, 400, 124).unwrap();
        assert_ne!(a.mean_dist_sq.to_bits(), c.mean_dist_sq.to_bits());
    }

    #[test]
    fn mc_rejects_undersized_trials() {
        let model = PerturbationModel::fixed(0.05).unwrap();
        assert!(mc_expected_distance(10, &model, 99, 1).is_err());
        assert!(mc_expected_distance(0, &model, 100, 1).is_err());
    }

    #[test]
    fn slope_fit_recovers_exact_synthetic_law() {
        let eps = 0.01;
        let results: Vec<McResult> = [10_u64, 30, 100, 300, 1000]
            .iter()
            .map(|&n| McResult {
                n_qubits: n,
                epsilon: eps,
                trials: 1000,
                mean_dist_sq: n as f64 * eps * eps,
                std_error: 0.0,
                seed: 0,
            })
            .collect();
        let slope = slope_fit(&results).unwrap();
        assert!((slope - eps * eps).abs() < 1e-18);
    }

    #[test]
    fn slope_fit_rejects_regime_violations() {
        let eps = 0.1;
        let results: Vec<McResult> = [10_u64, 30, 100, 300]
            .iter()
            .map(|&n| McResult {
                n_qubits: n,
                epsilon: eps,
                trials: 1000,
                mean_dist_sq: n as f64 * eps * eps,
                std_error: 0.0,
                seed: 0,
            })
            .collect();
        // n = 300 at eps = 0.1 has n eps^2 = 3 > 0.1.
        assert!(slope_fit(&results).is_err());
    }

    #[test]
    fn slope_fit_requires_enough_span() {
        let eps = 0.01;
        let mk = |n: u64| McResult {
            n_qubits: n,
            epsilon: eps,
            trials: 1000,
            mean_dist_sq: n as f64 * eps * eps,
            std_error: 0.0,
            seed: 0,
        };
        assert!(slope_fit(&[mk(10), mk(20), mk(30)]).is_err());
        assert!(slope_fit(&[mk(10), mk(20), mk(30), mk(50)]).is_err());
        assert!(slope_fit(&[mk(10), mk(20), mk(30), mk(100)]).is_ok());
    }

    #[test]
    fn capacity_reference_values() {
        assert_eq!(holographic_capacity(10.0).unwrap(), 100);
        assert_eq!(holographic_capacity(1.0).unwrap(), 1);
        assert!(holographic_capacity(0.5).is_err());
        assert_eq!(required_epsilon(100).unwrap(), 0.1);
        assert!(required_epsilon(0).is_err());
    }

    #[test]
    fn capacity_round_trips_within_floor() {
        for r in [1.0, 2.5, 10.0, 314.159] {
            let n = holographic_capacity(r).unwrap();
            let eps = required_epsilon(n).unwrap();
            // Self-consistency with the device bound up to the floor.
            assert!(eps >= 1.0 / r);
            assert!(holographic_capacity(1.0 / eps).unwrap() <= n);
        }
    }

    #[test]
    fn csv_round_trips() {
        let model = PerturbationModel::fixed(0.02).unwrap();
        let results = vec![
            mc_expected_distance(10, &model, 150, 5).unwrap(),
            mc_expected_distance(100, &model, 150, 5).unwrap(),
        ];
        let csv = results_to_csv(&results);
        assert!(csv.starts_with("n,epsilon,trials,mean_dist_sq,std_error,seed\n"));
        let back = results_from_csv(&csv).unwrap();
        assert_eq!(results, back);
        assert!(results_from_csv("nope\n1,2,3").is_err());
    }
}

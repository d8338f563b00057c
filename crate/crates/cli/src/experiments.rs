//! Experiment dispatch: each run turns a validated config into one results
//! table. Rows are sorted by the experiment's sweep variable and rendered
//! with deterministic formatting, so identical configs give byte-identical
//! tables.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use minangle::bloch::{
    brute_force_distinguish, helstrom_success, BlochVector, PureQubit, SphereGrid,
};
use minangle::device::{min_angle, min_angle_scan_with, FeasibilityPolicy};
use minangle::holography::{
    mc_expected_distance, random_qubit, slope_fit, McResult, PerturbationModel,
};
use minangle::lattice::{
    build_xp, canonical_trace_reference, circle_commutator_check, commutator_trace, evolve_free,
    gaussian_packet, linear_fit, random_smooth_state, spreads, ClassicalCircle, Lattice, Topology,
};

use crate::config::{
    BoundParams, CircleParams, DistinguishParams, ExperimentConfig, HolographyParams,
    LatticeParams, Params,
};
use crate::report::{fmt_f64, number, text, ResultsTable, RunReport};

/// Runs the configured experiment. Config validation guarantees library
/// preconditions, so any error here is a genuine computation failure.
pub fn run(config: &ExperimentConfig) -> Result<RunReport, minangle::Error> {
    let start = Instant::now();
    let table = match &config.params {
        Params::Bound(p) => run_bound(p)?,
        Params::Distinguish(p) => run_distinguish(p, config.seed)?,
        Params::Lattice(p) => run_lattice(p, config.seed)?,
        Params::Circle(p) => run_circle(p)?,
        Params::Holography(p) => run_holography(p, config.seed)?,
    };
    Ok(RunReport {
        config: config.clone(),
        table,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn num(x: f64) -> Option<String> {
    Some(fmt_f64(x))
}

fn int(x: impl ToString) -> Option<String> {
    Some(x.to_string())
}

fn run_bound(p: &BoundParams) -> Result<ResultsTable, minangle::Error> {
    let policy = FeasibilityPolicy::new(p.hoop_coefficient, p.causality_coefficient)?;
    let mut table = ResultsTable::new(vec![
        number("r"),
        number("analytic_delta_phi"),
        number("scan_delta_phi"),
        number("rel_gap"),
        number("argmin_m"),
        number("argmin_t"),
    ]);
    let mut rs = p.r_values.clone();
    rs.sort_by(f64::total_cmp);
    for r in rs {
        let exact = min_angle(r)?;
        let scan = min_angle_scan_with(
            r,
            p.m_grid,
            p.t_grid,
            p.m_max_factor,
            p.t_max_factor,
            &policy,
        )?;
        table.push_row(vec![
            num(r),
            num(exact.delta_phi),
            num(scan.delta_phi),
            num((scan.delta_phi - exact.delta_phi) / exact.delta_phi),
            num(scan.argmin_m),
            num(scan.argmin_t),
        ]);
    }
    Ok(table)
}

/// Unit axis perpendicular to the state's Bloch vector, so a rotation by
/// `angle` displaces the state by exactly `angle`.
fn perpendicular_axis(q: &PureQubit) -> BlochVector {
    let v = q.bloch_vector();
    if v.z.abs() < 0.9 {
        BlochVector::from_direction(-v.y, v.x, 0.0)
    } else {
        BlochVector::from_direction(v.z, 0.0, -v.x)
    }
    .expect("perpendicular direction is nonzero")
}

fn run_distinguish(p: &DistinguishParams, seed: u64) -> Result<ResultsTable, minangle::Error> {
    let mut table = ResultsTable::new(vec![
        text("kind"),
        number("delta"),
        number("helstrom"),
        number("brute_force"),
        number("abs_diff"),
        number("displacement"),
        number("return_fraction"),
        number("grid_points"),
    ]);
    let north = PureQubit::from_angles(0.0, 0.0)?;
    for i in 0..p.delta_steps {
        let delta = if p.delta_steps == 1 {
            p.delta_min
        } else {
            p.delta_min + (p.delta_max - p.delta_min) * i as f64 / (p.delta_steps - 1) as f64
        };
        let other = PureQubit::from_angles(delta / 2.0, 0.0)?;
        let exact = helstrom_success(north, other);
        let scan = brute_force_distinguish(north, other, p.mesh)?;
        table.push_row(vec![
            Some("curve".into()),
            num(delta),
            num(exact),
            num(scan),
            num((exact - scan).abs()),
            None,
            None,
            None,
        ]);
    }

    // Sub-resolution rotation demo on an epsilon grid.
    let grid = SphereGrid::build(p.grid_epsilon)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut returned = 0_usize;
    for _ in 0..p.demo_states {
        let q = grid.snap(random_qubit(&mut rng));
        let axis = perpendicular_axis(&q);
        let out = grid.snapped_rotate(q, &axis, p.demo_displacement)?;
        if out == q {
            returned += 1;
        }
    }
    table.push_row(vec![
        Some("snap_demo".into()),
        None,
        None,
        None,
        None,
        num(p.demo_displacement),
        num(returned as f64 / p.demo_states as f64),
        int(grid.len()),
    ]);
    Ok(table)
}

fn run_lattice(p: &LatticeParams, seed: u64) -> Result<ResultsTable, minangle::Error> {
    let mut table = ResultsTable::new(vec![
        text("kind"),
        number("n_sites"),
        number("t"),
        number("delta_x"),
        number("delta_p"),
        number("product"),
        number("sweep_min_product"),
        number("sweep_mean_product"),
        number("commutator_trace_abs"),
        number("canonical_trace_im"),
    ]);
    let lat = Lattice::new(p.n_sites, p.length, Topology::LinePeriodic)?;
    let psi = gaussian_packet(&lat, p.length / 2.0, 0.0, p.sigma)?;

    let s0 = spreads(&lat, &psi)?;
    table.push_row(vec![
        Some("gaussian".into()),
        int(p.n_sites),
        num(0.0),
        num(s0.delta_x),
        num(s0.delta_p),
        num(s0.product()),
        None,
        None,
        None,
        None,
    ]);

    let evolved = evolve_free(&lat, &psi, p.mass, p.evolve_time)?;
    let s1 = spreads(&lat, &evolved)?;
    table.push_row(vec![
        Some("gaussian_evolved".into()),
        int(p.n_sites),
        num(p.evolve_time),
        num(s1.delta_x),
        num(s1.delta_p),
        num(s1.product()),
        None,
        None,
        None,
        None,
    ]);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_product = f64::INFINITY;
    let mut sum = 0.0;
    for _ in 0..p.n_random {
        let state = random_smooth_state(&lat, &mut rng);
        let product = spreads(&lat, &state)?.product();
        min_product = min_product.min(product);
        sum += product;
    }
    table.push_row(vec![
        Some("random_sweep".into()),
        int(p.n_random),
        None,
        None,
        None,
        None,
        num(min_product),
        num(sum / p.n_random as f64),
        None,
        None,
    ]);

    let mut sizes = p.trace_sizes.clone();
    sizes.sort_unstable();
    for n in sizes {
        let small = Lattice::new(n, n as f64, Topology::LinePeriodic)?;
        let (x, pm) = build_xp(&small);
        let tr = commutator_trace(&x, &pm)?;
        table.push_row(vec![
            Some("trace".into()),
            int(n),
            None,
            None,
            None,
            None,
            None,
            None,
            num(tr.norm()),
            num(canonical_trace_reference(n).im),
        ]);
    }
    Ok(table)
}

fn run_circle(p: &CircleParams) -> Result<ResultsTable, minangle::Error> {
    let mut table = ResultsTable::new(vec![
        text("kind"),
        number("t"),
        number("commutator_re"),
        number("commutator_im"),
        number("expected_im"),
        number("rel_err"),
        number("slope"),
        number("slope_expected"),
        number("r_squared"),
    ]);
    let circ = ClassicalCircle::new(p.mass, p.radius, 0.0)?;
    let lat = Lattice::new(p.n_sites, std::f64::consts::TAU, Topology::Circle)?;
    let psi = gaussian_packet(&lat, std::f64::consts::PI, 0.0, p.sigma_angle)?;

    let mut ts = p.t_values.clone();
    ts.sort_by(f64::total_cmp);
    let mut ims = Vec::with_capacity(ts.len());
    let inverse_inertia = 1.0 / (p.mass * p.radius * p.radius);
    for &t in &ts {
        let c = circle_commutator_check(&circ, &lat, t, &psi)?;
        let expected = t * inverse_inertia;
        ims.push(c.im);
        table.push_row(vec![
            Some("point".into()),
            num(t),
            num(c.re),
            num(c.im),
            num(expected),
            num(((c.re * c.re + (c.im - expected) * (c.im - expected)).sqrt()) / expected),
            None,
            None,
            None,
        ]);
    }
    let (slope, r_squared) = linear_fit(&ts, &ims);
    table.push_row(vec![
        Some("fit".into()),
        None,
        None,
        None,
        None,
        None,
        num(slope),
        num(inverse_inertia),
        num(r_squared),
    ]);
    Ok(table)
}

fn run_holography(p: &HolographyParams, seed: u64) -> Result<ResultsTable, minangle::Error> {
    let mut table = ResultsTable::new(vec![
        text("kind"),
        number("n"),
        number("epsilon"),
        number("trials"),
        number("mean_dist_sq"),
        number("std_error"),
        number("n_eps_sq"),
        number("slope"),
        number("slope_over_eps_sq"),
    ]);
    let model = PerturbationModel::new(p.epsilon, p.mode, p.phase)?;
    let mut ns = p.n_values.clone();
    ns.sort_unstable();
    let mut results: Vec<McResult> = Vec::with_capacity(ns.len());
    for &n in &ns {
        let res = mc_expected_distance(n, &model, p.trials, seed)?;
        table.push_row(vec![
            Some("mc".into()),
            int(n),
            num(p.epsilon),
            int(p.trials),
            num(res.mean_dist_sq),
            num(res.std_error),
            num(n as f64 * p.epsilon * p.epsilon),
            None,
            None,
        ]);
        results.push(res);
    }
    if let Some(n) = p.saturation_n {
        let res = mc_expected_distance(n, &model, p.saturation_trials, seed)?;
        table.push_row(vec![
            Some("saturation".into()),
            int(n),
            num(p.epsilon),
            int(p.saturation_trials),
            num(res.mean_dist_sq),
            num(res.std_error),
            num(n as f64 * p.epsilon * p.epsilon),
            None,
            None,
        ]);
    }
    let slope = slope_fit(&results)?;
    table.push_row(vec![
        Some("slope".into()),
        None,
        num(p.epsilon),
        None,
        None,
        None,
        None,
        num(slope),
        num(slope / (p.epsilon * p.epsilon)),
    ]);
    Ok(table)
}

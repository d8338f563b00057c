//! Run configuration: a flat key/value text format with one section per
//! experiment.
//!
//! Grammar (see the repository README for the full key tables):
//!
//! ```text
//! # comment                      blank lines and `#` comments are ignored
//! experiment = bound             top-level keys come before any section
//! seed = 42
//! output = bound.csv
//! format = csv                   csv | json-lines
//!
//! [bound]                        exactly the section named by `experiment`
//! r_values = 1,10,100            key = value, one per line
//! ```
//!
//! Parsing validates everything up front and reports *all* failures, not
//! just the first: unknown keys by name, out-of-range values with the
//! admissible range. Ranges are chosen so that no library-level domain
//! error is reachable from a config that validates.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub const EXPERIMENT_NAMES: [&str; 5] = ["bound", "distinguish", "lattice", "circle", "holography"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Bound,
    Distinguish,
    Lattice,
    Circle,
    Holography,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Bound => "bound",
            Self::Distinguish => "distinguish",
            Self::Lattice => "lattice",
            Self::Circle => "circle",
            Self::Holography => "holography",
        }
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bound" => Ok(Self::Bound),
            "distinguish" => Ok(Self::Distinguish),
            "lattice" => Ok(Self::Lattice),
            "circle" => Ok(Self::Circle),
            "holography" => Ok(Self::Holography),
            other => Err(format!(
                "unknown experiment {other:?}; valid names: {}",
                EXPERIMENT_NAMES.join(", ")
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::JsonLines => "json-lines",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json-lines" => Ok(Self::JsonLines),
            other => Err(format!("unknown format {other:?}; valid: csv, json-lines")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub r_values: Vec<f64>,
    pub m_grid: usize,
    pub t_grid: usize,
    pub m_max_factor: f64,
    pub t_max_factor: f64,
    pub hoop_coefficient: f64,
    pub causality_coefficient: f64,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            r_values: vec![1.0],
            m_grid: 256,
            t_grid: 256,
            m_max_factor: 10.0,
            t_max_factor: 10.0,
            hoop_coefficient: 1.0,
            causality_coefficient: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishParams {
    pub delta_min: f64,
    pub delta_max: f64,
    pub delta_steps: usize,
    pub mesh: usize,
    pub grid_epsilon: f64,
    pub demo_displacement: f64,
    pub demo_states: usize,
}

impl Default for DistinguishParams {
    fn default() -> Self {
        Self {
            delta_min: 0.1,
            delta_max: std::f64::consts::PI,
            delta_steps: 13,
            mesh: 256,
            grid_epsilon: 0.1,
            demo_displacement: 0.001,
            demo_states: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeParams {
    pub n_sites: usize,
    pub length: f64,
    pub sigma: f64,
    pub mass: f64,
    pub evolve_time: f64,
    pub n_random: usize,
    pub trace_sizes: Vec<usize>,
}

impl Default for LatticeParams {
    fn default() -> Self {
        Self {
            n_sites: 1024,
            length: 100.0,
            sigma: 5.0,
            mass: 1.0,
            evolve_time: 50.0,
            n_random: 1000,
            trace_sizes: vec![8, 64, 256],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleParams {
    pub mass: f64,
    pub radius: f64,
    pub sigma_angle: f64,
    pub n_sites: usize,
    pub t_values: Vec<f64>,
}

impl Default for CircleParams {
    fn default() -> Self {
        Self {
            mass: 100.0,
            radius: 1.0,
            sigma_angle: 0.1,
            n_sites: 512,
            t_values: vec![0.5, 1.0, 2.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolographyParams {
    pub epsilon: f64,
    pub n_values: Vec<u64>,
    pub trials: u64,
    pub mode: minangle::holography::MagnitudeMode,
    pub phase: minangle::holography::PhaseConvention,
    pub saturation_n: Option<u64>,
    pub saturation_trials: u64,
}

impl Default for HolographyParams {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            n_values: vec![10, 30, 100, 300, 1000],
            trials: 10_000,
            mode: minangle::holography::MagnitudeMode::FixedMagnitudeRandomDirection,
            phase: minangle::holography::PhaseConvention::PhaseFree,
            saturation_n: None,
            saturation_trials: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    Bound(BoundParams),
    Distinguish(DistinguishParams),
    Lattice(LatticeParams),
    Circle(CircleParams),
    Holography(HolographyParams),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub output: PathBuf,
    pub format: OutputFormat,
    pub params: Params,
}

impl ExperimentConfig {
    /// Normalized `key = value` echo of the full effective configuration,
    /// defaults included, sorted by key. This is the reproducibility block
    /// embedded in every report.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut kv: Vec<(String, String)> = vec![
            ("experiment".into(), self.experiment.name().into()),
            ("seed".into(), self.seed.to_string()),
            ("format".into(), self.format.name().into()),
        ];
        let join_f64 = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.params {
            Params::Bound(p) => {
                kv.push(("bound.r_values".into(), join_f64(&p.r_values)));
                kv.push(("bound.m_grid".into(), p.m_grid.to_string()));
                kv.push(("bound.t_grid".into(), p.t_grid.to_string()));
                kv.push(("bound.m_max_factor".into(), p.m_max_factor.to_string()));
                kv.push(("bound.t_max_factor".into(), p.t_max_factor.to_string()));
                kv.push((
                    "bound.hoop_coefficient".into(),
                    p.hoop_coefficient.to_string(),
                ));
                kv.push((
                    "bound.causality_coefficient".into(),
                    p.causality_coefficient.to_string(),
                ));
            }
            Params::Distinguish(p) => {
                kv.push(("distinguish.delta_min".into(), p.delta_min.to_string()));
                kv.push(("distinguish.delta_max".into(), p.delta_max.to_string()));
                kv.push(("distinguish.delta_steps".into(), p.delta_steps.to_string()));
                kv.push(("distinguish.mesh".into(), p.mesh.to_string()));
                kv.push((
                    "distinguish.grid_epsilon".into(),
                    p.grid_epsilon.to_string(),
                ));
                kv.push((
                    "distinguish.demo_displacement".into(),
                    p.demo_displacement.to_string(),
                ));
                kv.push(("distinguish.demo_states".into(), p.demo_states.to_string()));
            }
            Params::Lattice(p) => {
                kv.push(("lattice.n_sites".into(), p.n_sites.to_string()));
                kv.push(("lattice.length".into(), p.length.to_string()));
                kv.push(("lattice.sigma".into(), p.sigma.to_string()));
                kv.push(("lattice.mass".into(), p.mass.to_string()));
                kv.push(("lattice.evolve_time".into(), p.evolve_time.to_string()));
                kv.push(("lattice.n_random".into(), p.n_random.to_string()));
                kv.push((
                    "lattice.trace_sizes".into(),
                    p.trace_sizes
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ));
            }
            Params::Circle(p) => {
                kv.push(("circle.mass".into(), p.mass.to_string()));
                kv.push(("circle.radius".into(), p.radius.to_string()));
                kv.push(("circle.sigma_angle".into(), p.sigma_angle.to_string()));
                kv.push(("circle.n_sites".into(), p.n_sites.to_string()));
                kv.push(("circle.t_values".into(), join_f64(&p.t_values)));
            }
            Params::Holography(p) => {
                kv.push(("holography.epsilon".into(), p.epsilon.to_string()));
                kv.push((
                    "holography.n_values".into(),
                    p.n_values
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ));
                kv.push(("holography.trials".into(), p.trials.to_string()));
                kv.push((
                    "holography.mode".into(),
                    match p.mode {
                        minangle::holography::MagnitudeMode::FixedMagnitudeRandomDirection => {
                            "fixed".into()
                        }
                        minangle::holography::MagnitudeMode::GaussianMagnitude => {
                            "gaussian".to_string()
                        }
                    },
                ));
                kv.push((
                    "holography.phase".into(),
                    match p.phase {
                        minangle::holography::PhaseConvention::PhaseFree => "phase-free".into(),
                        minangle::holography::PhaseConvention::RandomPhase => {
                            "random-phase".to_string()
                        }
                    },
                ));
                if let Some(n) = p.saturation_n {
                    kv.push(("holography.saturation_n".into(), n.to_string()));
                    kv.push((
                        "holography.saturation_trials".into(),
                        p.saturation_trials.to_string(),
                    ));
                }
            }
        }
        kv.sort();
        kv
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

struct Pair {
    line: usize,
    section: Option<String>,
    key: String,
    value: String,
}

/// Parses and fully validates a config document, reporting every failure.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, Vec<ValidationError>> {
    let mut errors = Vec::new();
    let mut pairs = Vec::new();
    let mut section: Option<String> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            match name.strip_suffix(']') {
                Some(name) if !name.trim().is_empty() => {
                    section = Some(name.trim().to_string());
                }
                _ => errors.push(ValidationError {
                    line: Some(line_no),
                    message: format!("malformed section header {line:?}"),
                }),
            }
            continue;
        }
        match line.split_once('=') {
            Some((key, value)) => pairs.push(Pair {
                line: line_no,
                section: section.clone(),
                key: key.trim().to_string(),
                value: value.trim().to_string(),
            }),
            None => errors.push(ValidationError {
                line: Some(line_no),
                message: format!("expected `key = value` or `[section]`, got {line:?}"),
            }),
        }
    }

    // The experiment name decides which section and key set are legal.
    let experiment = pairs
        .iter()
        .find(|p| p.section.is_none() && p.key == "experiment")
        .map(|p| (p.line, Experiment::from_str(&p.value)));
    let experiment = match experiment {
        Some((_, Ok(e))) => Some(e),
        Some((line, Err(msg))) => {
            errors.push(ValidationError {
                line: Some(line),
                message: msg,
            });
            None
        }
        None => {
            errors.push(ValidationError {
                line: None,
                message: format!(
                    "missing required top-level key `experiment` (valid names: {})",
                    EXPERIMENT_NAMES.join(", ")
                ),
            });
            None
        }
    };

    let mut seed: u64 = 42;
    let mut output: Option<PathBuf> = None;
    let mut format = OutputFormat::default();
    let mut params = experiment.map(|e| match e {
        Experiment::Bound => Params::Bound(BoundParams::default()),
        Experiment::Distinguish => Params::Distinguish(DistinguishParams::default()),
        Experiment::Lattice => Params::Lattice(LatticeParams::default()),
        Experiment::Circle => Params::Circle(CircleParams::default()),
        Experiment::Holography => Params::Holography(HolographyParams::default()),
    });

    for pair in &pairs {
        let err = |message: String| ValidationError {
            line: Some(pair.line),
            message,
        };
        match (&pair.section, pair.key.as_str()) {
            (None, "experiment") => {} // handled above
            (None, "seed") => match pair.value.parse::<u64>() {
                Ok(v) => seed = v,
                Err(e) => errors.push(err(format!("bad seed {:?}: {e}", pair.value))),
            },
            (None, "output") => output = Some(PathBuf::from(&pair.value)),
            (None, "format") => match OutputFormat::from_str(&pair.value) {
                Ok(v) => format = v,
                Err(msg) => errors.push(err(msg)),
            },
            (None, other) => errors.push(err(format!(
                "unknown top-level key {other:?}; valid keys: experiment, seed, output, format"
            ))),
            (Some(section), key) => {
                let Some(exp) = experiment else {
                    continue; // cannot attribute keys without an experiment
                };
                if section != exp.name() {
                    errors.push(err(format!(
                        "section [{section}] does not match experiment `{}`",
                        exp.name()
                    )));
                    continue;
                }
                if let Some(p) = params.as_mut() {
                    if let Err(msg) = apply_param(p, key, &pair.value) {
                        errors.push(err(msg));
                    }
                }
            }
        }
    }

    if let Some(p) = params.as_ref() {
        for msg in cross_validate(p) {
            errors.push(ValidationError {
                line: None,
                message: msg,
            });
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    let experiment = experiment.expect("experiment present when no errors");
    Ok(ExperimentConfig {
        experiment,
        seed,
        output: output
            .unwrap_or_else(|| PathBuf::from(format!("minangle-{}.csv", experiment.name()))),
        format,
        params: params.expect("params present when no errors"),
    })
}

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|e| format!("bad value for {key}: {value:?} ({e})"))
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("{key} must be finite, got {value:?}"))
            }
        })
}

fn parse_usize(key: &str, value: &str) -> Result<usize, String> {
    value
        .parse::<usize>()
        .map_err(|e| format!("bad value for {key}: {value:?} ({e})"))
}

fn parse_u64(key: &str, value: &str) -> Result<u64, String> {
    value
        .parse::<u64>()
        .map_err(|e| format!("bad value for {key}: {value:?} ({e})"))
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>, String> {
    let items: Result<Vec<f64>, String> =
        value.split(',').map(|s| parse_f64(key, s.trim())).collect();
    let items = items?;
    if items.is_empty() {
        return Err(format!("{key} must list at least one value"));
    }
    Ok(items)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn apply_param(params: &mut Params, key: &str, value: &str) -> Result<(), String> {
    match params {
        Params::Bound(p) => match key {
            "r_values" | "r" => {
                let v = parse_f64_list("r", value)?;
                for &r in &v {
                    require(r > 0.0, || format!("r = {r} out of range; requires r > 0"))?;
                }
                p.r_values = v;
            }
            "m_grid" => {
                let v = parse_usize(key, value)?;
                require(v >= 16, || {
                    format!("{key} = {v} out of range; requires >= 16")
                })?;
                p.m_grid = v;
            }
            "t_grid" => {
                let v = parse_usize(key, value)?;
                require(v >= 16, || {
                    format!("{key} = {v} out of range; requires >= 16")
                })?;
                p.t_grid = v;
            }
            "m_max_factor" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.m_max_factor = v;
            }
            "t_max_factor" => {
                let v = parse_f64(key, value)?;
                require(v >= 1.0, || {
                    format!("{key} = {v} out of range; requires >= 1")
                })?;
                p.t_max_factor = v;
            }
            "hoop_coefficient" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.hoop_coefficient = v;
            }
            "causality_coefficient" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.causality_coefficient = v;
            }
            other => return Err(unknown_key("bound", other)),
        },
        Params::Distinguish(p) => match key {
            "delta_min" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0 && v <= std::f64::consts::PI, || {
                    format!("{key} = {v} out of range; requires 0 < delta <= pi")
                })?;
                p.delta_min = v;
            }
            "delta_max" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0 && v <= std::f64::consts::PI, || {
                    format!("{key} = {v} out of range; requires 0 < delta <= pi")
                })?;
                p.delta_max = v;
            }
            "delta_steps" => {
                let v = parse_usize(key, value)?;
                require(v >= 1, || {
                    format!("{key} = {v} out of range; requires >= 1")
                })?;
                p.delta_steps = v;
            }
            "mesh" => {
                let v = parse_usize(key, value)?;
                require(v >= 8, || {
                    format!("{key} = {v} out of range; requires >= 8")
                })?;
                p.mesh = v;
            }
            "grid_epsilon" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0 && v <= std::f64::consts::PI, || {
                    format!("{key} = {v} out of range; requires 0 < epsilon <= pi")
                })?;
                p.grid_epsilon = v;
            }
            "demo_displacement" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.demo_displacement = v;
            }
            "demo_states" => {
                let v = parse_usize(key, value)?;
                require(v >= 1, || {
                    format!("{key} = {v} out of range; requires >= 1")
                })?;
                p.demo_states = v;
            }
            other => return Err(unknown_key("distinguish", other)),
        },
        Params::Lattice(p) => match key {
            "n_sites" => {
                let v = parse_usize(key, value)?;
                require(v >= 4 && v % 2 == 0, || {
                    format!("{key} = {v} out of range; requires even and >= 4")
                })?;
                p.n_sites = v;
            }
            "length" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.length = v;
            }
            "sigma" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.sigma = v;
            }
            "mass" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.mass = v;
            }
            "evolve_time" => {
                let v = parse_f64(key, value)?;
                require(v >= 0.0, || {
                    format!("{key} = {v} out of range; requires >= 0")
                })?;
                p.evolve_time = v;
            }
            "n_random" => {
                let v = parse_usize(key, value)?;
                require(v >= 1, || {
                    format!("{key} = {v} out of range; requires >= 1")
                })?;
                p.n_random = v;
            }
            "trace_sizes" => {
                let items: Result<Vec<usize>, String> = value
                    .split(',')
                    .map(|s| parse_usize(key, s.trim()))
                    .collect();
                let items = items?;
                require(!items.is_empty(), || {
                    format!("{key} must list at least one size")
                })?;
                for &n in &items {
                    require(n >= 4 && n % 2 == 0, || {
                        format!("{key} entry {n} out of range; requires even and >= 4")
                    })?;
                }
                p.trace_sizes = items;
            }
            other => return Err(unknown_key("lattice", other)),
        },
        Params::Circle(p) => match key {
            "mass" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.mass = v;
            }
            "radius" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0, || {
                    format!("{key} = {v} out of range; requires > 0")
                })?;
                p.radius = v;
            }
            "sigma_angle" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0 && v <= 0.3, || {
                    format!(
                        "{key} = {v} out of range; requires 0 < sigma_angle <= 0.3 \
                         (packet must stay clear of the branch cut)"
                    )
                })?;
                p.sigma_angle = v;
            }
            "n_sites" => {
                let v = parse_usize(key, value)?;
                require(v >= 4 && v % 2 == 0, || {
                    format!("{key} = {v} out of range; requires even and >= 4")
                })?;
                p.n_sites = v;
            }
            "t_values" => {
                let v = parse_f64_list(key, value)?;
                require(v.len() >= 2, || {
                    format!("{key} must list at least two times for the linear fit")
                })?;
                for &t in &v {
                    require(t > 0.0, || {
                        format!("{key} entry {t} out of range; requires > 0")
                    })?;
                }
                p.t_values = v;
            }
            other => return Err(unknown_key("circle", other)),
        },
        Params::Holography(p) => match key {
            "epsilon" => {
                let v = parse_f64(key, value)?;
                require(v > 0.0 && v < 1.0, || {
                    format!("{key} = {v} out of range; requires 0 < epsilon < 1")
                })?;
                p.epsilon = v;
            }
            "n_values" => {
                let items: Result<Vec<u64>, String> =
                    value.split(',').map(|s| parse_u64(key, s.trim())).collect();
                let items = items?;
                require(items.len() >= 4, || {
                    format!("{key} must list at least 4 values for the slope fit")
                })?;
                for &n in &items {
                    require(n >= 1, || {
                        format!("{key} entry {n} out of range; requires >= 1")
                    })?;
                }
                p.n_values = items;
            }
            "trials" => {
                let v = parse_u64(key, value)?;
                require(v >= 100, || {
                    format!("{key} = {v} out of range; requires >= 100")
                })?;
                p.trials = v;
            }
            "mode" => {
                p.mode = match value {
                    "fixed" => minangle::holography::MagnitudeMode::FixedMagnitudeRandomDirection,
                    "gaussian" => minangle::holography::MagnitudeMode::GaussianMagnitude,
                    other => return Err(format!("unknown mode {other:?}; valid: fixed, gaussian")),
                };
            }
            "phase" => {
                p.phase = match value {
                    "phase-free" => minangle::holography::PhaseConvention::PhaseFree,
                    "random-phase" => minangle::holography::PhaseConvention::RandomPhase,
                    other => {
                        return Err(format!(
                            "unknown phase {other:?}; valid: phase-free, random-phase"
                        ))
                    }
                };
            }
            "saturation_n" => {
                let v = parse_u64(key, value)?;
                require(v >= 1, || {
                    format!("{key} = {v} out of range; requires >= 1")
                })?;
                p.saturation_n = Some(v);
            }
            "saturation_trials" => {
                let v = parse_u64(key, value)?;
                require(v >= 100, || {
                    format!("{key} = {v} out of range; requires >= 100")
                })?;
                p.saturation_trials = v;
            }
            other => return Err(unknown_key("holography", other)),
        },
    }
    Ok(())
}

fn unknown_key(section: &str, key: &str) -> String {
    format!("unknown key {key:?} in section [{section}]")
}

/// Constraints that couple several keys; checked after all keys are set.
fn cross_validate(params: &Params) -> Vec<String> {
    let mut msgs = Vec::new();
    match params {
        Params::Bound(p) => {
            // The scan mass grid spans [m_max/100, m_max]; the feasible set
            // is nonempty only if its bottom sits below r / hoop_coefficient
            // and some grid time satisfies causality.
            if p.m_max_factor * p.hoop_coefficient >= 100.0 {
                msgs.push(format!(
                    "m_max_factor * hoop_coefficient = {} leaves no feasible mass in the \
                     scan window; requires < 100",
                    p.m_max_factor * p.hoop_coefficient
                ));
            }
            if p.causality_coefficient > p.t_max_factor {
                msgs.push(format!(
                    "causality_coefficient = {} exceeds t_max_factor = {}; no scan time \
                     can satisfy causality",
                    p.causality_coefficient, p.t_max_factor
                ));
            }
        }
        Params::Distinguish(p) => {
            if p.delta_min > p.delta_max {
                msgs.push(format!(
                    "delta_min = {} exceeds delta_max = {}",
                    p.delta_min, p.delta_max
                ));
            }
        }
        Params::Lattice(p) => {
            let spacing = p.length / p.n_sites as f64;
            let lo = 4.0 * spacing;
            let hi = p.length / 8.0;
            if !(p.sigma >= lo && p.sigma <= hi) {
                msgs.push(format!(
                    "sigma = {} out of range; requires [{lo}, {hi}] for n_sites = {} and \
                     length = {}",
                    p.sigma, p.n_sites, p.length
                ));
            }
        }
        Params::Circle(p) => {
            let spacing = std::f64::consts::TAU / p.n_sites as f64;
            let lo = 4.0 * spacing;
            if p.sigma_angle < lo {
                msgs.push(format!(
                    "sigma_angle = {} unresolvable on {} sites; requires >= {lo}",
                    p.sigma_angle, p.n_sites
                ));
            }
        }
        Params::Holography(p) => {
            let n_min = p.n_values.iter().min().copied().unwrap_or(1);
            let n_max = p.n_values.iter().max().copied().unwrap_or(1);
            if n_max < 10 * n_min {
                msgs.push(format!(
                    "n_values must span a decade for the slope fit, got [{n_min}, {n_max}]"
                ));
            }
            for &n in &p.n_values {
                let acc = n as f64 * p.epsilon * p.epsilon;
                if acc > minangle::holography::SMALL_REGIME_LIMIT {
                    msgs.push(format!(
                        "n = {n} has n * epsilon^2 = {acc} outside the small-accumulation \
                         regime (<= {}); move it to saturation_n",
                        minangle::holography::SMALL_REGIME_LIMIT
                    ));
                }
            }
        }
    }
    msgs
}

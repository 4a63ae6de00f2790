//! Seeded Monte-Carlo engine.
//!
//! Each trial draws fresh geometry for every link, estimates each link's
//! success probability with an inner sampling loop, converts it to a link
//! latency and composes the four PBFT phases. Trials run on the ambient
//! rayon pool; results do not depend on its size.

mod estimate;
mod rng;
pub mod stats;

pub use estimate::{estimate_link_ps, LinkScene, MIN_INNER_SAMPLES};
pub use rng::link_stream;

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;

use crate::analytic::{latency_bounds_mode, ps_to_latency, throughput, LatencyBounds};
use crate::consensus::{build_topology, pbft_overall_latency, LatencyMatrix, LinkType, ModeTopology, PhaseLatencies};
use crate::error::{Error, Result};
use crate::linkmodels::{dbm_to_watts, sample_ground_scene};
use crate::mathkit::{Probability, RateProfile};
use crate::mode::{LinkSet, Mode, ModeProfiles};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_INNER_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_TRANSACTION_BITS: u32 = 128;

/// Shortest inter-satellite separation drawn, as a fraction of the
/// line-of-sight limit.
const MIN_INTERSAT_FRACTION: f64 = 0.1;

/// Everything a Monte-Carlo run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n_nodes: usize,
    pub primary_index: usize,
    pub trials: usize,
    pub inner_samples: usize,
    pub master_seed: u64,
    pub links: LinkSet,
    pub profiles: ModeProfiles,
    /// Payload size; recorded only, the latency map has no payload term.
    pub transaction_bits: u32,
}

impl ExperimentConfig {
    /// Reference parameters for `mode` with `n_nodes` nodes, primary 0.
    pub fn reference(mode: Mode, n_nodes: usize) -> Self {
        Self {
            mode,
            n_nodes,
            primary_index: 0,
            trials: DEFAULT_TRIALS,
            inner_samples: DEFAULT_INNER_SAMPLES,
            master_seed: DEFAULT_SEED,
            links: LinkSet::reference(),
            profiles: ModeProfiles::reference(),
            transaction_bits: DEFAULT_TRANSACTION_BITS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        if self.inner_samples < MIN_INNER_SAMPLES {
            return Err(Error::config(format!(
                "inner_samples must be at least {MIN_INNER_SAMPLES}, got {}",
                self.inner_samples
            )));
        }
        self.links.validate_for(self.mode)?;
        self.topology().map(|_| ())
    }

    pub fn topology(&self) -> Result<ModeTopology> {
        build_topology(self.mode, self.n_nodes, self.primary_index)
    }

    pub fn profile(&self) -> &RateProfile {
        self.profiles.for_mode(self.mode)
    }

    /// Closed-form bounds for this configuration.
    pub fn bounds(&self) -> Result<LatencyBounds> {
        latency_bounds_mode(self.mode, &self.links, &self.profiles)
    }
}

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub phases: PhaseLatencies<f64>,
    pub tps: f64,
    pub link_latencies_s: LatencyMatrix<f64>,
}

impl TrialOutcome {
    pub fn latency_s(&self) -> f64 {
        self.phases.total_s
    }
}

/// Runs trial `trial_index`; a pure function of `(config, trial_index)`.
pub fn run_trial(config: &ExperimentConfig, trial_index: u64) -> Result<TrialOutcome> {
    config.validate()?;
    let topology = config.topology()?;
    trial(config, &topology, trial_index)
}

fn trial(config: &ExperimentConfig, topology: &ModeTopology, trial_index: u64) -> Result<TrialOutcome> {
    let n = topology.n_nodes();
    let mut latency = LatencyCache::new(config.profile());
    let mut links = LatencyMatrix::new(n);
    let mut deferred = Vec::new();

    for (pair_index, (i, j)) in topology.pairs().enumerate() {
        let mut rng = link_stream(config.master_seed, trial_index, pair_index as u64);
        let ps = match topology.link_type(i, j) {
            LinkType::InterGround => {
                let params = config.links.ground()?;
                let scene = sample_ground_scene(params, &mut rng);
                estimate_link_ps(&LinkScene::InterGround { params, scene: &scene }, config.inner_samples, &mut rng)?
            }
            LinkType::SatGround => {
                let ground_node = if topology.node_kinds()[i] == crate::consensus::NodeKind::Ground { i } else { j };
                if Some(ground_node) != topology.representative() {
                    deferred.push((i, j, ground_node));
                    continue;
                }
                let params = config.links.satground()?;
                estimate_link_ps(&LinkScene::SatGround { params }, config.inner_samples, &mut rng)?
            }
            LinkType::InterSatellite => {
                let params = config.links.intersat()?;
                let d_max = params.max_distance_km()?;
                let u: f64 = rng.random();
                let distance_km = d_max * (1.0 - (1.0 - MIN_INTERSAT_FRACTION) * u);
                let scene = LinkScene::InterSatellite { params, distance_km };
                estimate_link_ps(&scene, config.inner_samples, &mut rng)?
            }
        };
        links.set(i, j, latency.get(ps)?);
    }

    // Ground nodes other than the representative reach the satellite
    // through it.
    if let Some(rep) = topology.representative() {
        let sat = n - 1;
        let relay = links.get(rep, sat).ok_or_else(|| Error::config("representative link missing"))?;
        for (i, j, x) in deferred {
            let hop = links.get(x, rep).ok_or_else(|| Error::config("ground link missing"))?;
            links.set(i, j, hop.max(relay));
        }
    }

    let phases = pbft_overall_latency(topology, &links)?;
    Ok(TrialOutcome { phases, tps: throughput(phases.total_s)?, link_latencies_s: links })
}

/// Memoizes the latency map per trial; most links land on the same clamped
/// probability.
struct LatencyCache<'a> {
    profile: &'a RateProfile,
    seen: HashMap<u64, f64>,
}

impl<'a> LatencyCache<'a> {
    fn new(profile: &'a RateProfile) -> Self {
        Self { profile, seen: HashMap::new() }
    }

    fn get(&mut self, ps: Probability) -> Result<f64> {
        let key = ps.value().to_bits();
        if let Some(&t) = self.seen.get(&key) {
            return Ok(t);
        }
        let t = ps_to_latency(ps, self.profile)?;
        self.seen.insert(key, t);
        Ok(t)
    }
}

/// Trial average with its 95% confidence half-width.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub mean_latency_s: f64,
    pub ci95_halfwidth_s: f64,
    /// Reciprocal of the mean latency.
    pub mean_tps: f64,
    pub trial_latencies_s: Vec<f64>,
}

/// Runs every trial on the current rayon pool and reduces in trial order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentSummary> {
    config.validate()?;
    let topology = config.topology()?;
    let latencies = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| trial(config, &topology, t).map(|o| o.latency_s()))
        .collect::<Result<Vec<f64>>>()?;
    let mean_latency_s = stats::mean(&latencies).expect("trials >= 1");
    Ok(ExperimentSummary {
        mean_latency_s,
        ci95_halfwidth_s: stats::ci95_halfwidth(&latencies),
        mean_tps: throughput(mean_latency_s)?,
        trial_latencies_s: latencies,
    })
}

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Transmit power in dBm, applied to every configured link type.
    TxPowerDbm,
    NNodes,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::TxPowerDbm => "tx_power_dbm",
            Axis::NNodes => "n_nodes",
        }
    }

    /// Returns `config` with this axis set to `value`.
    pub fn apply(self, config: &ExperimentConfig, value: f64) -> Result<ExperimentConfig> {
        let mut c = config.clone();
        match self {
            Axis::TxPowerDbm => {
                if !value.is_finite() {
                    return Err(Error::config(format!("tx_power_dbm must be finite, got {value}")));
                }
                c.links.set_tx_power_w(dbm_to_watts(value));
            }
            Axis::NNodes => {
                if value.fract() != 0.0 || value < 0.0 || !value.is_finite() {
                    return Err(Error::config(format!("n_nodes must be a whole number, got {value}")));
                }
                c.n_nodes = value as usize;
            }
        }
        Ok(c)
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tx_power_dbm" => Ok(Axis::TxPowerDbm),
            "n_nodes" => Ok(Axis::NNodes),
            _ => Err(Error::config(format!("axis must be tx_power_dbm or n_nodes, got {s:?}"))),
        }
    }
}

/// Columns of a sweep, one entry per axis value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    pub mean_latency_s: Vec<f64>,
    pub ci95_halfwidth_s: Vec<f64>,
    pub mean_tps: Vec<f64>,
    pub bound_lower_s: Vec<f64>,
    pub bound_upper_s: Vec<f64>,
    pub per_trial_latencies: Option<Vec<Vec<f64>>>,
}

impl SweepResult {
    pub fn axis_name(&self) -> &'static str {
        self.axis.name()
    }

    pub fn len(&self) -> usize {
        self.axis_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis_values.is_empty()
    }
}

/// Runs one experiment per axis value and attaches the closed-form bounds.
pub fn sweep(config: &ExperimentConfig, axis: Axis, values: &[f64]) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::config("sweep needs at least one axis value"));
    }
    let mut out = SweepResult {
        axis,
        axis_values: values.to_vec(),
        mean_latency_s: Vec::with_capacity(values.len()),
        ci95_halfwidth_s: Vec::with_capacity(values.len()),
        mean_tps: Vec::with_capacity(values.len()),
        bound_lower_s: Vec::with_capacity(values.len()),
        bound_upper_s: Vec::with_capacity(values.len()),
        per_trial_latencies: Some(Vec::with_capacity(values.len())),
    };
    for &v in values {
        let c = axis.apply(config, v)?;
        let summary = run_experiment(&c)?;
        let bounds = c.bounds()?;
        out.mean_latency_s.push(summary.mean_latency_s);
        out.ci95_halfwidth_s.push(summary.ci95_halfwidth_s);
        out.mean_tps.push(summary.mean_tps);
        out.bound_lower_s.push(bounds.t_lower_s);
        out.bound_upper_s.push(bounds.t_upper_s);
        if let Some(all) = out.per_trial_latencies.as_mut() {
            all.push(summary.trial_latencies_s);
        }
    }
    Ok(out)
}

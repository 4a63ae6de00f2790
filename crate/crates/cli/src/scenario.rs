//! JSON scenario files.
//!
//! Every key is optional and falls back to the reference value. Keys with
//! a `_db`, `_dbm` or `_dbi` suffix are logarithmic and are converted to
//! linear units once, in [`Scenario::to_config`]. A link section set to
//! `null` removes that link type.

use std::path::Path;

use didsim::linkmodels::{db_to_linear, dbm_to_watts, GroundLinkParams, InterSatLinkParams, SatGroundLinkParams};
use didsim::mathkit::RateProfile;
use didsim::mode::{LinkSet, ModeProfiles};
use didsim::simulator::{self, ExperimentConfig};
use didsim::Mode;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario {
    pub mode: u8,
    pub n_nodes: usize,
    pub primary_index: usize,
    pub trials: usize,
    pub inner_samples: usize,
    pub master_seed: u64,
    pub transaction_bits: u32,
    pub profiles: ProfilesSection,
    #[serde(default = "some_default")]
    pub ground: Option<GroundSection>,
    #[serde(default = "some_default")]
    pub satground: Option<SatGroundSection>,
    #[serde(default = "some_default")]
    pub intersat: Option<InterSatSection>,
}

fn some_default<T: Default>() -> Option<T> {
    Some(T::default())
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            mode: 1,
            n_nodes: 5,
            primary_index: 0,
            trials: simulator::DEFAULT_TRIALS,
            inner_samples: simulator::DEFAULT_INNER_SAMPLES,
            master_seed: simulator::DEFAULT_SEED,
            transaction_bits: simulator::DEFAULT_TRANSACTION_BITS,
            profiles: ProfilesSection::default(),
            ground: Some(GroundSection::default()),
            satground: Some(SatGroundSection::default()),
            intersat: Some(InterSatSection::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    pub bandwidth_hz: f64,
    pub subcarriers: u32,
    pub capacity_bps: f64,
    pub rate_bps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfilesSection {
    pub mode1: ProfileSection,
    pub mode2: ProfileSection,
    pub mode3: ProfileSection,
}

impl Default for ProfilesSection {
    fn default() -> Self {
        let p = |bandwidth_hz, capacity_bps, rate_bps| ProfileSection {
            bandwidth_hz,
            subcarriers: 1,
            capacity_bps,
            rate_bps,
        };
        Self { mode1: p(1e3, 8e3, 5e3), mode2: p(1e3, 8e3, 3e3), mode3: p(20e6, 200e6, 80e6) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GroundSection {
    pub tx_power_dbm: f64,
    pub carrier_hz: f64,
    pub noise_dbm: f64,
    pub intensity_per_km2: f64,
    pub interference_radius_km: f64,
    pub d_min_km: f64,
    pub d_max_km: f64,
    pub snr_threshold_db: f64,
    pub epsilon: f64,
}

impl Default for GroundSection {
    fn default() -> Self {
        Self {
            tx_power_dbm: 40.0,
            carrier_hz: 2e9,
            noise_dbm: -104.0,
            intensity_per_km2: 8000.0,
            interference_radius_km: 0.1,
            d_min_km: 0.02,
            d_max_km: 0.08,
            snr_threshold_db: -100.0,
            epsilon: 1e-14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SatGroundSection {
    pub tx_power_dbm: f64,
    pub antenna_gain_dbi: f64,
    pub carrier_hz: f64,
    pub noise_w: f64,
    pub distance_km: f64,
    pub fading_b0: f64,
    pub fading_m0: f64,
    pub fading_omega: f64,
    pub snr_threshold_db: f64,
}

impl Default for SatGroundSection {
    fn default() -> Self {
        Self {
            tx_power_dbm: 40.0,
            antenna_gain_dbi: 38.0,
            carrier_hz: 2e9,
            noise_w: 7.96e-12,
            distance_km: 550.0,
            fading_b0: 0.851,
            fading_m0: 2.91,
            fading_omega: 0.278,
            snr_threshold_db: -100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InterSatSection {
    pub tx_power_dbm: f64,
    pub antenna_gain_dbi: f64,
    pub carrier_hz: f64,
    pub noise_w: f64,
    pub pointing_variance_rad: f64,
    pub pointing_eta: f64,
    pub pointing_a0: f64,
    pub altitude_i_km: f64,
    pub altitude_j_km: f64,
    pub earth_radius_km: f64,
    pub snr_threshold_db: f64,
}

impl Default for InterSatSection {
    fn default() -> Self {
        Self {
            tx_power_dbm: 40.0,
            antenna_gain_dbi: 160.0,
            carrier_hz: 26e9,
            noise_w: 1e-13,
            pointing_variance_rad: 0.015,
            pointing_eta: 1.00526,
            pointing_a0: 0.01979,
            altitude_i_km: 550.0,
            altitude_j_km: 550.0,
            earth_radius_km: 6371.0,
            snr_threshold_db: -100.0,
        }
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("scenario: {e}")))
    }

    /// Reads a scenario file; parse errors carry the path, line and column.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read scenario {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Pretty JSON with every default written out.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn mode(&self) -> Result<Mode, CliError> {
        Mode::try_from(self.mode).map_err(CliError::from)
    }

    /// Converts to linear units and validates the links the mode needs.
    pub fn to_config(&self) -> Result<ExperimentConfig, CliError> {
        let profile = |p: &ProfileSection| {
            RateProfile::from_bitrates(p.bandwidth_hz, p.subcarriers, p.capacity_bps, p.rate_bps)
        };
        let profiles = ModeProfiles {
            ground_chain: profile(&self.profiles.mode1)?,
            satellite_assisted: profile(&self.profiles.mode2)?,
            satellite_chain: profile(&self.profiles.mode3)?,
        };
        let links = LinkSet {
            ground: self.ground.map(|g| GroundLinkParams {
                tx_power_w: dbm_to_watts(g.tx_power_dbm),
                carrier_hz: g.carrier_hz,
                noise_w: dbm_to_watts(g.noise_dbm),
                intensity_per_km2: g.intensity_per_km2,
                interference_radius_km: g.interference_radius_km,
                d_min_km: g.d_min_km,
                d_max_km: g.d_max_km,
                snr_threshold: db_to_linear(g.snr_threshold_db),
                epsilon: g.epsilon,
            }),
            satground: self.satground.map(|s| SatGroundLinkParams {
                tx_power_w: dbm_to_watts(s.tx_power_dbm),
                antenna_gain: db_to_linear(s.antenna_gain_dbi),
                carrier_hz: s.carrier_hz,
                noise_w: s.noise_w,
                distance_km: s.distance_km,
                fading_b0: s.fading_b0,
                fading_m0: s.fading_m0,
                fading_omega: s.fading_omega,
                snr_threshold: db_to_linear(s.snr_threshold_db),
            }),
            intersat: self.intersat.map(|s| InterSatLinkParams {
                tx_power_w: dbm_to_watts(s.tx_power_dbm),
                antenna_gain: db_to_linear(s.antenna_gain_dbi),
                carrier_hz: s.carrier_hz,
                noise_w: s.noise_w,
                pointing_variance: s.pointing_variance_rad,
                pointing_eta: s.pointing_eta,
                pointing_a0: s.pointing_a0,
                altitude_i_km: s.altitude_i_km,
                altitude_j_km: s.altitude_j_km,
                earth_radius_km: s.earth_radius_km,
                snr_threshold: db_to_linear(s.snr_threshold_db),
            }),
        };
        let config = ExperimentConfig {
            mode: self.mode()?,
            n_nodes: self.n_nodes,
            primary_index: self.primary_index,
            trials: self.trials,
            inner_samples: self.inner_samples,
            master_seed: self.master_seed,
            links,
            profiles,
            transaction_bits: self.transaction_bits,
        };
        config.validate()?;
        Ok(config)
    }
}

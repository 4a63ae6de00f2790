//! Deployment modes and the parameter sets each one needs.

use std::fmt;

use crate::error::{Error, Result};
use crate::linkmodels::{GroundLinkParams, InterSatLinkParams, SatGroundLinkParams};
use crate::mathkit::RateProfile;
use crate::Real;

/// Where the chain nodes live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Mode 1: every chain node is a ground node.
    GroundChain,
    /// Mode 2: ground chain with one satellite joining as a validator.
    SatelliteAssisted,
    /// Mode 3: every chain node is a satellite.
    SatelliteChain,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::GroundChain, Mode::SatelliteAssisted, Mode::SatelliteChain];

    pub fn index(self) -> u8 {
        match self {
            Mode::GroundChain => 1,
            Mode::SatelliteAssisted => 2,
            Mode::SatelliteChain => 3,
        }
    }
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Mode::GroundChain),
            2 => Ok(Mode::SatelliteAssisted),
            3 => Ok(Mode::SatelliteChain),
            _ => Err(Error::config(format!("mode must be 1, 2 or 3, got {v}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// One rate profile per mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProfiles<R: Real = f64> {
    pub ground_chain: RateProfile<R>,
    pub satellite_assisted: RateProfile<R>,
    pub satellite_chain: RateProfile<R>,
}

impl ModeProfiles<f64> {
    /// 1 kHz / 8 kbps / 5 kbps, 1 kHz / 8 kbps / 3 kbps and
    /// 20 MHz / 200 Mbps / 80 Mbps on a single subcarrier.
    pub fn reference() -> Self {
        let profile = |b, c, r| RateProfile::from_bitrates(b, 1, c, r).expect("reference profile");
        Self {
            ground_chain: profile(1e3, 8e3, 5e3),
            satellite_assisted: profile(1e3, 8e3, 3e3),
            satellite_chain: profile(20e6, 200e6, 80e6),
        }
    }
}

impl<R: Real> ModeProfiles<R> {
    pub fn for_mode(&self, mode: Mode) -> &RateProfile<R> {
        match mode {
            Mode::GroundChain => &self.ground_chain,
            Mode::SatelliteAssisted => &self.satellite_assisted,
            Mode::SatelliteChain => &self.satellite_chain,
        }
    }
}

/// Channel parameters for whichever link types are configured.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkSet<R: Real = f64> {
    pub ground: Option<GroundLinkParams<R>>,
    pub satground: Option<SatGroundLinkParams<R>>,
    pub intersat: Option<InterSatLinkParams<R>>,
}

impl LinkSet<f64> {
    pub fn reference() -> Self {
        Self {
            ground: Some(GroundLinkParams::reference()),
            satground: Some(SatGroundLinkParams::reference()),
            intersat: Some(InterSatLinkParams::reference()),
        }
    }
}

impl<R: Real> LinkSet<R> {
    pub fn ground(&self) -> Result<&GroundLinkParams<R>> {
        self.ground.as_ref().ok_or_else(|| missing("ground"))
    }

    pub fn satground(&self) -> Result<&SatGroundLinkParams<R>> {
        self.satground.as_ref().ok_or_else(|| missing("satground"))
    }

    pub fn intersat(&self) -> Result<&InterSatLinkParams<R>> {
        self.intersat.as_ref().ok_or_else(|| missing("intersat"))
    }

    /// Checks that every link type used by `mode` is present and valid.
    pub fn validate_for(&self, mode: Mode) -> Result<()> {
        match mode {
            Mode::GroundChain => self.ground()?.validate(),
            Mode::SatelliteAssisted => {
                self.ground()?.validate()?;
                self.satground()?.validate()
            }
            Mode::SatelliteChain => self.intersat()?.validate(),
        }
    }

    /// Sets the transmit power of every configured link type.
    pub fn set_tx_power_w(&mut self, watts: R) {
        if let Some(g) = self.ground.as_mut() {
            g.tx_power_w = watts;
        }
        if let Some(sg) = self.satground.as_mut() {
            sg.tx_power_w = watts;
        }
        if let Some(s) = self.intersat.as_mut() {
            s.tx_power_w = watts;
        }
    }
}

fn missing(which: &str) -> Error {
    Error::config(format!("{which} link parameters are required for this mode"))
}

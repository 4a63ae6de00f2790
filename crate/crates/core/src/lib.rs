//! Consensus latency and throughput model for a PBFT chain deployed on
//! ground nodes, satellites, or a mix of both.
//!
//! The crate is layered bottom-up:
//!
//! * [`mathkit`]: Gaussian tail, incomplete gamma, and the blocklength
//!   latency map `t = Φ⁻¹(Q⁻¹(1 - P))`.
//! * [`linkmodels`]: path loss, SINR/SNR expressions and random samplers
//!   for inter-ground, satellite-ground and inter-satellite links.
//! * [`analytic`]: closed-form success probabilities, their bounds, and the
//!   per-mode latency and throughput bounds.
//! * [`consensus`]: chain topologies and the four-phase PBFT latency.
//! * [`simulator`]: the seeded Monte-Carlo engine.
//!
//! The numerical layers are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix them to `f64`, which is what the simulator uses.

// Guards are written `!(x > 0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod consensus;
pub mod error;
pub mod linkmodels;
pub mod mathkit;
pub mod mode;
mod scalar;
pub mod simulator;

pub use error::{Error, Result};
pub use mode::Mode;
pub use scalar::Real;

pub type Probability64 = mathkit::Probability<f64>;
pub type RateProfile64 = mathkit::RateProfile<f64>;
pub type GroundLinkParams64 = linkmodels::GroundLinkParams<f64>;
pub type SatGroundLinkParams64 = linkmodels::SatGroundLinkParams<f64>;
pub type InterSatLinkParams64 = linkmodels::InterSatLinkParams<f64>;
pub type PsBounds64 = analytic::PsBounds<f64>;
pub type LatencyBounds64 = analytic::LatencyBounds<f64>;
pub type LinkSet64 = mode::LinkSet<f64>;
pub type ModeProfiles64 = mode::ModeProfiles<f64>;
pub type PhaseLatencies64 = consensus::PhaseLatencies<f64>;
pub type LatencyMatrix64 = consensus::LatencyMatrix<f64>;

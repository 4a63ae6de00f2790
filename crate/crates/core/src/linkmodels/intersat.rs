use rand::Rng;

use super::{free_space, require_positive};
use crate::analytic::max_visible_distance;
use crate::error::{Error, Result};
use crate::Real;

/// Inter-satellite link with beam pointing error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterSatLinkParams<R: Real = f64> {
    pub tx_power_w: R,
    /// Effective antenna gain, linear.
    pub antenna_gain: R,
    pub carrier_hz: R,
    pub noise_w: R,
    /// Rayleigh scale ς of the pointing deviation, radians.
    pub pointing_variance: R,
    pub pointing_eta: R,
    /// Largest pointing loss factor `A₀`.
    pub pointing_a0: R,
    pub altitude_i_km: R,
    pub altitude_j_km: R,
    pub earth_radius_km: R,
    pub snr_threshold: R,
}

impl InterSatLinkParams<f64> {
    /// 40 dBm, 160 dBi at 26 GHz, noise 1e-13 W, ς = 15 mrad,
    /// η = 1.00526, A₀ = 0.01979, both satellites at 550 km, -100 dB threshold.
    pub fn reference() -> Self {
        Self {
            tx_power_w: 10.0,
            antenna_gain: 1e16,
            carrier_hz: 26e9,
            noise_w: 1e-13,
            pointing_variance: 0.015,
            pointing_eta: 1.00526,
            pointing_a0: 0.01979,
            altitude_i_km: 550.0,
            altitude_j_km: 550.0,
            earth_radius_km: 6371.0,
            snr_threshold: 1e-10,
        }
    }
}

impl<R: Real> InterSatLinkParams<R> {
    pub fn validate(&self) -> Result<()> {
        require_positive("intersat tx_power_w", self.tx_power_w)?;
        require_positive("intersat antenna_gain", self.antenna_gain)?;
        require_positive("intersat carrier_hz", self.carrier_hz)?;
        require_positive("intersat noise_w", self.noise_w)?;
        require_positive("intersat pointing_variance", self.pointing_variance)?;
        require_positive("intersat pointing_eta", self.pointing_eta)?;
        require_positive("intersat pointing_a0", self.pointing_a0)?;
        require_positive("intersat altitude_i_km", self.altitude_i_km)?;
        require_positive("intersat altitude_j_km", self.altitude_j_km)?;
        require_positive("intersat earth_radius_km", self.earth_radius_km)?;
        require_positive("intersat snr_threshold", self.snr_threshold)?;
        if !(self.pointing_variance < R::one()) {
            return Err(Error::config(format!(
                "intersat pointing_variance must be below 1 rad, got {}",
                self.pointing_variance
            )));
        }
        Ok(())
    }

    /// Probability that the beams are aligned, `1 - ς²`.
    pub fn alignment_probability(&self) -> R {
        R::one() - self.pointing_variance * self.pointing_variance
    }

    /// Line-of-sight limit for the two configured altitudes, km.
    pub fn max_distance_km(&self) -> Result<R> {
        max_visible_distance(self.altitude_i_km, self.altitude_j_km, self.earth_radius_km)
    }
}

/// Draws the pointing loss factor `W ∈ [0, A₀]`.
///
/// With probability `1 - ς²` the beams are aligned and `W = A₀ U^{1/η²}`,
/// the inverse CDF of `(w / A₀)^{η²}`; otherwise the link is misaligned and
/// `W = 0`.
pub fn sample_pointing_loss<R: Real, G: Rng + ?Sized>(params: &InterSatLinkParams<R>, rng: &mut G) -> R {
    let misaligned = R::lit(rng.random::<f64>()) < params.pointing_variance * params.pointing_variance;
    // Always consume both draws so the stream position does not depend on the outcome.
    let u = R::lit(1.0 - rng.random::<f64>());
    if misaligned {
        return R::zero();
    }
    let eta_sq = params.pointing_eta * params.pointing_eta;
    params.pointing_a0 * u.powf(R::one() / eta_sq)
}

/// `γ = p G W L(d) / σ²` at a separation of `distance_km`.
pub fn snr_intersat<R: Real>(params: &InterSatLinkParams<R>, pointing_loss: R, distance_km: R) -> R {
    params.tx_power_w * params.antenna_gain * pointing_loss
        * free_space(distance_km * R::lit(1000.0), params.carrier_hz)
        / params.noise_w
}

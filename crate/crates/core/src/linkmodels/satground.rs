use rand::Rng;
use rand_distr::{Distribution, Gamma};

use super::{free_space, require_positive};
use crate::error::{Error, Result};
use crate::mathkit::gamma_params_from_shadowed_rician;
use crate::Real;

/// Satellite-ground link with Shadowed-Rician fading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatGroundLinkParams<R: Real = f64> {
    pub tx_power_w: R,
    /// Effective antenna gain, linear.
    pub antenna_gain: R,
    pub carrier_hz: R,
    pub noise_w: R,
    pub distance_km: R,
    /// Half the average power of the scattered component.
    pub fading_b0: R,
    /// Nakagami parameter of the line-of-sight component.
    pub fading_m0: R,
    /// Average power of the line-of-sight component.
    pub fading_omega: R,
    pub snr_threshold: R,
}

impl SatGroundLinkParams<f64> {
    /// 40 dBm, 38 dBi at 2 GHz over 550 km, noise 7.96e-12 W, average
    /// shadowing (b0, m0, Ω) = (0.851, 2.91, 0.278), -100 dB threshold.
    pub fn reference() -> Self {
        Self {
            tx_power_w: 10.0,
            antenna_gain: 10f64.powf(3.8),
            carrier_hz: 2e9,
            noise_w: 7.96e-12,
            distance_km: 550.0,
            fading_b0: 0.851,
            fading_m0: 2.91,
            fading_omega: 0.278,
            snr_threshold: 1e-10,
        }
    }
}

impl<R: Real> SatGroundLinkParams<R> {
    pub fn validate(&self) -> Result<()> {
        require_positive("satground tx_power_w", self.tx_power_w)?;
        require_positive("satground antenna_gain", self.antenna_gain)?;
        require_positive("satground carrier_hz", self.carrier_hz)?;
        require_positive("satground noise_w", self.noise_w)?;
        require_positive("satground distance_km", self.distance_km)?;
        require_positive("satground fading_b0", self.fading_b0)?;
        require_positive("satground fading_m0", self.fading_m0)?;
        require_positive("satground fading_omega", self.fading_omega)?;
        require_positive("satground snr_threshold", self.snr_threshold)?;
        Ok(())
    }

    /// Gamma `(shape, scale)` of the fading power gain `|h|²`.
    pub fn gamma_params(&self) -> Result<(R, R)> {
        gamma_params_from_shadowed_rician(self.fading_b0, self.fading_m0, self.fading_omega)
    }

    /// SNR per unit fading gain, `p G L(d) / σ²`.
    pub fn snr_per_unit_gain(&self) -> R {
        self.tx_power_w * self.antenna_gain * free_space(self.distance_km * R::lit(1000.0), self.carrier_hz)
            / self.noise_w
    }

    pub fn fading_sampler(&self) -> Result<FadingSampler> {
        let (alpha, beta) = self.gamma_params()?;
        FadingSampler::new(alpha.as_f64(), beta.as_f64())
    }
}

/// Reusable Gamma(α, β) sampler for the fading power gain.
#[derive(Debug, Clone, Copy)]
pub struct FadingSampler {
    gamma: Gamma<f64>,
}

impl FadingSampler {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        Gamma::new(shape, scale)
            .map(|gamma| Self { gamma })
            .map_err(|e| Error::config(format!("invalid fading distribution: {e}")))
    }

    pub fn sample<R: Real, G: Rng + ?Sized>(&self, rng: &mut G) -> R {
        R::lit(self.gamma.sample(rng))
    }
}

/// Draws `|h|²` from the Gamma law matching the Shadowed-Rician parameters.
pub fn sample_fading_gain<R: Real, G: Rng + ?Sized>(
    params: &SatGroundLinkParams<R>,
    rng: &mut G,
) -> Result<R> {
    Ok(params.fading_sampler()?.sample(rng))
}

/// `γ = p G |h|² L(d) / σ²`.
pub fn snr_satground<R: Real>(params: &SatGroundLinkParams<R>, fading_gain: R) -> R {
    params.snr_per_unit_gain() * fading_gain
}

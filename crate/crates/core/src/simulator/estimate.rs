use rand::Rng;

use crate::error::{Error, Result};
use crate::linkmodels::{
    sample_pointing_loss, sinr_ground, snr_intersat, snr_satground, GroundLinkParams, GroundScene,
    InterSatLinkParams, SatGroundLinkParams,
};
use crate::mathkit::Probability;

/// Smallest inner sample count accepted by [`estimate_link_ps`].
pub const MIN_INNER_SAMPLES: usize = 100;

/// Geometry of one link, frozen for the duration of a trial.
#[derive(Debug, Clone, Copy)]
pub enum LinkScene<'a> {
    /// Link distance and interferer radii are fixed; the SINR is too.
    InterGround { params: &'a GroundLinkParams, scene: &'a GroundScene },
    /// Fixed slant range; fresh fading gain per sample.
    SatGround { params: &'a SatGroundLinkParams },
    /// Fixed separation; fresh pointing loss per sample.
    InterSatellite { params: &'a InterSatLinkParams, distance_km: f64 },
}

/// Fraction of `inner_samples` channel realizations whose SNR/SINR reaches
/// the link's threshold, clamped into a [`Probability`].
pub fn estimate_link_ps<G: Rng + ?Sized>(
    scene: &LinkScene<'_>,
    inner_samples: usize,
    rng: &mut G,
) -> Result<Probability> {
    if inner_samples < MIN_INNER_SAMPLES {
        return Err(Error::config(format!(
            "inner_samples must be at least {MIN_INNER_SAMPLES}, got {inner_samples}"
        )));
    }
    let hits = match *scene {
        LinkScene::InterGround { params, scene } => {
            // No small-scale fading in the ground model: every realization
            // with this geometry gives the same SINR.
            let sinr = sinr_ground(params, scene.d0_km, &scene.interferer_distances_km);
            if sinr >= params.snr_threshold {
                inner_samples
            } else {
                0
            }
        }
        LinkScene::SatGround { params } => {
            let sampler = params.fading_sampler()?;
            (0..inner_samples)
                .filter(|_| snr_satground(params, sampler.sample::<f64, _>(rng)) >= params.snr_threshold)
                .count()
        }
        LinkScene::InterSatellite { params, distance_km } => (0..inner_samples)
            .filter(|_| {
                let w = sample_pointing_loss(params, rng);
                snr_intersat(params, w, distance_km) >= params.snr_threshold
            })
            .count(),
    };
    Ok(Probability::new(hits as f64 / inner_samples as f64))
}

use rand::Rng;

use super::{free_space, require_positive};
use crate::error::{Error, Result};
use crate::Real;

/// Inter-ground link in a Poisson field of co-channel interferers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundLinkParams<R: Real = f64> {
    pub tx_power_w: R,
    pub carrier_hz: R,
    pub noise_w: R,
    /// Node intensity of the Poisson field, per km².
    pub intensity_per_km2: R,
    pub interference_radius_km: R,
    /// Smallest distance between two chain nodes.
    pub d_min_km: R,
    /// Largest distance between two chain nodes.
    pub d_max_km: R,
    /// Decoding threshold on the SINR, linear.
    pub snr_threshold: R,
    /// Slack used by the probability bounds, `0 < ε < threshold`.
    pub epsilon: R,
}

impl GroundLinkParams<f64> {
    /// Reference parameters: 40 dBm at 2 GHz, -104 dBm noise, 8000 nodes
    /// per km² within 100 m, chain nodes 20 to 80 m apart, -100 dB threshold.
    pub fn reference() -> Self {
        Self {
            tx_power_w: 10.0,
            carrier_hz: 2e9,
            noise_w: 10f64.powf(-13.4),
            intensity_per_km2: 8000.0,
            interference_radius_km: 0.1,
            d_min_km: 0.02,
            d_max_km: 0.08,
            snr_threshold: 1e-10,
            epsilon: 1e-14,
        }
    }
}

impl<R: Real> GroundLinkParams<R> {
    pub fn validate(&self) -> Result<()> {
        require_positive("ground tx_power_w", self.tx_power_w)?;
        require_positive("ground carrier_hz", self.carrier_hz)?;
        require_positive("ground noise_w", self.noise_w)?;
        require_positive("ground intensity_per_km2", self.intensity_per_km2)?;
        require_positive("ground interference_radius_km", self.interference_radius_km)?;
        require_positive("ground d_min_km", self.d_min_km)?;
        require_positive("ground d_max_km", self.d_max_km)?;
        require_positive("ground snr_threshold", self.snr_threshold)?;
        require_positive("ground epsilon", self.epsilon)?;
        if !(self.d_min_km < self.d_max_km && self.d_max_km <= self.interference_radius_km) {
            return Err(Error::config(format!(
                "ground distances must satisfy d_min_km < d_max_km <= interference_radius_km, \
                 got {} / {} / {}",
                self.d_min_km, self.d_max_km, self.interference_radius_km
            )));
        }
        if !(self.epsilon < self.snr_threshold) {
            return Err(Error::config(format!(
                "ground epsilon ({}) must be below snr_threshold ({})",
                self.epsilon, self.snr_threshold
            )));
        }
        Ok(())
    }

    /// `K = ⌈π λ D²⌉`, the number of interferers inside the interference disc.
    pub fn interferer_count(&self) -> usize {
        let mean = R::PI() * self.intensity_per_km2 * self.interference_radius_km.powi(2);
        mean.ceil().to_usize().unwrap_or(usize::MAX)
    }
}

/// One realization of the ground geometry seen by a receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundScene<R: Real = f64> {
    pub d0_km: R,
    pub interferer_distances_km: Vec<R>,
}

/// Draws the link distance and the interferer distances for one receiver.
///
/// The link distance follows the nearest-neighbour law of the Poisson field,
/// `f(d) = 2πλ d e^{-λπd²}`, truncated to `[d_min_km, d_max_km]` and sampled
/// by inverse CDF. Each of the `K` interferers sits at a radius with density
/// `2d / D²` on `(0, D]`.
pub fn sample_ground_scene<R: Real, G: Rng + ?Sized>(
    params: &GroundLinkParams<R>,
    rng: &mut G,
) -> GroundScene<R> {
    let rate = params.intensity_per_km2 * R::PI();
    let lo2 = params.d_min_km * params.d_min_km;
    let span = rate * (params.d_max_km * params.d_max_km - lo2);
    // d² - d_l² is exponential with the given rate, truncated at span / rate.
    let v = R::lit(rng.random::<f64>());
    let d0_sq = lo2 - (v * (-span).exp_m1()).ln_1p() / rate;
    let d0_km = d0_sq.sqrt().max(params.d_min_km).min(params.d_max_km);

    let radius = params.interference_radius_km;
    let interferer_distances_km = (0..params.interferer_count())
        .map(|_| radius * R::lit(1.0 - rng.random::<f64>()).sqrt())
        .collect();
    GroundScene { d0_km, interferer_distances_km }
}

/// SINR of the inter-ground link; every interferer transmits at the same power.
pub fn sinr_ground<R: Real>(params: &GroundLinkParams<R>, d0_km: R, interferer_distances_km: &[R]) -> R {
    let km = R::lit(1000.0);
    let f = params.carrier_hz;
    let p = params.tx_power_w;
    let signal = p * free_space(d0_km * km, f);
    let interference = interferer_distances_km
        .iter()
        .fold(R::zero(), |acc, &d| acc + p * free_space(d * km, f));
    signal / (interference + params.noise_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkmodels::path_loss;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ks_statistic(mut samples: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = samples.len() as f64;
        samples
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn interferer_count_reference() {
        assert_eq!(GroundLinkParams::reference().interferer_count(), 252);
    }

    #[test]
    fn reference_validates() {
        GroundLinkParams::reference().validate().unwrap();
        let mut p = GroundLinkParams::reference();
        p.d_max_km = 0.2;
        assert!(p.validate().is_err());
        let mut p = GroundLinkParams::reference();
        p.epsilon = 1.0;
        assert!(p.validate().is_err());
        let mut p = GroundLinkParams::reference();
        p.noise_w = 0.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn interferer_radial_law() {
        let params = GroundLinkParams::reference();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut all = Vec::new();
        while all.len() < 100_000 {
            let scene = sample_ground_scene(&params, &mut rng);
            assert_eq!(scene.interferer_distances_km.len(), 252);
            all.extend(scene.interferer_distances_km);
        }
        all.truncate(100_000);
        assert!(all.iter().all(|&d| d > 0.0 && d <= 0.1));
        let ks = ks_statistic(all, |d| (d / 0.1).powi(2));
        assert!(ks < 0.01, "ks = {ks}");
    }

    #[test]
    fn link_distance_truncated_law() {
        // A sparse field so the truncated law is not squeezed against d_min.
        let params = GroundLinkParams { intensity_per_km2: 100.0, ..GroundLinkParams::reference() };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples: Vec<f64> =
            (0..20_000).map(|_| sample_ground_scene(&params, &mut rng).d0_km).collect();
        assert!(samples.iter().all(|&d| (0.02..=0.08).contains(&d)));
        let rate = 100.0 * std::f64::consts::PI;
        let cdf_raw = |d: f64| 1.0 - (-rate * d * d).exp();
        let (lo, hi) = (cdf_raw(0.02), cdf_raw(0.08));
        let ks = ks_statistic(samples, |d| (cdf_raw(d) - lo) / (hi - lo));
        assert!(ks < 0.015, "ks = {ks}");
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let params = GroundLinkParams::reference();
        let a = sample_ground_scene(&params, &mut ChaCha8Rng::seed_from_u64(3));
        let b = sample_ground_scene(&params, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }

    #[test]
    fn interference_free_reduces_to_snr() {
        let p = GroundLinkParams::reference();
        let sinr = sinr_ground(&p, 0.05, &[]);
        let snr = p.tx_power_w * path_loss(50.0, p.carrier_hz).unwrap() / p.noise_w;
        assert!(((sinr - snr) / snr).abs() < 1e-12);
    }

    #[test]
    fn equal_power_interferer() {
        let p = GroundLinkParams::reference();
        let sinr = sinr_ground(&p, 0.05, &[0.05]);
        let s = p.tx_power_w * path_loss(50.0, p.carrier_hz).unwrap();
        assert!(sinr < 1.0);
        assert!(((sinr - s / (s + p.noise_w)) / sinr).abs() < 1e-12);
    }

    #[test]
    fn hand_evaluated_sinr() {
        // 10 W, 2 GHz, d0 = 50 m, one interferer at 80 m, noise 10^-13.4 W.
        // mpmath: 2.559999541585681
        let p = GroundLinkParams::reference();
        let sinr = sinr_ground(&p, 0.05, &[0.08]);
        assert!(((sinr - 2.559_999_541_585_681) / sinr).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn closer_interferer_never_helps(
            d0 in 0.02f64..0.08,
            mut ds in proptest::collection::vec(0.001f64..0.1, 1..20),
            idx in 0usize..20,
            shrink in 0.05f64..1.0,
        ) {
            let p = GroundLinkParams::reference();
            let before = sinr_ground(&p, d0, &ds);
            let i = idx % ds.len();
            ds[i] *= shrink;
            prop_assert!(sinr_ground(&p, d0, &ds) <= before);
        }

        #[test]
        fn more_power_never_hurts(
            d0 in 0.02f64..0.08,
            ds in proptest::collection::vec(0.001f64..0.1, 0..20),
            scale in 1.0f64..1e4,
        ) {
            let p = GroundLinkParams::reference();
            let louder = GroundLinkParams { tx_power_w: p.tx_power_w * scale, ..p };
            let a = sinr_ground(&p, d0, &ds);
            let b = sinr_ground(&louder, d0, &ds);
            prop_assert!(b >= a * (1.0 - 1e-12));
        }
    }
}

use crate::error::{Error, Result};
use crate::linkmodels::{snr_intersat, GroundLinkParams, InterSatLinkParams, SatGroundLinkParams};
use crate::mathkit::{regularized_upper_gamma, Probability};
use crate::Real;

/// Lower and upper bound on a link's success probability.
///
/// Both ends are clamped and ordered; the unclamped values stay available
/// through [`PsBounds::raw_lower`] and [`PsBounds::raw_upper`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsBounds<R: Real = f64> {
    pub lower: Probability<R>,
    pub upper: Probability<R>,
}

impl<R: Real> PsBounds<R> {
    pub fn from_raw(a: R, b: R) -> Self {
        let (a, b) = (Probability::new(a), Probability::new(b));
        if a.value() <= b.value() {
            Self { lower: a, upper: b }
        } else {
            Self { lower: b, upper: a }
        }
    }

    pub fn raw_lower(&self) -> R {
        self.lower.raw()
    }

    pub fn raw_upper(&self) -> R {
        self.upper.raw()
    }

    pub fn contains(&self, p: R) -> bool {
        self.lower.value() <= p && p <= self.upper.value()
    }
}

/// Bounds on the inter-ground success probability in a Poisson interference
/// field.
///
/// With `K = ⌈πλD²⌉`,
///
/// ```text
/// lower = (1 - D²/4 · (e^{πλ d_u²} / ((γ₀ - ε) 2πλ d_u))^{2/K})^K
/// upper = 1 - (D²/4)^K · ((1 - ε) e^{πλ d_l²} / ((γ₀ - ε) 2πλ d_l))²
/// ```
///
/// Every product and power is taken in the log domain: at realistic
/// densities `(D²/4)^K` is far below the smallest `f64`.
pub fn ps_ground_bounds<R: Real>(params: &GroundLinkParams<R>) -> Result<PsBounds<R>> {
    params.validate()?;
    let two = R::lit(2.0);
    let pi_lambda = R::PI() * params.intensity_per_km2;
    let k = R::lit(params.interferer_count() as f64);
    let ln_quarter_disc = (params.interference_radius_km.powi(2) / R::lit(4.0)).ln();
    let ln_margin = (params.snr_threshold - params.epsilon).ln();
    let ln_density_term = |d: R| pi_lambda * d * d - ln_margin - (two * pi_lambda * d).ln();

    let ln_x = ln_quarter_disc + two / k * ln_density_term(params.d_max_km);
    let x = ln_x.exp();
    let raw_lower = if x < R::one() {
        (k * (-x).ln_1p()).exp()
    } else {
        // Vacuous bound; keep its signed value for diagnostics.
        (R::one() - x).powf(k)
    };

    let ln_y = k * ln_quarter_disc
        + two * ((-params.epsilon).ln_1p() + ln_density_term(params.d_min_km));
    let raw_upper = R::one() - ln_y.exp();

    Ok(PsBounds::from_raw(raw_lower, raw_upper))
}

/// Exact satellite-ground success probability,
/// `1 - γ(α, γ₀ σ² / (β p G L(d))) / Γ(α)`.
pub fn ps_satground<R: Real>(params: &SatGroundLinkParams<R>) -> Result<Probability<R>> {
    params.validate()?;
    let (alpha, beta) = params.gamma_params()?;
    let x = params.snr_threshold / (beta * params.snr_per_unit_gain());
    Ok(Probability::new(regularized_upper_gamma(alpha, x)?))
}

/// Longest line-of-sight distance between satellites at altitudes `h_i`
/// and `h_j` over a spherical Earth of radius `earth_radius_km`.
pub fn max_visible_distance<R: Real>(h_i_km: R, h_j_km: R, earth_radius_km: R) -> Result<R> {
    if !(h_i_km >= R::zero()) || !(h_j_km >= R::zero()) {
        return Err(Error::domain(
            "max_visible_distance",
            format!("altitudes must be non-negative, got {h_i_km} and {h_j_km}"),
        ));
    }
    if !(earth_radius_km > R::zero()) {
        return Err(Error::domain(
            "max_visible_distance",
            format!("earth radius must be positive, got {earth_radius_km}"),
        ));
    }
    let two = R::lit(2.0);
    let horizon = |h: R| (h * (h + two * earth_radius_km)).sqrt();
    Ok(horizon(h_i_km) + horizon(h_j_km))
}

/// Bounds on the inter-satellite success probability.
///
/// The upper bound is the alignment probability `1 - ς²`; the lower bound
/// multiplies it by `1 - (γ₀ σ² / (A₀ p G L(d_max)))^{η²}`.
pub fn ps_intersat_bounds<R: Real>(params: &InterSatLinkParams<R>) -> Result<PsBounds<R>> {
    params.validate()?;
    let aligned = params.alignment_probability();
    let d_max = params.max_distance_km()?;
    let ratio = params.snr_threshold / snr_intersat(params, params.pointing_a0, d_max);
    let eta_sq = params.pointing_eta * params.pointing_eta;
    let raw_lower = aligned * (R::one() - ratio.powf(eta_sq));
    Ok(PsBounds::from_raw(raw_lower, aligned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ground_reference_bounds() {
        // Log-space oracle (mpmath): lower = 0.07800405460181108; upper
        // differs from 1 by ~1e-633.
        let b = ps_ground_bounds(&GroundLinkParams::reference()).unwrap();
        assert!(((b.lower.value() - 0.078) / 0.078).abs() < 0.05);
        assert!(((b.lower.value() - 0.078_004_054_601_811_08) / 0.078).abs() < 1e-9);
        assert_eq!(b.raw_upper(), 1.0);
        assert!(1.0 - b.upper.value() < 1e-6);
        assert!(b.upper.is_clamped());
    }

    #[test]
    fn ground_vacuous_lower_bound_is_clamped() {
        let p = GroundLinkParams { d_max_km: 0.1, ..GroundLinkParams::reference() };
        let b = ps_ground_bounds(&p).unwrap();
        assert!(b.lower.value() <= b.upper.value());
    }

    #[test]
    fn satground_reference_is_near_certain() {
        // 1 - P = γ(α, 1.372e-11)/Γ(α) = 9.832e-12 (mpmath)
        let p = ps_satground(&SatGroundLinkParams::reference()).unwrap();
        assert!(1.0 - p.raw() < 1e-9);
        assert!(((1.0 - p.raw()) - 9.832_055_146_533e-12).abs() < 1e-15);
    }

    #[test]
    fn satground_zero_threshold_limit() {
        let p = SatGroundLinkParams { snr_threshold: 1e-300, ..SatGroundLinkParams::reference() };
        assert_eq!(ps_satground(&p).unwrap().raw(), 1.0);
    }

    #[test]
    fn satground_directions() {
        let base = SatGroundLinkParams { snr_threshold: 3.0, ..SatGroundLinkParams::reference() };
        let p0 = ps_satground(&base).unwrap().raw();
        let harder = SatGroundLinkParams { snr_threshold: 4.0, ..base };
        assert!(ps_satground(&harder).unwrap().raw() < p0);
        let louder = SatGroundLinkParams { tx_power_w: 20.0, ..base };
        assert!(ps_satground(&louder).unwrap().raw() > p0);
        let bigger_antenna = SatGroundLinkParams { antenna_gain: base.antenna_gain * 2.0, ..base };
        assert!(ps_satground(&bigger_antenna).unwrap().raw() > p0);
    }

    #[test]
    fn visible_distance() {
        assert_eq!(max_visible_distance(0.0, 0.0, 6371.0).unwrap(), 0.0);
        let d: f64 = max_visible_distance(550.0, 550.0, 6371.0).unwrap();
        assert!(((d - 5407.6) / 5407.6).abs() < 1e-3);
        assert!((d - 5_407.624_247_301_212).abs() < 1e-9);
        let a = max_visible_distance(550.0, 1200.0, 6371.0).unwrap();
        let b = max_visible_distance(1200.0, 550.0, 6371.0).unwrap();
        assert_eq!(a, b);
        assert!(max_visible_distance(-1.0, 550.0, 6371.0).is_err());
    }

    #[test]
    fn intersat_reference_bounds() {
        let b = ps_intersat_bounds(&InterSatLinkParams::reference()).unwrap();
        assert_eq!(b.upper.value(), 1.0 - 0.015 * 0.015);
        assert!((b.upper.value() - 0.999_775).abs() < 1e-15);
        // ratio term ≈ 1.1e-19
        assert!(b.upper.value() - b.lower.value() <= 1e-15);
    }

    #[test]
    fn intersat_lower_clamps_when_threshold_unreachable() {
        let p = InterSatLinkParams { snr_threshold: 1e12, ..InterSatLinkParams::reference() };
        let b = ps_intersat_bounds(&p).unwrap();
        assert!(b.raw_lower() < 0.0);
        assert_eq!(b.lower.value(), Probability::<f64>::min());
        assert_eq!(b.upper.value(), 0.999_775);
    }

    fn ground_params() -> impl Strategy<Value = GroundLinkParams<f64>> {
        (
            10f64..2e4,
            0.02f64..0.5,
            0.05f64..0.9,
            0.1f64..0.95,
            -14f64..2.0,
            0.0f64..1.0,
        )
            .prop_map(|(lambda, radius, lo_frac, hi_frac, log_thr, eps_frac)| {
                let d_max = radius * hi_frac;
                let d_min = d_max * lo_frac;
                let threshold = 10f64.powf(log_thr);
                GroundLinkParams {
                    intensity_per_km2: lambda,
                    interference_radius_km: radius,
                    d_min_km: d_min,
                    d_max_km: d_max,
                    snr_threshold: threshold,
                    epsilon: threshold * (1e-6 + 0.99 * eps_frac),
                    ..GroundLinkParams::reference()
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ground_bounds_are_ordered(p in ground_params()) {
            let b = ps_ground_bounds(&p).unwrap();
            prop_assert!(b.lower.value() <= b.upper.value());
        }
    }

    proptest! {
        #[test]
        fn intersat_upper_depends_only_on_pointing_variance(
            power in 0.1f64..1e3,
            gain in 1e10f64..1e18,
            carrier in 1e9f64..1e11,
            eta in 0.5f64..3.0,
            a0 in 1e-3f64..1.0,
            h in 300f64..2000.0,
            threshold in 1e-14f64..1e3,
        ) {
            let p = InterSatLinkParams {
                tx_power_w: power,
                antenna_gain: gain,
                carrier_hz: carrier,
                pointing_eta: eta,
                pointing_a0: a0,
                altitude_i_km: h,
                snr_threshold: threshold,
                ..InterSatLinkParams::reference()
            };
            let b = ps_intersat_bounds(&p).unwrap();
            prop_assert_eq!(b.raw_upper(), 1.0 - 0.015 * 0.015);
        }
    }
}

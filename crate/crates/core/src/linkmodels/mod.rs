//! Channel models for the three link types.
//!
//! All internal quantities are linear (watts, ratios). Ground geometry is
//! expressed in kilometres with node intensity per square kilometre;
//! [`path_loss`] takes metres.

mod ground;
mod intersat;
mod satground;

pub use ground::{sample_ground_scene, sinr_ground, GroundLinkParams, GroundScene};
pub use intersat::{sample_pointing_loss, snr_intersat, InterSatLinkParams};
pub use satground::{sample_fading_gain, snr_satground, FadingSampler, SatGroundLinkParams};

use crate::error::{Error, Result};
use crate::Real;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Free-space loss factor `(c / (4 π d f))²`.
pub fn path_loss<R: Real>(distance_m: R, carrier_hz: R) -> Result<R> {
    if !(distance_m > R::zero()) || !(carrier_hz > R::zero()) {
        return Err(Error::domain(
            "path_loss",
            format!("distance ({distance_m} m) and carrier ({carrier_hz} Hz) must be positive"),
        ));
    }
    Ok(free_space(distance_m, carrier_hz))
}

#[inline]
pub(crate) fn free_space<R: Real>(distance_m: R, carrier_hz: R) -> R {
    let r = R::lit(SPEED_OF_LIGHT) / (R::lit(4.0) * R::PI() * distance_m * carrier_hz);
    r * r
}

/// `10^(db / 10)`.
pub fn db_to_linear<R: Real>(db: R) -> R {
    R::lit(10.0).powf(db / R::lit(10.0))
}

/// Power in dBm to watts.
pub fn dbm_to_watts<R: Real>(dbm: R) -> R {
    db_to_linear(dbm - R::lit(30.0))
}

pub(crate) fn require_positive<R: Real>(what: &str, v: R) -> Result<()> {
    if v > R::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::config(format!("{what} must be positive and finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leo_slant_range() {
        // (c / 4π·550e3·2e9)² = 4.70366e-16
        let l: f64 = path_loss(550e3, 2e9).unwrap();
        assert!(((l - 4.71e-16) / 4.71e-16).abs() < 0.01);
        assert!(((l - 4.703_664_179_457_397e-16) / l).abs() < 1e-12);
    }

    #[test]
    fn one_metre() {
        let l: f64 = path_loss(1.0, 2e9).unwrap();
        assert!(((l - 1.424e-4) / 1.424e-4).abs() < 0.01);
    }

    #[test]
    fn inverse_square() {
        for d in [1.0f64, 37.0, 5.5e5] {
            let ratio = path_loss(d, 2e9).unwrap() / path_loss(2.0 * d, 2e9).unwrap();
            assert!((ratio - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(path_loss(0.0, 2e9).is_err());
        assert!(path_loss(1.0, -2e9).is_err());
    }

    #[test]
    fn unit_conversions() {
        assert!((dbm_to_watts(40.0f64) - 10.0).abs() < 1e-12);
        assert!((dbm_to_watts(-104.0f64) - 10f64.powf(-13.4)).abs() < 1e-27);
        assert!((db_to_linear(38.0f64) - 10f64.powf(3.8)).abs() < 1e-9);
        assert!((db_to_linear(-100.0f64) - 1e-10).abs() < 1e-24);
    }
}

//! Closed-form success probabilities and the latency/throughput bounds
//! they induce.

mod bounds;
mod latency;

pub use bounds::{max_visible_distance, ps_ground_bounds, ps_intersat_bounds, ps_satground, PsBounds};
pub use latency::{latency_bounds_mode, LatencyBounds};

use crate::error::{Error, Result};
use crate::mathkit::{phi_inverse, q_inverse, Probability, RateProfile};
use crate::Real;

/// Link latency needed to reach success probability `ps`:
/// `t = Φ⁻¹(Q⁻¹(1 - ps))`. Increasing in `ps`.
pub fn ps_to_latency<R: Real>(ps: Probability<R>, profile: &RateProfile<R>) -> Result<R> {
    phi_inverse(q_inverse(ps.complement())?, profile)
}

/// Transactions per second for a consensus round of `t_overall_s` seconds.
pub fn throughput<R: Real>(t_overall_s: R) -> Result<R> {
    if !(t_overall_s > R::zero()) {
        return Err(Error::domain("throughput", format!("latency must be positive, got {t_overall_s}")));
    }
    Ok(R::one() / t_overall_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(b: f64, c: f64, r: f64) -> RateProfile<f64> {
        RateProfile::new(b, 1, c, r).unwrap()
    }

    #[test]
    fn even_odds_latency() {
        // Φ⁻¹(0) for C - R = 3, B = 1 kHz: 3n + 0.5 log2 n = 0.
        // bisection oracle (mpmath): 2.941936580427832e-4 s
        let t = ps_to_latency(Probability::new(0.5), &profile(1e3, 4.0, 1.0)).unwrap();
        assert!(((t - 2.941_936_580_427_832e-4) / t).abs() < 1e-6, "{t}");
    }

    #[test]
    fn satellite_chain_latency_scale() {
        // mpmath: 3.912193332170549e-8 s
        let t = ps_to_latency(Probability::new(0.9998), &profile(20e6, 10.0, 4.0)).unwrap();
        assert!(((t - 3.6e-8) / 3.6e-8).abs() < 0.2);
        assert!(((t - 3.912_193_332_170_549e-8) / t).abs() < 1e-6);
    }

    #[test]
    fn throughput_reciprocal() {
        assert_eq!(throughput(0.5).unwrap(), 2.0);
        assert!((throughput(18.0f64).unwrap() - 1.0 / 18.0).abs() < 1e-15);
        let x = 0.37f64;
        assert!((throughput(throughput(x).unwrap()).unwrap() - x).abs() < 1e-15);
        assert!(throughput(0.0).is_err());
        assert!(throughput(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn latency_increases_with_success_probability(
            a in 1e-9f64..1.0,
            b in 1e-9f64..1.0,
            bw in 1e2f64..1e8,
            rate in 0.5f64..5.0,
            gap in 0.5f64..10.0,
        ) {
            prop_assume!((a - b).abs() > 1e-6);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let p = profile(bw, rate + gap, rate);
            let t_lo = ps_to_latency(Probability::new(lo), &p).unwrap();
            let t_hi = ps_to_latency(Probability::new(hi), &p).unwrap();
            prop_assert!(t_lo > 0.0);
            prop_assert!(t_lo < t_hi);
        }
    }
}

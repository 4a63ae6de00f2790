//! Normal-approximation map between transmission time and reliability.
//!
//! For a link with per-subcarrier bandwidth `B`, `N` subcarriers, spectral
//! efficiencies `C` (capacity) and `R` (rate), and `n = B N t` channel uses,
//!
//! ```text
//! Φ(t) = ((C - R) n + 0.5 log2 n) / (log2(e) √n)
//! ```
//!
//! and a link that must succeed with probability `P` needs
//! `t = Φ⁻¹(Q⁻¹(1 - P))`.

use crate::error::{Error, Result};
use crate::Real;

const MAX_BRACKET_STEPS: usize = 200;
const MAX_BISECTIONS: usize = 200;

/// Per-mode transmission parameters.
///
/// `capacity_se` and `rate_se` are spectral efficiencies (bits/s/Hz), so
/// `(C - R) B N t` counts bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateProfile<R: Real = f64> {
    bandwidth_hz: R,
    subcarriers: u32,
    capacity_se: R,
    rate_se: R,
}

impl<R: Real> RateProfile<R> {
    pub fn new(bandwidth_hz: R, subcarriers: u32, capacity_se: R, rate_se: R) -> Result<Self> {
        if !(bandwidth_hz > R::zero()) || !bandwidth_hz.is_finite() {
            return Err(Error::config(format!("bandwidth_hz must be positive, got {bandwidth_hz}")));
        }
        if subcarriers == 0 {
            return Err(Error::config("subcarriers must be at least 1"));
        }
        if !(rate_se > R::zero()) || !rate_se.is_finite() {
            return Err(Error::config(format!("rate must be positive, got {rate_se}")));
        }
        if !(capacity_se > rate_se) || !capacity_se.is_finite() {
            return Err(Error::config(format!(
                "capacity ({capacity_se}) must exceed rate ({rate_se})"
            )));
        }
        Ok(Self { bandwidth_hz, subcarriers, capacity_se, rate_se })
    }

    /// Builds a profile from bit rates, normalizing by the bandwidth:
    /// `C_se = C / B`, `R_se = R / B`.
    pub fn from_bitrates(
        bandwidth_hz: R,
        subcarriers: u32,
        capacity_bps: R,
        rate_bps: R,
    ) -> Result<Self> {
        if !(bandwidth_hz > R::zero()) {
            return Err(Error::config(format!("bandwidth_hz must be positive, got {bandwidth_hz}")));
        }
        Self::new(bandwidth_hz, subcarriers, capacity_bps / bandwidth_hz, rate_bps / bandwidth_hz)
    }

    pub fn bandwidth_hz(&self) -> R {
        self.bandwidth_hz
    }

    pub fn subcarriers(&self) -> u32 {
        self.subcarriers
    }

    pub fn capacity_se(&self) -> R {
        self.capacity_se
    }

    pub fn rate_se(&self) -> R {
        self.rate_se
    }

    /// Channel uses per second, `B N`.
    pub fn uses_per_second(&self) -> R {
        self.bandwidth_hz * R::lit(self.subcarriers as f64)
    }

    fn gap(&self) -> R {
        self.capacity_se - self.rate_se
    }
}

/// `Φ(x)` for a transmission time of `x` seconds.
pub fn phi<R: Real>(x: R, profile: &RateProfile<R>) -> Result<R> {
    if !(x > R::zero()) || !x.is_finite() {
        return Err(Error::domain("phi", format!("time must be positive and finite, got {x}")));
    }
    Ok(phi_uses(x * profile.uses_per_second(), profile.gap()))
}

#[inline]
fn phi_uses<R: Real>(n: R, gap: R) -> R {
    let half = R::lit(0.5);
    (gap * n + half * n.log2()) / (R::LOG2_E() * n.sqrt())
}

/// Time `x > 0` with `Φ(x) = y`.
///
/// Φ is strictly increasing when `C > R`; the root is bracketed by doubling
/// or halving from one channel use and then bisected to a relative width of
/// `1e-12` (or until the bracket stops shrinking in the working precision).
pub fn phi_inverse<R: Real>(y: R, profile: &RateProfile<R>) -> Result<R> {
    if !y.is_finite() {
        return Err(Error::domain("phi_inverse", format!("target must be finite, got {y}")));
    }
    let gap = profile.gap();
    let uses = profile.uses_per_second();
    let two = R::lit(2.0);
    let f = |n: R| phi_uses(n, gap) - y;

    // Search in channel uses n = B N x; x = n / (B N) at the end.
    let (mut lo, mut hi) = (R::one(), R::one());
    if f(R::one()) < R::zero() {
        let mut steps = 0;
        while f(hi) < R::zero() {
            lo = hi;
            hi = hi * two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
                return Err(bracket_failure(y, hi));
            }
        }
    } else {
        let mut steps = 0;
        while f(lo) > R::zero() {
            hi = lo;
            lo = lo / two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || lo == R::zero() {
                return Err(bracket_failure(y, lo));
            }
        }
    }

    let tol = R::lit(1e-12);
    let mut iterations = 0;
    while hi - lo > tol * hi {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < R::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations >= MAX_BISECTIONS {
            return Err(Error::numeric(
                "phi_inverse",
                format!(
                    "bisection did not converge for y = {y}: bracket [{lo}, {hi}] channel uses \
                     after {iterations} iterations"
                ),
            ));
        }
    }
    Ok((lo + (hi - lo) / two) / uses)
}

fn bracket_failure<R: Real>(y: R, reached: R) -> Error {
    Error::numeric(
        "phi_inverse",
        format!(
            "could not bracket root for y = {y} within {MAX_BRACKET_STEPS} doublings \
             (reached {reached} channel uses)"
        ),
    )
}

//! Gaussian tail function and its inverse.

use super::gamma::regularized_upper_gamma;
use crate::error::{Error, Result};
use crate::Real;

/// Gaussian tail probability `Q(x) = P(Z > x)` for standard normal `Z`.
///
/// Uses `Q(x) = Γ(1/2, x²/2) / (2 √π)` for `x ≥ 0`, which keeps full
/// relative precision deep into the upper tail.
pub fn q_function<R: Real>(x: R) -> Result<R> {
    if !x.is_finite() {
        return Err(Error::domain("q_function", format!("argument must be finite, got {x}")));
    }
    let half = R::lit(0.5);
    let tail = half * regularized_upper_gamma(half, half * x * x)?;
    Ok(if x >= R::zero() { tail } else { R::one() - tail })
}

// Acklam's rational approximation of the normal quantile, ~1e-9 relative.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.024_25;

fn horner(coef: &[f64], x: f64) -> f64 {
    coef.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Normal quantile `z` with `P(Z ≤ z) = p`, before refinement.
fn normal_quantile_seed(p: f64) -> f64 {
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        horner(&C, q) / (horner(&D, q) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        horner(&A, r) * q / (horner(&B, r) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -horner(&C, q) / (horner(&D, q) * q + 1.0)
    }
}

/// Inverse of [`q_function`]: the `x` with `Q(x) = p`, for `p ∈ (0, 1)`.
pub fn q_inverse<R: Real>(p: R) -> Result<R> {
    if !(p > R::zero() && p < R::one()) {
        return Err(Error::domain("q_inverse", format!("probability must lie in (0, 1), got {p}")));
    }
    // Q(x) = p  <=>  Φ(-x) = p, so x = -quantile(p).
    let mut x = R::lit(-normal_quantile_seed(p.as_f64()));
    let half = R::lit(0.5);
    let sqrt_2pi = R::TAU().sqrt();
    // Halley steps on Q(x) - p. Q'(x) = -φ(x), Q''(x) = x φ(x).
    for _ in 0..3 {
        let err = q_function(x)? - p;
        if err == R::zero() {
            break;
        }
        let density = (-half * x * x).exp() / sqrt_2pi;
        if density == R::zero() {
            break;
        }
        let u = err / density;
        let step = u / (R::one() - half * x * u);
        x = x + step;
        if step.abs() <= R::epsilon() * x.abs().max(R::one()) {
            break;
        }
    }
    Ok(x)
}

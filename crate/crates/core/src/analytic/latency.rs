use super::{ps_ground_bounds, ps_intersat_bounds, ps_satground, ps_to_latency, PsBounds};
use crate::error::Result;
use crate::mathkit::Probability;
use crate::mode::{LinkSet, Mode, ModeProfiles};
use crate::Real;

/// Ordered latency and throughput bounds for one deployment mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyBounds<R: Real = f64> {
    pub mode: Mode,
    pub t_lower_s: R,
    pub t_upper_s: R,
    pub tps_lower: R,
    pub tps_upper: R,
    /// Success-probability bounds of the link type that varies with the
    /// bound index: inter-ground for modes 1 and 2, inter-satellite for 3.
    pub ps: PsBounds<R>,
    /// Satellite-ground success probability (mode 2 only).
    pub ps_satground: Option<Probability<R>>,
}

impl<R: Real> LatencyBounds<R> {
    /// True when `t` lies in `[t_lower, t_upper]` up to a relative
    /// round-off allowance `rel_tol`.
    pub fn contains(&self, t: R, rel_tol: R) -> bool {
        let lo = self.t_lower_s * (R::one() - rel_tol);
        let hi = self.t_upper_s * (R::one() + rel_tol);
        lo <= t && t <= hi
    }
}

/// Latency and throughput bounds of a four-phase consensus round.
///
/// Each candidate endpoint substitutes one end of the link success bounds
/// into the latency map and multiplies by the four phases:
///
/// * mode 1: `4 t(P_g)`
/// * mode 2: `4 max{t(P_g), t(P_sg)}`
/// * mode 3: `4 t(P_s)`
///
/// Because the latency map increases with the success probability the
/// candidate built from the upper probability bound is the *larger* latency;
/// the endpoints are therefore reported as (min, max) of the two candidates.
pub fn latency_bounds_mode<R: Real>(
    mode: Mode,
    links: &LinkSet<R>,
    profiles: &ModeProfiles<R>,
) -> Result<LatencyBounds<R>> {
    links.validate_for(mode)?;
    let profile = profiles.for_mode(mode);
    let four = R::lit(4.0);
    let t = |p: Probability<R>| ps_to_latency(p, profile);

    let (ps, ps_sg, a, b) = match mode {
        Mode::GroundChain => {
            let ps = ps_ground_bounds(links.ground()?)?;
            (ps, None, t(ps.lower)?, t(ps.upper)?)
        }
        Mode::SatelliteAssisted => {
            let ps = ps_ground_bounds(links.ground()?)?;
            let sg = ps_satground(links.satground()?)?;
            let t_sg = t(sg)?;
            (ps, Some(sg), t(ps.lower)?.max(t_sg), t(ps.upper)?.max(t_sg))
        }
        Mode::SatelliteChain => {
            let ps = ps_intersat_bounds(links.intersat()?)?;
            (ps, None, t(ps.lower)?, t(ps.upper)?)
        }
    };
    let (a, b) = (four * a, four * b);
    let (t_lower_s, t_upper_s) = if a <= b { (a, b) } else { (b, a) };
    Ok(LatencyBounds {
        mode,
        t_lower_s,
        t_upper_s,
        tps_lower: R::one() / t_upper_s,
        tps_upper: R::one() / t_lower_s,
        ps,
        ps_satground: ps_sg,
    })
}

//! Scalar abstraction shared by the numerical kernels.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the analytic and sampling code.
///
/// Implemented for `f32` and `f64`. Everything that feeds the Monte-Carlo
/// engine runs in `f64`; `f32` is supported for the closed forms only and
/// inherits its coarser probability clamp from [`Real::prob_margin`].
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Panics only for values not representable
    /// at all, which never happens for the finite constants used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("real to f64")
    }

    /// Distance kept from 0 and 1 when clamping probabilities.
    ///
    /// `1e-12` for `f64`; machine epsilon where that is coarser.
    #[inline]
    fn prob_margin() -> Self {
        Self::lit(1e-12).max(Self::epsilon())
    }
}

impl Real for f32 {}
impl Real for f64 {}

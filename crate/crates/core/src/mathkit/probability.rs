use crate::Real;

/// A probability clamped away from 0 and 1.
///
/// `Q⁻¹(1 - p)` diverges at both ends, so every success probability that
/// feeds the latency map passes through this type. The unclamped value is
/// kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probability<R: Real = f64> {
    value: R,
    raw: R,
}

impl<R: Real> Probability<R> {
    pub fn new(raw: R) -> Self {
        Self { value: raw.max(Self::min()).min(Self::max()), raw }
    }

    /// Lower clamp, `1e-12` for `f64`.
    pub fn min() -> R {
        R::prob_margin()
    }

    /// Upper clamp, `1 - 1e-12` for `f64`.
    pub fn max() -> R {
        R::one() - R::prob_margin()
    }

    pub fn value(&self) -> R {
        self.value
    }

    pub fn raw(&self) -> R {
        self.raw
    }

    pub fn is_clamped(&self) -> bool {
        self.value != self.raw
    }

    /// `1 - p` on the clamped value.
    pub fn complement(&self) -> R {
        R::one() - self.value
    }
}

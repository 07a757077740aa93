//! The fractional order parameter `ν = α/2` and evaluation results.

use std::fmt;

use crate::error::{Error, Result};

/// Validated order `ν ∈ [1/2, 1]`; the time derivative has order `α = 2ν`.
///
/// `ν = 1/2` is the diffusion equation, `ν = 1` the wave equation.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub const DIFFUSION: FracOrder = FracOrder(0.5);
    pub const WAVE: FracOrder = FracOrder(1.0);

    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && (0.5..=1.0).contains(&nu) {
            Ok(FracOrder(nu))
        } else {
            Err(Error::domain(format!("order nu = {nu} outside [1/2, 1]")))
        }
    }

    /// Builds the order from the time-derivative order `α ∈ [1, 2]`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha / 2.0)
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Time-derivative order `α = 2ν`, also the Mittag-Leffler order of the kernel.
    #[inline]
    pub fn alpha(self) -> f64 {
        2.0 * self.0
    }

    pub fn is_diffusion(self) -> bool {
        self.0 == 0.5
    }

    pub fn is_wave(self) -> bool {
        self.0 == 1.0
    }

    /// Strictly between the diffusion and wave endpoints.
    pub fn is_interior(self) -> bool {
        self.0 > 0.5 && self.0 < 1.0
    }
}

impl fmt::Display for FracOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        FracOrder::new(nu)
    }
}

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
}

impl EvalResult {
    pub fn new(value: f64, abs_err: f64) -> Self {
        debug_assert!(abs_err >= 0.0, "negative error bound {abs_err}");
        EvalResult { value, abs_err }
    }

    /// An exactly known value.
    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            abs_err: 0.0,
        }
    }

    /// Multiplies by a known positive factor, scaling the error bound with it.
    pub fn scaled(self, factor: f64) -> Self {
        EvalResult {
            value: self.value * factor,
            abs_err: self.abs_err * factor.abs(),
        }
    }

    /// Whether the exact value could be `other` given the error bound.
    pub fn contains(&self, other: f64, slack: f64) -> bool {
        (self.value - other).abs() <= self.abs_err + slack
    }
}

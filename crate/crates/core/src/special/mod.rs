//! Special-function substrate: gamma, Bessel functions of the first kind of
//! real order, and the complex Fresnel integral `∫₀ˣ exp(i z²) dz`.

mod bessel;
mod fresnel;
mod gamma;

pub use bessel::{
    bessel_j, bessel_j_power_series, bessel_j_recurrence, bessel_j_sequence, BesselOrder,
    X_SWITCH,
};
pub use fresnel::{fresnel_e, fresnel_e_limit, FRESNEL_SWITCH};
pub use gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Truncation policy for infinite sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    /// A term is negligible once its magnitude drops below this.
    pub abs_tol: T,
    /// Hard cap on the number of terms (or recurrence orders) a sum may use.
    pub max_terms: usize,
    /// How many consecutive negligible terms end a sum.
    pub consecutive_below: usize,
}

impl<T: Real> SeriesConfig<T> {
    pub fn new(abs_tol: T, max_terms: usize, consecutive_below: usize) -> Result<Self> {
        if !(abs_tol > T::zero()) || !abs_tol.is_finite() {
            return Err(Error::Domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        if consecutive_below == 0 {
            return Err(Error::Domain("consecutive_below must be at least 1".into()));
        }
        Ok(Self { abs_tol, max_terms, consecutive_below })
    }
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        Self { abs_tol: T::lit(T::DEFAULT_ABS_TOL), max_terms: 10_000, consecutive_below: 3 }
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    if r == T::zero() || r == T::one() {
        return T::zero();
    }
    if r > T::one() {
        -(T::PI() * (r - T::one())).sin()
    } else {
        (T::PI() * r).sin()
    }
}

//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the library can be instantiated with (`f32` or `f64`).
///
/// Beyond the `num-traits` surface this carries a few precision-dependent
/// defaults, so configuration types can pick sensible values per type.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Default absolute truncation tolerance for infinite sums.
    const DEFAULT_ABS_TOL: f64;
    /// Default absolute tolerance for adaptive quadrature.
    const DEFAULT_QUAD_TOL: f64;

    /// Converts an `f64` literal. Literals in this crate are always representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to scalar")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("index converts to scalar")
    }

    #[inline]
    fn from_i64_lossy(n: i64) -> Self {
        Self::from_i64(n).expect("integer converts to scalar")
    }
}

impl Real for f32 {
    const DEFAULT_ABS_TOL: f64 = 1e-7;
    const DEFAULT_QUAD_TOL: f64 = 1e-5;
}

impl Real for f64 {
    const DEFAULT_ABS_TOL: f64 = 1e-14;
    const DEFAULT_QUAD_TOL: f64 = 1e-10;
}

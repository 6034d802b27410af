//! Aharonov–Bohm eigenfunctions and propagator, evaluated by independent
//! routes so they can be checked against one another.
//!
//! * [`special`]: gamma, real-order Bessel `J_ν`, complex Fresnel integral.
//! * [`eigen`]: the bilateral Bessel series for `F_α(ρ, θ)`, its floor/fraction
//!   decomposition and the closed forms for integer and half-integer flux.
//! * [`propagator`]: the time-evolution kernel built on `F_α`.
//! * [`laplace`]: quadrature checks of the Laplace-transform identities that
//!   lead to the half-integer closed form.
//! * [`grid`]: sample grids with CSV/JSON encodings and grid comparison.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod eigen;
pub mod error;
pub mod grid;
pub mod laplace;
pub mod propagator;
pub mod quad;
pub mod scalar;
pub mod special;

pub use eigen::{
    closed_half_integer_ab, closed_half_integer_corrected, closed_integer, decompose_f, evaluate, series_f,
    series_f_eps, CorrectedForm, Method,
};
pub use error::{Error, Result};
pub use laplace::{laplace_numeric, IdentityId, IdentityReport};
pub use propagator::{free_propagator_2d, propagator_k, Strategy};
pub use scalar::Real;
pub use special::{bessel_j, bessel_j_sequence, fresnel_e, gamma};

/// Complex value returned by every evaluator.
pub type ComplexValue<T = f64> = num_complex::Complex<T>;

pub type FluxParameter = eigen::FluxParameter<f64>;
pub type EvalPoint = eigen::EvalPoint<f64>;
pub type SeriesConfig = special::SeriesConfig<f64>;
pub type BesselOrder = special::BesselOrder<f64>;
pub type PropagatorParams = propagator::PropagatorParams<f64>;
pub type SpacetimePoint = propagator::SpacetimePoint<f64>;
pub type LaplaceProbe = laplace::LaplaceProbe<f64>;
pub type QuadConfig = quad::QuadConfig<f64>;

pub type FluxParameter32 = eigen::FluxParameter<f32>;
pub type EvalPoint32 = eigen::EvalPoint<f32>;
pub type SeriesConfig32 = special::SeriesConfig<f32>;

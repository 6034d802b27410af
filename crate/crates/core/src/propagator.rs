//! Time-evolution kernel in the presence of a thin flux line.

use num_complex::Complex;

use crate::eigen::{closed_half_integer_corrected, closed_integer, series_f, CorrectedForm, EvalPoint, FluxParameter};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::SeriesConfig;

/// `τ = ħt/m` together with the flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorParams<T> {
    tau: T,
    pub flux: FluxParameter<T>,
}

impl<T: Real> PropagatorParams<T> {
    pub fn new(tau: T, flux: FluxParameter<T>) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self { tau, flux })
    }

    #[inline]
    pub fn tau(&self) -> T {
        self.tau
    }
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if !(tau > T::zero()) || !tau.is_finite() {
        return Err(Error::Precondition(format!("--tau must be finite and > 0, got {tau}")));
    }
    Ok(())
}

/// Endpoints `(r, θ)` and `(r', θ')` of the kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint<T> {
    pub r: T,
    pub theta: T,
    pub r_prime: T,
    pub theta_prime: T,
}

impl<T: Real> SpacetimePoint<T> {
    pub fn new(r: T, theta: T, r_prime: T, theta_prime: T) -> Result<Self> {
        for (name, v) in [("r", r), ("r_prime", r_prime)] {
            if !v.is_finite() || v < T::zero() {
                return Err(Error::Domain(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !theta.is_finite() || !theta_prime.is_finite() {
            return Err(Error::Domain("angles must be finite".into()));
        }
        Ok(Self { r, theta, r_prime, theta_prime })
    }

    /// Endpoints exchanged.
    pub fn swapped(&self) -> Self {
        Self { r: self.r_prime, theta: self.theta_prime, r_prime: self.r, theta_prime: self.theta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Always sum the Bessel series.
    Series,
    /// Closed form for integer and half-integer flux, series otherwise.
    ClosedAuto,
}

/// `1/(2πiτ) = -i/(2πτ)`
fn kernel_prefactor<T: Real>(tau: T) -> Complex<T> {
    Complex::new(T::zero(), -(T::lit(2.0) * T::PI() * tau).recip())
}

/// `K = (1/2πiτ) exp[i(r² + r'²)/(2τ)] F_α(r r'/τ, θ - θ')`.
pub fn propagator_k<T: Real>(
    params: &PropagatorParams<T>,
    pts: &SpacetimePoint<T>,
    strategy: Strategy,
    cfg: &SeriesConfig<T>,
) -> Result<Complex<T>> {
    let tau = params.tau();
    let p = EvalPoint::new(pts.r * pts.r_prime / tau, pts.theta - pts.theta_prime)?;
    let flux = &params.flux;
    let f = match strategy {
        Strategy::ClosedAuto if flux.is_integer() => closed_integer(flux, &p)?,
        Strategy::ClosedAuto if flux.is_half_integer() => {
            closed_half_integer_corrected(flux.floor(), &p, CorrectedForm::Fresnel)?
        }
        _ => series_f(flux, &p, cfg)?,
    };
    let gauss = (pts.r * pts.r + pts.r_prime * pts.r_prime) / (T::lit(2.0) * tau);
    Ok(kernel_prefactor(tau) * Complex::new(gauss.cos(), gauss.sin()) * f)
}

/// Free-particle kernel in the plane, `(1/2πiτ) exp(i d²/(2τ))`.
pub fn free_propagator_2d<T: Real>(tau: T, pts: &SpacetimePoint<T>) -> Result<Complex<T>> {
    check_tau(tau)?;
    let d2 = pts.r * pts.r + pts.r_prime * pts.r_prime
        - T::lit(2.0) * pts.r * pts.r_prime * (pts.theta - pts.theta_prime).cos();
    let phase = d2 / (T::lit(2.0) * tau);
    Ok(kernel_prefactor(tau) * Complex::new(phase.cos(), phase.sin()))
}

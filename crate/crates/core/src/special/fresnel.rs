use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Arguments below this use the power series; above it the continued fraction.
pub const FRESNEL_SWITCH: f64 = 3.0;

const CF_MAX_ITER: usize = 500;

/// `lim_{x→∞} ∫₀ˣ exp(i z²) dz = (√π / 2) e^{iπ/4}`.
pub fn fresnel_e_limit<T: Real>() -> Complex<T> {
    Complex::from_polar(T::PI().sqrt() * T::lit(0.5), T::FRAC_PI_4())
}

/// `Σ_k i^k x^{2k+1} / (k! (2k+1))`.
fn power_series<T: Real>(x: T) -> Result<Complex<T>> {
    let x2 = x * x;
    let mut a = Complex::new(x, T::zero());
    let mut sum = a;
    let step = Complex::new(T::zero(), x2);
    for k in 1..CF_MAX_ITER {
        let kf = T::from_usize_lossy(k);
        a = a * step / kf;
        let term = a / (T::lit(2.0) * kf + T::one());
        sum = sum + term;
        if kf > x2 && term.norm() <= T::epsilon() * sum.norm() * T::lit(0.5) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { what: "Fresnel power series", limit: CF_MAX_ITER })
}

/// `erfc(ζ)` for `Re ζ > 0` from the even continued fraction
/// `√π e^{ζ²} erfc ζ = 2ζ / (2ζ²+1 − 1·2/(2ζ²+5 − 3·4/(2ζ²+9 − …)))`,
/// evaluated with the modified Lentz algorithm.
fn erfc_cf<T: Real>(zeta: Complex<T>) -> Result<Complex<T>> {
    let tiny = T::min_positive_value().sqrt();
    let two_z2 = zeta * zeta * T::lit(2.0);
    let mut f = two_z2 + T::one();
    let mut c = f;
    let mut d = Complex::new(T::zero(), T::zero());
    for k in 1..CF_MAX_ITER {
        let kf = T::from_usize_lossy(k);
        let a = -((T::lit(2.0) * kf - T::one()) * (T::lit(2.0) * kf));
        let b = two_z2 + (T::lit(4.0) * kf + T::one());
        d = b + d * a;
        if d.norm() < tiny {
            d = Complex::new(tiny, T::zero());
        }
        d = d.inv();
        c = b + c.inv() * a;
        if c.norm() < tiny {
            c = Complex::new(tiny, T::zero());
        }
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).norm() <= T::epsilon() {
            let pref = zeta * T::lit(2.0) / T::PI().sqrt() * (-(zeta * zeta)).exp();
            return Ok(pref / f);
        }
    }
    Err(Error::NonConvergence { what: "erfc continued fraction", limit: CF_MAX_ITER })
}

/// The complex Fresnel integral `E(x) = ∫₀ˣ exp(i z²) dz` for `x >= 0`.
///
/// Rotating the contour gives `E(x) = e^{iπ/4} (√π/2) erf(x e^{-iπ/4})`; large
/// arguments go through `erfc` so the limit is approached without cancellation
/// in the tail.
pub fn fresnel_e<T: Real>(x: T) -> Result<Complex<T>> {
    if !x.is_finite() || x < T::zero() {
        return Err(Error::Domain(format!("Fresnel integral requires finite x >= 0, got {x}")));
    }
    if x == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    if x <= T::lit(FRESNEL_SWITCH) {
        return power_series(x);
    }
    let zeta = Complex::from_polar(x, -T::FRAC_PI_4());
    let tail = erfc_cf(zeta)?;
    Ok(fresnel_e_limit::<T>() * (Complex::new(T::one(), T::zero()) - tail))
}

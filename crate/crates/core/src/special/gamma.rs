use crate::error::{Error, Result};
use crate::scalar::Real;

use super::sin_pi;

// Lanczos approximation, g = 7, n = 9 (the coefficient set published with GSL).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos series `A(x)` for `x >= 0.5`; `Γ(x) = √(2π) t^(x-1/2) e^(-t) A(x)`, `t = x + g - 1/2`.
fn lanczos_sum<T: Real>(x: T) -> T {
    let xm1 = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (xm1 + T::from_usize_lossy(i));
    }
    acc
}

fn check_pole<T: Real>(x: T) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= T::zero() && x == x.floor() {
        return Err(Error::Pole(x.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// The gamma function for real arguments, with reflection below 1/2.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    check_pole(x)?;
    let half = T::lit(0.5);
    if x < half {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let g = gamma(T::one() - x)?;
        return Ok(T::PI() / (sin_pi(x) * g));
    }
    let t = x - half + T::lit(LANCZOS_G);
    let sqrt_two_pi = (T::lit(2.0) * T::PI()).sqrt();
    // split the power so t^(x-1/2) e^(-t) stays finite a little longer
    let p = t.powf((x - half) * half);
    Ok(sqrt_two_pi * p * (p * (-t).exp()) * lanczos_sum(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    check_pole(x)?;
    if x <= T::zero() {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    let half = T::lit(0.5);
    if x < half {
        // Γ(x) = Γ(x+1)/x keeps us inside the Lanczos range
        return Ok(ln_gamma(x + T::one())? - x.ln());
    }
    let t = x - half + T::lit(LANCZOS_G);
    let ln_sqrt_two_pi = half * (T::lit(2.0) * T::PI()).ln();
    Ok(ln_sqrt_two_pi + (x - half) * t.ln() - t + lanczos_sum(x).ln())
}

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{gamma, ln_gamma, SeriesConfig};

/// Arguments up to this value use the ascending power series; larger ones the
/// backward recurrence.
pub const X_SWITCH: f64 = 12.0;

/// Order `ν` of a Bessel function of the first kind.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder<T> {
    nu: T,
}

impl<T: Real> BesselOrder<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::Domain(format!("Bessel order must be finite, got {nu}")));
        }
        Ok(Self { nu })
    }

    #[inline]
    pub fn nu(self) -> T {
        self.nu
    }

    /// `ν > -1`, the range where `∫₀^∞ e^{-sr} J_ν(r) dr` exists.
    #[inline]
    pub fn is_laplace_admissible(self) -> bool {
        self.nu > -T::one()
    }
}

/// `(x/2)^ν / Γ(ν+1)`, the leading power-series coefficient.
fn leading_term<T: Real>(nu: T, x: T) -> Result<T> {
    let half_x = x * T::lit(0.5);
    if nu == T::zero() {
        return Ok(T::one());
    }
    if nu + T::one() <= T::lit(30.0) {
        Ok(half_x.powf(nu) / gamma(nu + T::one())?)
    } else {
        Ok((nu * half_x.ln() - ln_gamma(nu + T::one())?).exp())
    }
}

/// Ascending series `Σ (-1)^m (x/2)^(ν+2m) / (m! Γ(ν+m+1))`, valid for any
/// `ν > -1` but only accurate for moderate `x`.
pub fn bessel_j_power_series<T: Real>(nu: T, x: T, cfg: &SeriesConfig<T>) -> Result<T> {
    if x == T::zero() {
        return Ok(if nu == T::zero() { T::one() } else { T::zero() });
    }
    let mut term = leading_term(nu, x)?;
    let mut sum = term;
    let q = -(x * x) * T::lit(0.25);
    let half_x = x * T::lit(0.5);
    for m in 1..=cfg.max_terms {
        let mf = T::from_usize_lossy(m);
        term = term * q / (mf * (nu + mf));
        sum = sum + term;
        if mf > half_x && term.abs() <= T::epsilon() * sum.abs() * T::lit(0.5) {
            return Ok(sum);
        }
        if term == T::zero() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { what: "Bessel power series", limit: cfg.max_terms })
}

/// Miller backward recurrence for `J_{ν0+k}(x)`, `k = 0..=n_max`, with
/// `ν0 ∈ [0, 1)` and `x > 0`.
///
/// Normalised with the Neumann sum
/// `(x/2)^ν0 / Γ(ν0+1) = Σ_k d_k J_{ν0+2k}(x)`, where `d_0 = 1` and
/// `d_k = (ν0+2k)/k · Π_{j<k} (ν0+j)/j`.
fn miller_ladder<T: Real>(nu0: T, n_max: usize, x: T, cfg: &SeriesConfig<T>) -> Result<Vec<T>> {
    let x_ceil = x.ceil().to_usize().unwrap_or(usize::MAX);
    let m = n_max.max(x_ceil).max(1);
    let margin = (160.0 * m as f64).sqrt().ceil() as usize + 10;
    let start = m.saturating_add(margin);
    if start > cfg.max_terms {
        return Err(Error::NonConvergence { what: "Bessel backward recurrence", limit: cfg.max_terms });
    }

    let big = T::max_value().powf(T::lit(0.25));
    let two_over_x = T::lit(2.0) / x;
    let mut vals = vec![T::zero(); start + 2];
    vals[start] = T::min_positive_value().powf(T::lit(0.25));
    for k in (1..=start).rev() {
        let next = two_over_x * (nu0 + T::from_usize_lossy(k)) * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > big {
            let inv = big.recip();
            for v in &mut vals[k - 1..=start] {
                *v = *v * inv;
            }
        }
    }

    let mut norm = vals[0];
    let mut weight = T::one();
    let mut k = 1;
    while 2 * k <= start {
        let kf = T::from_usize_lossy(k);
        // weight carries Π_{j<k} (ν0+j)/j
        if k > 1 {
            let jf = T::from_usize_lossy(k - 1);
            weight = weight * (nu0 + jf) / jf;
        }
        let d = (nu0 + T::lit(2.0) * kf) / kf * weight;
        norm = norm + d * vals[2 * k];
        k += 1;
    }
    let scale = leading_term(nu0, x)? / norm;
    vals.truncate(n_max + 1);
    for v in &mut vals {
        *v = *v * scale;
    }
    Ok(vals)
}

/// `J_ν(x)` via the backward recurrence alone, for `ν >= 0` and `x > 0`.
pub fn bessel_j_recurrence<T: Real>(nu: T, x: T, cfg: &SeriesConfig<T>) -> Result<T> {
    let n = nu.floor();
    let ladder = miller_ladder(nu - n, n.to_usize().unwrap_or(usize::MAX), x, cfg)?;
    Ok(*ladder.last().expect("ladder is non-empty"))
}

/// Bessel function of the first kind `J_ν(x)` for real order and `x >= 0`.
///
/// Accepted orders are `ν >= 0`, `ν ∈ (-1, 0)` and negative integers (via
/// `J_{-n} = (-1)^n J_n`).
pub fn bessel_j<T: Real>(order: BesselOrder<T>, x: T, cfg: &SeriesConfig<T>) -> Result<T> {
    let nu = order.nu();
    if !x.is_finite() || x < T::zero() {
        return Err(Error::Domain(format!("Bessel J requires finite x >= 0, got {x}")));
    }
    if nu < T::zero() {
        if nu == nu.floor() {
            let n = -nu;
            let parity = n.to_i64().unwrap_or(0) % 2;
            let pos = bessel_j(BesselOrder::new(n)?, x, cfg)?;
            return Ok(if parity == 0 { pos } else { -pos });
        }
        if nu <= -T::one() {
            return Err(Error::Domain(format!("non-integer Bessel order {nu} below -1")));
        }
        if x == T::zero() {
            return Err(Error::Domain(format!("J_{nu}(0) is infinite")));
        }
        if x <= T::lit(X_SWITCH) {
            return bessel_j_power_series(nu, x, cfg);
        }
        // one downward step from the (ν+1, ν+2) pair
        let up = miller_ladder(nu + T::one(), 1, x, cfg)?;
        return Ok(T::lit(2.0) * (nu + T::one()) / x * up[0] - up[1]);
    }
    if x <= T::lit(X_SWITCH) {
        bessel_j_power_series(nu, x, cfg)
    } else {
        bessel_j_recurrence(nu, x, cfg)
    }
}

/// `[J_{ν0}(x), J_{ν0+1}(x), …, J_{ν0+n_max}(x)]` from a single recurrence pass.
pub fn bessel_j_sequence<T: Real>(nu0: T, n_max: usize, x: T, cfg: &SeriesConfig<T>) -> Result<Vec<T>> {
    if !nu0.is_finite() || nu0 < T::zero() || nu0 >= T::one() {
        return Err(Error::Domain(format!("ladder base order must lie in [0, 1), got {nu0}")));
    }
    if !x.is_finite() || x < T::zero() {
        return Err(Error::Domain(format!("Bessel J requires finite x >= 0, got {x}")));
    }
    if x == T::zero() {
        let mut out = vec![T::zero(); n_max + 1];
        if nu0 == T::zero() {
            out[0] = T::one();
        }
        return Ok(out);
    }
    miller_ladder(nu0, n_max, x, cfg)
}

//! Aharonov–Bohm eigenfunctions `F_α(ρ, θ)`.
//!
//! The bilateral Bessel series is the ground truth; the floor/fraction
//! decomposition and the closed forms for integer and half-integer flux are
//! checked against it.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::scalar::Real;
use crate::special::{bessel_j_sequence, fresnel_e, SeriesConfig};

/// Dimensionless flux `α` split as `⌊α⌋ + {α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxParameter<T> {
    alpha: T,
    floor: i64,
    frac: T,
}

impl<T: Real> FluxParameter<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("flux must be finite, got {alpha}")));
        }
        let fl = alpha.floor();
        let floor = fl
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("flux {alpha} has no integer floor")))?;
        let frac = alpha - fl;
        // α slightly below an integer can round {α} up to exactly 1
        if frac >= T::one() {
            return Err(Error::Domain(format!("flux {alpha} cannot be split into floor and fraction")));
        }
        Ok(Self { alpha, floor, frac })
    }

    #[inline]
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `⌊α⌋`
    #[inline]
    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// `{α} = α - ⌊α⌋ ∈ [0, 1)`
    #[inline]
    pub fn frac(&self) -> T {
        self.frac
    }

    /// Exact test, no epsilon.
    #[inline]
    pub fn is_integer(&self) -> bool {
        self.frac == T::zero()
    }

    /// Exact test: `{α} == 1/2`.
    #[inline]
    pub fn is_half_integer(&self) -> bool {
        self.frac == T::lit(0.5)
    }
}

/// Dimensionless polar point. `theta` is never reduced modulo `2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T> {
    pub rho: T,
    pub theta: T,
}

impl<T: Real> EvalPoint<T> {
    pub fn new(rho: T, theta: T) -> Result<Self> {
        if !rho.is_finite() || rho < T::zero() {
            return Err(Error::Domain(format!("rho must be finite and >= 0, got {rho}")));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite, got {theta}")));
        }
        Ok(Self { rho, theta })
    }
}

/// Evaluation path for the corrected half-integer closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectedForm {
    /// Adaptive quadrature of the convolution integral over `r'`.
    Convolution,
    /// Direct formula through the Fresnel integral.
    Fresnel,
}

#[inline]
fn cis<T: Real>(angle: T) -> Complex<T> {
    Complex::new(angle.cos(), angle.sin())
}

/// `(-i)^k` for integer `k`, exactly.
#[inline]
fn neg_i_pow<T: Real>(k: i64) -> Complex<T> {
    match k.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), -T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), T::one()),
    }
}

/// Principal `(-i)^ν = exp(-iπν/2)` for real `ν >= 0`.
#[inline]
fn neg_i_pow_real<T: Real>(nu: T) -> Complex<T> {
    cis(-T::FRAC_PI_2() * nu)
}

/// `J_{base+j}(ρ)` for `j = 0, 1, …` with `base ∈ [0, 1]`, cut where the
/// truncation rule fires: at least `⌈ρ⌉ + 20` orders, then `consecutive_below`
/// successive values below `abs_tol`.
fn truncated_ladder<T: Real>(base: T, rho: T, cfg: &SeriesConfig<T>) -> Result<Vec<T>> {
    let floor_terms = rho.ceil().to_usize().unwrap_or(usize::MAX).saturating_add(20);
    let shift = usize::from(base == T::one());
    let nu0 = if shift == 1 { T::zero() } else { base };
    let mut len = floor_terms + cfg.consecutive_below + 16;
    loop {
        if len > cfg.max_terms {
            return Err(Error::NonConvergence { what: "eigenfunction series", limit: cfg.max_terms });
        }
        let mut ladder = bessel_j_sequence(nu0, len + shift, rho, cfg)?;
        if shift == 1 {
            ladder.remove(0);
        }
        let mut run = 0;
        for (j, v) in ladder.iter().enumerate() {
            if v.abs() < cfg.abs_tol {
                run += 1;
            } else {
                run = 0;
            }
            if j + 1 >= floor_terms && run >= cfg.consecutive_below {
                ladder.truncate(j + 1);
                return Ok(ladder);
            }
        }
        len *= 2;
    }
}

/// Bilateral series `F_α(ρ,θ) = Σ_n (-i)^{|n+α|} J_{|n+α|}(ρ) e^{inθ}`.
///
/// Terms are grouped by order: `k = n + ⌊α⌋ >= 0` carries order `k + {α}` and
/// `k < 0` carries order `-k - 1 + (1 - {α})`. Each wing is truncated
/// independently, so the window is symmetric about `n = -⌊α⌋`.
pub fn series_f<T: Real>(flux: &FluxParameter<T>, p: &EvalPoint<T>, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    let frac = flux.frac();
    let floor = flux.floor();
    let upper = truncated_ladder(frac, p.rho, cfg)?;
    let lower = truncated_ladder(T::one() - frac, p.rho, cfg)?;

    let mut sum = Complex::new(T::zero(), T::zero());
    let frac_phase = neg_i_pow_real(frac);
    for (k, &jv) in upper.iter().enumerate() {
        let k = k as i64;
        let n = k - floor;
        let coeff = neg_i_pow::<T>(k) * frac_phase * cis(T::from_i64_lossy(n) * p.theta);
        sum = sum + coeff * jv;
    }
    let low_phase = neg_i_pow_real(T::one() - frac);
    for (j, &jv) in lower.iter().enumerate() {
        let j = j as i64;
        let n = -1 - j - floor;
        let coeff = neg_i_pow::<T>(j) * low_phase * cis(T::from_i64_lossy(n) * p.theta);
        sum = sum + coeff * jv;
    }
    Ok(sum)
}

/// One-sided auxiliary series `f_ε(ρ,θ) = Σ_{n>=0} (-i)^n J_{n+ε}(ρ) e^{inθ}`, `0 < ε < 1`.
pub fn series_f_eps<T: Real>(eps: T, p: &EvalPoint<T>, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let ladder = truncated_ladder(eps, p.rho, cfg)?;
    Ok(ladder.iter().enumerate().fold(Complex::new(T::zero(), T::zero()), |acc, (n, &jv)| {
        let n = n as i64;
        acc + neg_i_pow::<T>(n) * cis(T::from_i64_lossy(n) * p.theta) * jv
    }))
}

/// Floor/fraction decomposition
/// `e^{-i⌊α⌋θ} [(-i)^{{α}} f_{{α}}(ρ,θ) + e^{-iθ} (-i)^{1-{α}} f_{1-{α}}(ρ,-θ)]`,
/// defined for non-integer flux only.
pub fn decompose_f<T: Real>(flux: &FluxParameter<T>, p: &EvalPoint<T>, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    if flux.is_integer() {
        return Err(Error::Precondition(format!(
            "decomposition requires a fractional flux, alpha = {} is an integer",
            flux.alpha()
        )));
    }
    let frac = flux.frac();
    let one_minus = T::one() - frac;
    let direct = series_f_eps(frac, p, cfg)?;
    let mirrored = series_f_eps(one_minus, &EvalPoint { rho: p.rho, theta: -p.theta }, cfg)?;
    let inner = neg_i_pow_real(frac) * direct + cis(-p.theta) * neg_i_pow_real(one_minus) * mirrored;
    Ok(cis(-T::from_i64_lossy(flux.floor()) * p.theta) * inner)
}

/// Integer-flux plane wave `exp(-i(⌊α⌋θ + ρ cos θ))`.
pub fn closed_integer<T: Real>(flux: &FluxParameter<T>, p: &EvalPoint<T>) -> Result<Complex<T>> {
    if !flux.is_integer() {
        return Err(Error::Precondition(format!("closed integer form requires integer flux, got {}", flux.alpha())));
    }
    Ok(cis(-(T::from_i64_lossy(flux.floor()) * p.theta + p.rho * p.theta.cos())))
}

/// `√(ρ(1 + cos θ)) = √(2ρ) |cos(θ/2)|`, free of cancellation near `θ = π`.
fn fresnel_limit_arg<T: Real>(p: &EvalPoint<T>) -> T {
    (T::lit(2.0) * p.rho).sqrt() * (p.theta * T::lit(0.5)).cos().abs()
}

/// The historical half-integer formula `√(i/2) e^{-iθ/2 - iρ cos θ} E(√(ρ(1+cos θ)))`,
/// independent of `⌊α⌋` and anti-periodic in `θ`.
pub fn closed_half_integer_ab<T: Real>(p: &EvalPoint<T>) -> Result<Complex<T>> {
    let sqrt_i_over_2 = cis(T::FRAC_PI_4()) * T::lit(0.5).sqrt();
    let phase = cis(-p.theta * T::lit(0.5) - p.rho * p.theta.cos());
    Ok(sqrt_i_over_2 * phase * fresnel_e(fresnel_limit_arg(p))?)
}

/// `sgn(cos(θ/2))`, with an exact zero whenever `θ/(2π)` is an odd multiple of 1/2.
pub fn sgn_cos_half<T: Real>(theta: T) -> T {
    // cos(θ/2) = cos(π t), t = θ / 2π
    let two = T::lit(2.0);
    let mut t = (theta / (two * T::PI())) % two;
    if t < T::zero() {
        t = t + two;
    }
    let half = T::lit(0.5);
    let three_halves = T::lit(1.5);
    if t == half || t == three_halves {
        T::zero()
    } else if t < half || t > three_halves {
        T::one()
    } else {
        -T::one()
    }
}

/// Single-valued half-integer closed form for `α = n + 1/2`.
///
/// `Fresnel`: `(2/√(πi)) sgn(cos(θ/2)) e^{-i(n+1/2)θ - iρ cos θ} E(√(ρ(1+cos θ)))`.
/// `Convolution`: `(e^{-inθ}/√(2πi)) (1+e^{-iθ}) ∫₀^ρ e^{ir'} e^{-i(ρ-r')cos θ} / √r' dr'`,
/// integrated in `u = √r'`.
pub fn closed_half_integer_corrected<T: Real>(n: i64, p: &EvalPoint<T>, form: CorrectedForm) -> Result<Complex<T>> {
    match form {
        CorrectedForm::Fresnel => corrected_fresnel(n, p),
        CorrectedForm::Convolution => {
            let cfg = QuadConfig::with_abs_tol(T::lit(T::DEFAULT_QUAD_TOL * 1e-2));
            corrected_convolution(n, p, &cfg)
        }
    }
}

fn corrected_fresnel<T: Real>(n: i64, p: &EvalPoint<T>) -> Result<Complex<T>> {
    let sign = sgn_cos_half(p.theta);
    if sign == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    // 2/√(πi) with the principal root √(πi) = √π e^{iπ/4}
    let pref = cis(-T::FRAC_PI_4()) * (T::lit(2.0) / T::PI().sqrt());
    let nf = T::from_i64_lossy(n);
    let phase = cis(-(nf + T::lit(0.5)) * p.theta - p.rho * p.theta.cos());
    Ok(pref * phase * fresnel_e(fresnel_limit_arg(p))? * sign)
}

/// Convolution form with an explicit quadrature policy.
pub fn corrected_convolution<T: Real>(n: i64, p: &EvalPoint<T>, quad: &QuadConfig<T>) -> Result<Complex<T>> {
    let cos_t = p.theta.cos();
    let rho = p.rho;
    // r' = u²: dr'/√r' = 2 du
    let integral = integrate(
        |u: T| {
            let r = u * u;
            Ok(cis(r) * cis(-(rho - r) * cos_t) * T::lit(2.0))
        },
        T::zero(),
        rho.sqrt(),
        quad,
    )?
    .value;
    // 1/√(2πi) = e^{-iπ/4} / √(2π)
    let pref = cis(-T::FRAC_PI_4()) / (T::lit(2.0) * T::PI()).sqrt();
    let winding = cis(-T::from_i64_lossy(n) * p.theta);
    let bracket = Complex::new(T::one(), T::zero()) + cis(-p.theta);
    Ok(pref * winding * bracket * integral)
}

/// Named evaluation strategies for `F_α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Decompose,
    /// Integer or half-integer closed form (Fresnel path for half-integers).
    Closed,
    /// The historical, anti-periodic half-integer formula.
    AbOriginal,
    /// Half-integer closed form through the convolution integral.
    Convolution,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Series, Method::Decompose, Method::Closed, Method::AbOriginal, Method::Convolution];

    pub fn label(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Decompose => "decompose",
            Method::Closed => "closed",
            Method::AbOriginal => "ab-original",
            Method::Convolution => "convolution",
        }
    }

    /// Checks that the method applies to `flux` without evaluating anything.
    pub fn check<T: Real>(self, flux: &FluxParameter<T>) -> Result<()> {
        let ok = match self {
            Method::Series => true,
            Method::Decompose => !flux.is_integer(),
            Method::Closed => flux.is_integer() || flux.is_half_integer(),
            Method::AbOriginal | Method::Convolution => flux.is_half_integer(),
        };
        if ok {
            Ok(())
        } else {
            let need = match self {
                Method::Decompose => "a non-integer",
                Method::Closed => "an integer or half-integer",
                _ => "a half-integer",
            };
            Err(Error::Precondition(format!(
                "--method {} requires {need} --alpha, got {}",
                self.label(),
                flux.alpha()
            )))
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

/// Evaluates `F_α(p)` with the requested strategy.
pub fn evaluate<T: Real>(method: Method, flux: &FluxParameter<T>, p: &EvalPoint<T>, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    method.check(flux)?;
    match method {
        Method::Series => series_f(flux, p, cfg),
        Method::Decompose => decompose_f(flux, p, cfg),
        Method::Closed if flux.is_integer() => closed_integer(flux, p),
        Method::Closed => closed_half_integer_corrected(flux.floor(), p, CorrectedForm::Fresnel),
        Method::AbOriginal => closed_half_integer_ab(p),
        Method::Convolution => closed_half_integer_corrected(flux.floor(), p, CorrectedForm::Convolution),
    }
}

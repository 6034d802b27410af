//! Numerical checks of the Laplace-transform identities behind the
//! half-integer closed form.
//!
//! Every identity is tested in the forward direction: the transform
//! `∫₀^∞ e^{-sr} f(r) dr` is computed by quadrature and compared with the
//! closed-form right-hand side at probe points `s` with `Re s > 0`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{corrected_convolution, series_f, series_f_eps, EvalPoint, FluxParameter};
use crate::error::{Error, Result};
use crate::quad::{integrate_panels, QuadConfig};
use crate::scalar::Real;
use crate::special::{bessel_j, BesselOrder, SeriesConfig};

/// `e^{-Re(s) r_max}` is below this at the default truncation radius.
const ENVELOPE_CUTOFF: f64 = 1e-16;

/// A transform variable `s` with its quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceProbe<T> {
    s: Complex<T>,
    pub quad_tol: T,
    pub r_max: T,
}

impl<T: Real> LaplaceProbe<T> {
    pub fn new(s: Complex<T>) -> Result<Self> {
        check_right_half_plane(s)?;
        let r_max = -T::lit(ENVELOPE_CUTOFF).ln() / s.re * T::lit(1.01);
        Ok(Self { s, quad_tol: T::lit(T::DEFAULT_QUAD_TOL), r_max })
    }

    pub fn with_quad_tol(mut self, quad_tol: T) -> Self {
        self.quad_tol = quad_tol;
        self
    }

    #[inline]
    pub fn s(&self) -> Complex<T> {
        self.s
    }
}

fn check_right_half_plane<T: Real>(s: Complex<T>) -> Result<()> {
    if !(s.re > T::zero()) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::Precondition(format!(
            "Laplace probe s = {} {:+}i violates Re(s) > 0",
            s.re, s.im
        )));
    }
    Ok(())
}

/// `∫₀^{r_max} e^{-sr} f(r) dr`.
///
/// The panel `[0, 1]` is integrated in `u = √r`, which absorbs an `r^{-1/2}`
/// endpoint singularity; the rest is split into unit panels and refined
/// adaptively.
pub fn laplace_numeric<T, F>(f: F, probe: &LaplaceProbe<T>) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(T) -> Result<Complex<T>>,
{
    let s = probe.s;
    let half_tol = QuadConfig::with_abs_tol(probe.quad_tol * T::lit(0.5));
    let first_end = probe.r_max.min(T::one());
    let head = integrate_panels(
        |u: T| {
            let r = u * u;
            Ok((-s * r).exp() * f(r)? * (T::lit(2.0) * u))
        },
        &[T::zero(), first_end.sqrt()],
        &half_tol,
    )?
    .value;
    if probe.r_max <= T::one() {
        return Ok(head);
    }
    let mut breaks = vec![T::one()];
    let mut edge = T::one();
    while edge + T::one() < probe.r_max {
        edge = edge + T::one();
        breaks.push(edge);
    }
    breaks.push(probe.r_max);
    let tail = integrate_panels(|r: T| Ok((-s * r).exp() * f(r)?), &breaks, &half_tol)?.value;
    Ok(head + tail)
}

/// `w = s + √(1+s²)` and `√(1+s²)`, principal roots.
fn transform_kernel<T: Real>(s: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    check_right_half_plane(s)?;
    let root = (Complex::new(T::one(), T::zero()) + s * s).sqrt();
    let w = s + root;
    // right half plane maps into the right half plane, so no branch is crossed
    debug_assert!(w.re > T::zero(), "s + sqrt(1+s^2) left the right half plane");
    if !(w.re > T::zero()) {
        return Err(Error::Domain(format!("s + sqrt(1+s^2) = {w} left the right half plane")));
    }
    Ok((w, root))
}

/// `L[J_ν](s) = (s+√(1+s²))^{-ν} / √(1+s²)`, `ν > -1`.
pub fn rhs_lap_bessel<T: Real>(nu: T, s: Complex<T>) -> Result<Complex<T>> {
    if !BesselOrder::new(nu)?.is_laplace_admissible() {
        return Err(Error::Domain(format!("Laplace transform of J_nu needs nu > -1, got {nu}")));
    }
    let (w, root) = transform_kernel(s)?;
    Ok(w.powc(Complex::new(-nu, T::zero())) / root)
}

/// `L[f_ε](s) = w^{1-ε} / (√(1+s²) (w + i e^{iθ}))` with `w = s + √(1+s²)`.
pub fn rhs_lap_f_eps<T: Real>(eps: T, theta: T, s: Complex<T>) -> Result<Complex<T>> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let (w, root) = transform_kernel(s)?;
    let ratio = Complex::new(T::zero(), T::one()) * Complex::new(theta.cos(), theta.sin());
    if (ratio / w).norm() >= T::one() {
        return Err(Error::Precondition(format!("geometric series diverges at s = {s}, |w| <= 1")));
    }
    Ok(w.powc(Complex::new(T::one() - eps, T::zero())) / (root * (w + ratio)))
}

/// Transform of the floor/fraction decomposition, assembled from two `L[f_ε]`.
pub fn rhs_lap_decomposed<T: Real>(flux: &FluxParameter<T>, theta: T, s: Complex<T>) -> Result<Complex<T>> {
    if flux.is_integer() {
        return Err(Error::Precondition("decomposition requires a fractional flux".into()));
    }
    let frac = flux.frac();
    let one_minus = T::one() - frac;
    let cis = |a: T| Complex::new(a.cos(), a.sin());
    let direct = cis(-T::FRAC_PI_2() * frac) * rhs_lap_f_eps(frac, theta, s)?;
    let mirrored = cis(-theta) * cis(-T::FRAC_PI_2() * one_minus) * rhs_lap_f_eps(one_minus, -theta, s)?;
    Ok(cis(-T::from_i64_lossy(flux.floor()) * theta) * (direct + mirrored))
}

/// Two-term product form of the half-integer transform before simplification:
/// `√(-i) e^{-inθ} (√w/√(1+s²)) (1+e^{-iθ})(w+i) / ((w+ie^{iθ})(w+ie^{-iθ}))`.
pub fn rhs_half_integer_unsimplified<T: Real>(n: i64, theta: T, s: Complex<T>) -> Result<Complex<T>> {
    let (w, root) = transform_kernel(s)?;
    let i = Complex::new(T::zero(), T::one());
    let cis = |a: T| Complex::new(a.cos(), a.sin());
    let one = Complex::new(T::one(), T::zero());
    let sqrt_neg_i = cis(-T::FRAC_PI_4());
    let bracket = (one + cis(-theta)) * (w + i) / ((w + i * cis(theta)) * (w + i * cis(-theta)));
    Ok(sqrt_neg_i * cis(-T::from_i64_lossy(n) * theta) * w.sqrt() / root * bracket)
}

/// Simplified product form
/// `(1/2) √(-i) e^{-inθ} (1+e^{-iθ}) (w+i)/(√(1+s²) √w) · 1/(s + i cos θ)`.
pub fn rhs_half_integer_product<T: Real>(n: i64, theta: T, s: Complex<T>) -> Result<Complex<T>> {
    let (w, root) = transform_kernel(s)?;
    let i = Complex::new(T::zero(), T::one());
    let cis = |a: T| Complex::new(a.cos(), a.sin());
    let one = Complex::new(T::one(), T::zero());
    let sqrt_neg_i = cis(-T::FRAC_PI_4());
    let shift = s + i * theta.cos();
    Ok(sqrt_neg_i * T::lit(0.5) * cis(-T::from_i64_lossy(n) * theta) * (one + cis(-theta)) * (w + i)
        / (root * w.sqrt() * shift))
}

/// `L[e^{-ir cos θ}](s) = 1/(s + i cos θ)`.
pub fn rhs_lap_plane_wave<T: Real>(theta: T, s: Complex<T>) -> Result<Complex<T>> {
    check_right_half_plane(s)?;
    Ok((s + Complex::new(T::zero(), theta.cos())).inv())
}

/// `(w + i) / (√(1+s²) √w)`, the transform of `√(2/(πr)) e^{ir} = J_{-1/2} + i J_{1/2}`.
pub fn rhs_lap_half_order_pair<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let (w, root) = transform_kernel(s)?;
    Ok((w + Complex::new(T::zero(), T::one())) / (root * w.sqrt()))
}

/// Identities checked by [`run_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    /// Transform of the full series equals the assembled `f_ε` transforms.
    #[serde(rename = "eq7")]
    Eq7,
    /// Transform of `f_ε`.
    #[serde(rename = "eq9")]
    Eq9,
    /// Transform of `J_ν`.
    #[serde(rename = "eq10")]
    Eq10,
    /// Unsimplified and simplified half-integer product forms agree.
    #[serde(rename = "eq11-12")]
    Eq11Eq12,
    /// Transform of the half-integer series equals the simplified product.
    #[serde(rename = "eq12-series")]
    Eq12Series,
    /// Transform of the plane wave `e^{-ir cos θ}`.
    #[serde(rename = "eq13")]
    Eq13,
    /// Transform of `√(2/(πr)) e^{ir}`.
    #[serde(rename = "eq14")]
    Eq14,
    /// Transform of the convolution form equals the simplified product.
    #[serde(rename = "faltung")]
    Faltung,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Eq7,
        IdentityId::Eq9,
        IdentityId::Eq10,
        IdentityId::Eq11Eq12,
        IdentityId::Eq12Series,
        IdentityId::Eq13,
        IdentityId::Eq14,
        IdentityId::Faltung,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::Eq7 => "eq7",
            IdentityId::Eq9 => "eq9",
            IdentityId::Eq10 => "eq10",
            IdentityId::Eq11Eq12 => "eq11-12",
            IdentityId::Eq12Series => "eq12-series",
            IdentityId::Eq13 => "eq13",
            IdentityId::Eq14 => "eq14",
            IdentityId::Faltung => "faltung",
        }
    }

    /// Absolute tolerance applied to `|lhs - rhs|`.
    pub fn tolerance(self) -> f64 {
        match self {
            IdentityId::Eq7 | IdentityId::Eq9 | IdentityId::Eq10 | IdentityId::Faltung => 1e-7,
            IdentityId::Eq11Eq12 => 1e-12,
            IdentityId::Eq12Series | IdentityId::Eq14 => 1e-8,
            IdentityId::Eq13 => 1e-9,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.label() == s)
            .ok_or_else(|| format!("unknown identity '{s}'"))
    }
}

/// Parameters of a single identity check besides `s`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ProbeParams {
    pub s: Complex<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
}

/// Outcome of one identity check at one probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub probe: ProbeParams,
    pub lhs: Complex<f64>,
    pub rhs: Complex<f64>,
    pub abs_err: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Probe values of `s` plus the fixed parameter sweeps for each identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSet {
    s_values: Vec<Complex<f64>>,
    pub quad_tol: f64,
    pub random_probes: usize,
    pub seed: u64,
}

impl ProbeSet {
    pub fn new(s_values: Vec<Complex<f64>>) -> Result<Self> {
        if s_values.is_empty() {
            return Err(Error::Domain("probe set needs at least one s value".into()));
        }
        for &s in &s_values {
            check_right_half_plane(s)?;
        }
        Ok(Self { s_values, quad_tol: f64::DEFAULT_QUAD_TOL, random_probes: 50, seed: 0x5eed })
    }

    pub fn s_values(&self) -> &[Complex<f64>] {
        &self.s_values
    }
}

impl Default for ProbeSet {
    fn default() -> Self {
        let s = vec![
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
            Complex::new(1.0, 1.0),
            Complex::new(0.5, 2.0),
        ];
        Self::new(s).expect("default probes lie in the right half plane")
    }
}

const THETA_SWEEP: [f64; 5] = [0.0, 1.0, 2.0, std::f64::consts::PI, 4.0];
const EPS_SWEEP: [f64; 3] = [0.25, 0.5, 0.75];
const NU_SWEEP: [f64; 4] = [0.0, 0.5, 1.0, 2.5];
const HALF_N_SWEEP: [i64; 3] = [-1, 0, 2];
const DECOMPOSED_ALPHA: [f64; 3] = [0.25, 1.5, -0.7];
const FALTUNG_N: [i64; 2] = [0, 1];
const FALTUNG_THETA: [f64; 2] = [0.5, 2.0];

fn probe_grid(id: IdentityId, set: &ProbeSet) -> Vec<ProbeParams> {
    let base = |s: Complex<f64>| ProbeParams { s, ..ProbeParams::default() };
    let mut out = Vec::new();
    match id {
        IdentityId::Eq7 => {
            for &s in &set.s_values {
                for a in DECOMPOSED_ALPHA {
                    for th in [0.0, 1.0, 4.0] {
                        out.push(ProbeParams { alpha: Some(a), theta: Some(th), ..base(s) });
                    }
                }
            }
        }
        IdentityId::Eq9 => {
            for &s in &set.s_values {
                for e in EPS_SWEEP {
                    for th in THETA_SWEEP {
                        out.push(ProbeParams { eps: Some(e), theta: Some(th), ..base(s) });
                    }
                }
            }
        }
        IdentityId::Eq10 => {
            for &s in &set.s_values {
                for nu in NU_SWEEP {
                    out.push(ProbeParams { nu: Some(nu), ..base(s) });
                }
            }
        }
        IdentityId::Eq11Eq12 => {
            // formula-vs-formula, so s is drawn at random rather than from the set
            let mut rng = ChaCha8Rng::seed_from_u64(set.seed);
            for _ in 0..set.random_probes {
                let s = Complex::new(rng.gen_range(0.25..4.0), rng.gen_range(-4.0..4.0));
                let theta = rng.gen_range(-4.0 * std::f64::consts::PI..4.0 * std::f64::consts::PI);
                let n = rng.gen_range(-3..=3);
                out.push(ProbeParams { theta: Some(theta), n: Some(n), ..base(s) });
            }
        }
        IdentityId::Eq12Series => {
            for &s in &set.s_values {
                for n in HALF_N_SWEEP {
                    for th in THETA_SWEEP {
                        out.push(ProbeParams { n: Some(n), theta: Some(th), ..base(s) });
                    }
                }
            }
        }
        IdentityId::Eq13 => {
            for &s in &set.s_values {
                for th in THETA_SWEEP {
                    out.push(ProbeParams { theta: Some(th), ..base(s) });
                }
            }
        }
        IdentityId::Eq14 => out.extend(set.s_values.iter().map(|&s| base(s))),
        IdentityId::Faltung => {
            for &s in set.s_values.iter().take(3) {
                for n in FALTUNG_N {
                    for th in FALTUNG_THETA {
                        out.push(ProbeParams { n: Some(n), theta: Some(th), ..base(s) });
                    }
                }
            }
        }
    }
    out
}

fn evaluate_probe(id: IdentityId, pp: &ProbeParams, quad_tol: f64) -> Result<(Complex<f64>, Complex<f64>)> {
    let cfg = SeriesConfig::<f64>::default();
    let s = pp.s;
    let probe = LaplaceProbe::new(s)?.with_quad_tol(quad_tol);
    let theta = pp.theta.unwrap_or(0.0);
    let n = pp.n.unwrap_or(0);
    match id {
        IdentityId::Eq7 => {
            let flux = FluxParameter::new(pp.alpha.unwrap_or(0.5))?;
            let lhs = laplace_numeric(|r| series_f(&flux, &EvalPoint::new(r, theta)?, &cfg), &probe)?;
            Ok((lhs, rhs_lap_decomposed(&flux, theta, s)?))
        }
        IdentityId::Eq9 => {
            let eps = pp.eps.unwrap_or(0.5);
            let lhs = laplace_numeric(|r| series_f_eps(eps, &EvalPoint::new(r, theta)?, &cfg), &probe)?;
            Ok((lhs, rhs_lap_f_eps(eps, theta, s)?))
        }
        IdentityId::Eq10 => {
            let nu = pp.nu.unwrap_or(0.0);
            let order = BesselOrder::new(nu)?;
            let lhs = laplace_numeric(|r| Ok(Complex::new(bessel_j(order, r, &cfg)?, 0.0)), &probe)?;
            Ok((lhs, rhs_lap_bessel(nu, s)?))
        }
        IdentityId::Eq11Eq12 => Ok((
            rhs_half_integer_unsimplified(n, theta, s)?,
            rhs_half_integer_product(n, theta, s)?,
        )),
        IdentityId::Eq12Series => {
            let flux = FluxParameter::new(n as f64 + 0.5)?;
            let lhs = laplace_numeric(|r| series_f(&flux, &EvalPoint::new(r, theta)?, &cfg), &probe)?;
            Ok((lhs, rhs_half_integer_product(n, theta, s)?))
        }
        IdentityId::Eq13 => {
            let c = theta.cos();
            let lhs = laplace_numeric(|r| Ok(Complex::new(0.0, -r * c).exp()), &probe)?;
            Ok((lhs, rhs_lap_plane_wave(theta, s)?))
        }
        IdentityId::Eq14 => {
            let pi = std::f64::consts::PI;
            let lhs = laplace_numeric(
                |r| Ok(Complex::new(0.0, r).exp() * (2.0 / (pi * r)).sqrt()),
                &probe,
            )?;
            Ok((lhs, rhs_lap_half_order_pair(s)?))
        }
        IdentityId::Faltung => {
            let inner = QuadConfig::with_abs_tol(1e-12);
            let lhs = laplace_numeric(|r| corrected_convolution(n, &EvalPoint::new(r, theta)?, &inner), &probe)?;
            Ok((lhs, rhs_half_integer_product(n, theta, s)?))
        }
    }
}

/// Runs one identity over its probe grid, in parallel over probes.
pub fn run_identity(id: IdentityId, set: &ProbeSet) -> Result<Vec<IdentityReport>> {
    let tolerance = id.tolerance();
    probe_grid(id, set)
        .par_iter()
        .map(|pp| {
            let (lhs, rhs) = evaluate_probe(id, pp, set.quad_tol)?;
            let abs_err = (lhs - rhs).norm();
            Ok(IdentityReport {
                identity_id: id,
                probe: *pp,
                lhs,
                rhs,
                abs_err,
                tolerance,
                passed: abs_err <= tolerance,
            })
        })
        .collect()
}

/// Runs every identity in `ids` and concatenates the reports.
pub fn run_identities(ids: &[IdentityId], set: &ProbeSet) -> Result<Vec<IdentityReport>> {
    let mut all = Vec::new();
    for &id in ids {
        all.extend(run_identity(id, set)?);
    }
    Ok(all)
}

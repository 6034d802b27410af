//! Rectangular `(ρ, θ)` sample grids and their CSV / JSON encodings.

use std::fmt::Write as _;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::eigen::sgn_cos_half;
use crate::error::{Error, Result};

/// Exact CSV header of a grid file.
pub const CSV_HEADER: &str = "rho,theta,re,im,abs,phase";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub alpha: f64,
    pub method: String,
    pub tolerance: f64,
    /// `None` when timestamps are suppressed for reproducible output.
    pub timestamp: Option<String>,
}

/// Complex samples on a `rho × theta` lattice, stored row-major by `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    rho: Vec<f64>,
    theta: Vec<f64>,
    samples: Vec<Complex<f64>>,
    pub meta: GridMeta,
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    meta: GridMeta,
    rho: Vec<f64>,
    theta: Vec<f64>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

fn is_sorted(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// `count` evenly spaced points from `start` to `stop`; `stop` is included
/// unless `half_open`.
pub fn linspace(start: f64, stop: f64, count: usize, half_open: bool) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let intervals = if half_open { count } else { count - 1 } as f64;
            let step = (stop - start) / intervals;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}

impl FieldGrid {
    pub fn new(rho: Vec<f64>, theta: Vec<f64>, samples: Vec<Complex<f64>>, meta: GridMeta) -> Result<Self> {
        if rho.is_empty() || theta.is_empty() {
            return Err(Error::Domain("grid axes must be non-empty".into()));
        }
        if samples.len() != rho.len() * theta.len() {
            return Err(Error::Domain(format!(
                "{} samples do not fill a {}x{} grid",
                samples.len(),
                rho.len(),
                theta.len()
            )));
        }
        if !is_sorted(&rho) || !is_sorted(&theta) {
            return Err(Error::Domain("grid axes must be sorted".into()));
        }
        if rho.iter().any(|r| !r.is_finite() || *r < 0.0) || theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::Domain("grid axes must be finite with rho >= 0".into()));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("grid samples must be finite".into()));
        }
        Ok(Self { rho, theta, samples, meta })
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn samples(&self) -> &[Complex<f64>] {
        &self.samples
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<f64> {
        self.samples[i * self.theta.len() + j]
    }

    /// `(rho, theta, value)` in storage order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, Complex<f64>)> + '_ {
        let nt = self.theta.len();
        self.samples.iter().enumerate().map(move |(k, z)| (self.rho[k / nt], self.theta[k % nt], *z))
    }

    /// CSV with 17 significant digits per value and `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.samples.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (r, t, z) in self.points() {
            writeln!(out, "{r:.16e},{t:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", z.re, z.im, z.norm(), z.arg())
                .expect("writing to a String cannot fail");
        }
        out
    }

    /// Rebuilds a grid from CSV text; axes are recovered from the row order.
    pub fn from_csv(text: &str, meta: GridMeta) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::Domain(format!("CSV header must be '{CSV_HEADER}'")));
        }
        let mut rho: Vec<f64> = Vec::new();
        let mut theta: Vec<f64> = Vec::new();
        let mut samples = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Domain(format!("CSV line {}: {e}", lineno + 2)))?;
            if fields.len() != 6 {
                return Err(Error::Domain(format!("CSV line {} has {} fields", lineno + 2, fields.len())));
            }
            if rho.last() != Some(&fields[0]) {
                rho.push(fields[0]);
            }
            if rho.len() == 1 {
                theta.push(fields[1]);
            }
            samples.push(Complex::new(fields[2], fields[3]));
        }
        Self::new(rho, theta, samples, meta)
    }

    pub fn to_json(&self) -> String {
        let nt = self.theta.len();
        let doc = GridJson {
            meta: self.meta.clone(),
            rho: self.rho.clone(),
            theta: self.theta.clone(),
            re: self.samples.chunks(nt).map(|row| row.iter().map(|z| z.re).collect()).collect(),
            im: self.samples.chunks(nt).map(|row| row.iter().map(|z| z.im).collect()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("grid serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GridJson = serde_json::from_str(text).map_err(|e| Error::Domain(format!("grid JSON: {e}")))?;
        if doc.re.len() != doc.rho.len() || doc.im.len() != doc.rho.len() {
            return Err(Error::Domain("grid JSON rows do not match the rho axis".into()));
        }
        let samples = doc
            .re
            .iter()
            .zip(&doc.im)
            .flat_map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex::new(a, b)))
            .collect();
        Self::new(doc.rho, doc.theta, samples, doc.meta)
    }
}

/// Complex ratio `a / b` summarised over a set of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSummary {
    pub mean_ratio: Complex<f64>,
    /// `max |ratio - mean|` over the points used.
    pub dispersion: f64,
    pub points: usize,
    /// Dispersion within `1e-8 · |mean|`.
    pub theta_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub rho: Vec<f64>,
    pub theta: Vec<f64>,
    pub abs_diff: Vec<f64>,
    pub max_abs_diff: f64,
    pub mean_abs_diff: f64,
    pub worst_point: (f64, f64),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_summary: Option<RatioSummary>,
}

/// Pointwise comparison of two grids on identical axes. With `with_ratio`,
/// also summarises `a / b` over the points where `cos(θ/2) > 0` and `b ≠ 0`.
pub fn compare_grids(a: &FieldGrid, b: &FieldGrid, with_ratio: bool) -> Result<ComparisonReport> {
    if a.rho != b.rho || a.theta != b.theta {
        return Err(Error::Domain("grids are sampled on different axes".into()));
    }
    let abs_diff: Vec<f64> = a.samples.iter().zip(&b.samples).map(|(x, y)| (x - y).norm()).collect();
    let (worst, max_abs_diff) = abs_diff
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0_f64), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
    let mean_abs_diff = abs_diff.iter().sum::<f64>() / abs_diff.len() as f64;
    let nt = a.theta.len();
    let worst_point = (a.rho[worst / nt], a.theta[worst % nt]);

    let ratio_summary = if with_ratio {
        let ratios: Vec<Complex<f64>> = a
            .points()
            .zip(b.samples.iter())
            .filter(|((_, t, _), y)| sgn_cos_half(*t) > 0.0 && y.norm() > 1e-12)
            .map(|((_, _, x), y)| x / y)
            .collect();
        (!ratios.is_empty()).then(|| {
            let mean = ratios.iter().sum::<Complex<f64>>() / ratios.len() as f64;
            let dispersion = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max);
            RatioSummary {
                mean_ratio: mean,
                dispersion,
                points: ratios.len(),
                theta_independent: dispersion <= 1e-8 * mean.norm(),
            }
        })
    } else {
        None
    };

    Ok(ComparisonReport {
        rho: a.rho.clone(),
        theta: a.theta.clone(),
        abs_diff,
        max_abs_diff,
        mean_abs_diff,
        worst_point,
        ratio_summary,
    })
}

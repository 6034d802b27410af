//! Special functions checked against independent routes: adaptive quadrature
//! for the Fresnel integral, the Jacobi–Anger expansion for integer-order
//! Bessel functions, and elementary closed forms.

use std::f64::consts::PI;

use abflux::quad::{integrate, QuadConfig};
use abflux::special::{bessel_j, fresnel_e, fresnel_e_limit, gamma, BesselOrder, SeriesConfig};
use num_complex::Complex;

fn fresnel_by_quadrature(x: f64) -> Complex<f64> {
    let cfg = QuadConfig::with_abs_tol(if x > 20.0 { 1e-11 } else { 1e-13 });
    integrate(|z: f64| Ok(Complex::new(0.0, z * z).exp()), 0.0, x, &cfg).unwrap().value
}

#[test]
fn fresnel_matches_quadrature() {
    for x in [0.5, 1.0, 2.0, 2.999, 3.0, 3.001, 5.0, 7.5, 12.0] {
        let direct = fresnel_e(x).unwrap();
        let oracle = fresnel_by_quadrature(x);
        assert!((direct - oracle).norm() <= 1e-12, "x={x}: {direct} vs {oracle}");
    }
}

#[test]
fn fresnel_limit_by_quadrature_with_tail() {
    // ∫_X^∞ e^{iz²} dz = i e^{iX²}/(2X) + O(X^{-3}); with X = 60 the remainder is ~1e-6
    let big = 60.0;
    let tail = Complex::new(0.0, 1.0) * Complex::new(0.0, big * big).exp() / (2.0 * big);
    let extrapolated = fresnel_by_quadrature(big) + tail;
    let lim = fresnel_e_limit::<f64>();
    assert!((extrapolated - lim).norm() < 1e-5);
    assert!((lim - Complex::new(0.626_657_1, 0.626_657_1)).norm() < 1e-7);
    // the remaining gap at x = 50 is the tail modulus, 1/(2x) to leading order
    let gap = (fresnel_e(50.0).unwrap() - lim).norm();
    assert!((gap - 0.01).abs() < 1e-6, "gap {gap}");
}

#[test]
fn fresnel_spiral_stays_bounded() {
    // The first maximum of |E| sits near x = 1.52 with |E| = 1.1894458957238736
    // (30-digit reference), i.e. 1.342 times the limiting modulus.
    let lim = fresnel_e_limit::<f64>().norm();
    let mut x = 0.0;
    let mut peak = (0.0_f64, 0.0_f64);
    while x <= 30.0 {
        let m = fresnel_e(x).unwrap().norm();
        if m > peak.0 {
            peak = (m, x);
        }
        x += 0.01;
    }
    assert!((peak.0 - 1.189_445_895_723_873_6).abs() < 1e-12, "peak {peak:?}");
    assert!((peak.1 - 1.52).abs() < 1e-9);
    assert!(peak.0 <= lim * 1.35);
    assert!((fresnel_by_quadrature(1.52).norm() - peak.0).abs() < 1e-12);
}

fn j(n: i64, r: f64, cfg: &SeriesConfig<f64>) -> f64 {
    bessel_j(BesselOrder::new(n as f64).unwrap(), r, cfg).unwrap()
}

#[test]
fn jacobi_anger_expansion() {
    let cfg = SeriesConfig::default();
    for r in [0.1_f64, 1.0, 5.0, 12.5, 20.0] {
        for theta in [0.0, 0.7, 2.0, PI, 5.5] {
            // same truncation rule as the eigenfunction series
            let floor = r.ceil() as i64 + 20;
            let mut sum = Complex::new(j(0, r, &cfg), 0.0);
            let mut run = 0;
            let mut n = 1;
            loop {
                let jp = j(n, r, &cfg);
                let jm = j(-n, r, &cfg);
                let i_n = Complex::new(0.0, 1.0).powi(n as i32);
                let i_mn = Complex::new(0.0, 1.0).powi(-n as i32);
                sum += i_n * jp * Complex::new(0.0, n as f64 * (theta - PI)).exp();
                sum += i_mn * jm * Complex::new(0.0, -(n as f64) * (theta - PI)).exp();
                run = if jp.abs() < cfg.abs_tol { run + 1 } else { 0 };
                if n >= floor && run >= cfg.consecutive_below {
                    break;
                }
                n += 1;
            }
            let expected = Complex::new(0.0, -r * theta.cos()).exp();
            assert!((sum - expected).norm() <= 1e-9, "r={r} theta={theta}");
        }
    }
}

#[test]
fn half_order_bessel_closed_forms() {
    let cfg = SeriesConfig::default();
    let mut r = 0.1;
    while r <= 40.0 {
        let amp = (2.0 / (PI * r)).sqrt();
        let jp = bessel_j(BesselOrder::new(0.5).unwrap(), r, &cfg).unwrap();
        let jm = bessel_j(BesselOrder::new(-0.5).unwrap(), r, &cfg).unwrap();
        assert!((jp - amp * r.sin()).abs() <= 1e-11);
        assert!((jm - amp * r.cos()).abs() <= 1e-11);
        r += 0.0997;
    }
}

#[test]
fn bessel_recurrence_identity() {
    // J_{ν-1} + J_{ν+1} = (2ν/x) J_ν across both evaluation regimes
    let cfg = SeriesConfig::default();
    for x in [0.3, 4.0, 11.9, 12.1, 25.0, 49.0] {
        for nu in [1.25, 2.5, 7.0, 30.3] {
            let f = |v: f64| bessel_j(BesselOrder::new(v).unwrap(), x, &cfg).unwrap();
            let lhs = f(nu - 1.0) + f(nu + 1.0);
            assert!((lhs - 2.0 * nu / x * f(nu)).abs() <= 1e-11, "nu={nu} x={x}");
        }
    }
}

#[test]
fn gamma_duplication_formula() {
    // Γ(x) Γ(x + 1/2) = 2^{1-2x} √π Γ(2x)
    for x in [0.3_f64, 0.75, 1.9, 6.1, 12.0, 24.5] {
        let lhs = gamma(x).unwrap() * gamma(x + 0.5).unwrap();
        let rhs = 2f64.powf(1.0 - 2.0 * x) * PI.sqrt() * gamma(2.0 * x).unwrap();
        assert!(((lhs - rhs) / rhs).abs() < 1e-12, "x={x}");
    }
}

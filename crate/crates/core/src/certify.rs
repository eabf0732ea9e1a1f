//! Curve-based zero-freeness certification, orbit refutation, grid scans,
//! and the numeric verification of the fixed-point and right-half-plane
//! curve constructions.
//!
//! A `Certified` status means the iterated curve stayed in the upper half
//! plane through its stopping window and so witnesses zero-freeness at the
//! queried activity. `Refuted` only means the curve criterion's hypothesis
//! failed; it is never a proof that a zero exists.

use crate::complexgeom::{principal_arg, wrap_angle, ComplexPoint};
use crate::regions::{beta_star, rhp_bound, theta_d};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// A sampled point this close to `-1` makes the curve degenerate.
pub const DEGENERATE_EPS: f64 = 1e-12;
/// Neighboring samples whose `arg(1 + h)` differ by more than this are
/// refined by halving.
pub const ARG_JUMP_REFINE: f64 = 0.05;
/// Orbit iteration guardrail.
pub const ORBIT_MAX_N: usize = 1_000_000;
/// Orbits stop once the iterate modulus passes this radius.
pub const DIVERGENCE_RADIUS: f64 = 1e9;
/// Grid scans are capped at this per-axis resolution.
pub const SCAN_RES_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("activity must be a finite nonzero complex number")]
    InvalidLambda,
    #[error("degree parameter d must be at least {min}, got {d}")]
    BadDegree { d: u32, min: u32 },
    #[error("curve hit the degenerate point -1 at t = {t}")]
    Degenerate { t: f64 },
    #[error("orbit iteration count {n} exceeds the guardrail {max}")]
    OrbitGuardrail { n: usize, max: usize },
    #[error("scan resolution {res} exceeds the guardrail {max}")]
    ScanGuardrail { res: usize, max: usize },
    #[error("log-orbit reached 1 + lambda e^(-dw) = 0 at step {step} (near-refutation)")]
    LogOrbitNearMinusOne { step: usize },
    #[error("invalid options: {0}")]
    BadOptions(String),
    #[error(transparent)]
    Region(#[from] crate::regions::RegionError),
}

/// Options for curve construction and certification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOpts {
    /// Base step of the fractional grid on each unit interval of `t`.
    pub dt: f64,
    /// The curve is abandoned as inconclusive past this time.
    pub t_max: f64,
    /// `Im h(t) < -tol_im` counts as leaving the upper half plane.
    pub tol_im: f64,
    /// Slack allowed in the monotonicity tests on `arg(1 + h)`.
    pub tol_arg: f64,
    /// Keep sampling to `t_max` even after the stopping window completes.
    pub run_past_window: bool,
}

impl Default for CurveOpts {
    fn default() -> CurveOpts {
        CurveOpts { dt: 1e-3, t_max: 200.0, tol_im: 1e-9, tol_arg: 1e-9, run_past_window: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    /// Stopping window `[tau_star, tau_star + 1]` fully sampled.
    WindowComplete,
    /// A sample left the upper half plane.
    Refuted,
    /// `t_max` reached first.
    Exhausted,
}

/// The iterated certification curve: `h(t) = t lambda` on `[0, 1]`, then
/// `h(t) = lambda / (1 + h(t-1))^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    pub dt: f64,
    pub t_values: Vec<f64>,
    pub points: Vec<ComplexPoint>,
    pub stop: StopReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    Certified,
    Refuted,
    Inconclusive,
}

/// Outcome of a certification run, including the discretization and
/// tolerances it was produced with.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub d: u32,
    /// The activity as queried (certification conjugates internally when
    /// `Im lambda < 0`).
    pub lambda: ComplexPoint,
    pub status: CertStatus,
    pub tau_star: Option<f64>,
    pub ceil_tau_star: Option<u32>,
    /// Minimum sampled `Im h` over `[0, tau_star + 1]` when the window was
    /// reached, otherwise over every computed sample.
    pub min_im: f64,
    pub tol_im: f64,
    pub tol_arg: f64,
    pub dt: f64,
    pub t_max: f64,
    pub note: Option<String>,
    pub samples: Option<CurveSamples>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateTolerances {
    pub im: f64,
    pub arg: f64,
}

/// Stable wire format of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub d: u32,
    pub lambda: [f64; 2],
    pub status: CertStatus,
    pub tau_star: Option<f64>,
    pub ceil_tau_star: Option<u32>,
    pub min_im: f64,
    pub tolerances: CertificateTolerances,
    pub dt: f64,
    pub t_max: f64,
}

impl Certificate {
    pub fn to_schema(&self) -> CertificateJson {
        CertificateJson {
            d: self.d,
            lambda: [self.lambda.re, self.lambda.im],
            status: self.status,
            tau_star: self.tau_star,
            ceil_tau_star: self.ceil_tau_star,
            min_im: self.min_im,
            tolerances: CertificateTolerances { im: self.tol_im, arg: self.tol_arg },
            dt: self.dt,
            t_max: self.t_max,
        }
    }
}

#[inline]
fn tree_map(d: u32, lambda: ComplexPoint, z: ComplexPoint) -> ComplexPoint {
    lambda / (Complex64::new(1.0 + z.re, z.im)).powi(d as i32)
}

/// Computes the certification curve on an adaptively refined grid.
///
/// Requires `Im lambda > 0`, `dt` in `(0, 0.1]`, `t_max <= 1e4`. Stops early
/// when a sample leaves the upper half plane or, unless `run_past_window` is
/// set, once the stopping window `[tau_star, tau_star + 1]` is covered.
pub fn h_curve(d: u32, lambda: ComplexPoint, dt: f64, t_max: f64) -> Result<CurveSamples, CertifyError> {
    h_curve_with(d, lambda, &CurveOpts { dt, t_max, ..CurveOpts::default() })
}

pub fn h_curve_with(d: u32, lambda: ComplexPoint, opts: &CurveOpts) -> Result<CurveSamples, CertifyError> {
    if d < 2 {
        return Err(CertifyError::BadDegree { d, min: 2 });
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda.im <= 0.0 {
        return Err(CertifyError::InvalidLambda);
    }
    if !(opts.dt > 0.0 && opts.dt <= 0.1) {
        return Err(CertifyError::BadOptions(format!("dt must lie in (0, 0.1], got {}", opts.dt)));
    }
    if !(opts.t_max >= 2.0 && opts.t_max <= 1e4) {
        return Err(CertifyError::BadOptions(format!(
            "t_max must lie in [2, 1e4], got {}",
            opts.t_max
        )));
    }

    let n_steps = (1.0 / opts.dt).round().max(2.0) as usize;
    // Fractional offsets in (0, 1]; the last one is exactly 1 so integer
    // times are always sampled.
    let mut fracs: Vec<f64> = (1..=n_steps).map(|i| i as f64 / n_steps as f64).collect();
    let frac_cap = n_steps * 64;
    let mut levels: Vec<Vec<Complex64>> = Vec::new();

    let recompute = |fracs: &[f64], levels: &[Vec<Complex64>], lvl: usize, idx: usize| -> Complex64 {
        if lvl == 0 {
            fracs[idx] * lambda
        } else {
            tree_map(d, lambda, levels[lvl - 1][idx])
        }
    };

    let mut stop = StopReason::Exhausted;
    let mut tau: Option<f64> = None;
    let mut refuted_at: Option<usize> = None; // global sample cut within current level
    // Unwrapped `arg(1 + h)` along the assembled curve, seeded at h(0) = 0.
    let mut unwrapped: Vec<f64> = vec![0.0];
    let mut runmax = 0.0f64;

    let mut level = 0usize;
    while (level as f64) < opts.t_max {
        let mut vals: Vec<Complex64> = (0..fracs.len())
            .map(|i| recompute(&fracs, &levels, level, i))
            .collect();

        // Halve gaps with a large swing of arg(1 + h); insertion is global
        // so every level keeps the same fractional grid.
        for _pass in 0..12 {
            if fracs.len() >= frac_cap {
                break;
            }
            let mut inserts: Vec<f64> = Vec::new();
            let mut prev_arg = if level == 0 {
                0.0
            } else {
                principal_arg(Complex64::new(1.0, 0.0) + *levels[level - 1].last().unwrap())
            };
            for (i, v) in vals.iter().enumerate() {
                let a = principal_arg(Complex64::new(1.0 + v.re, v.im));
                if wrap_angle(a - prev_arg).abs() > ARG_JUMP_REFINE {
                    // the sample before offset fracs[0] sits at offset 0 of
                    // this level (h(level) itself)
                    let left = if i == 0 { 0.0 } else { fracs[i - 1] };
                    inserts.push(0.5 * (left + fracs[i]));
                }
                prev_arg = a;
            }
            if inserts.is_empty() {
                break;
            }
            inserts.dedup();
            for s in inserts {
                if s <= 0.0 {
                    continue;
                }
                let pos = fracs.partition_point(|&x| x < s);
                if pos < fracs.len() && fracs[pos] == s {
                    continue;
                }
                fracs.insert(pos, s);
                let mut chain = s * lambda;
                for lvl in 0..levels.len() {
                    if lvl > 0 {
                        chain = tree_map(d, lambda, levels[lvl - 1][pos]);
                    }
                    levels[lvl].insert(pos, chain);
                }
                let v = if level == 0 {
                    s * lambda
                } else {
                    tree_map(d, lambda, levels[level - 1][pos])
                };
                vals.insert(pos, v);
            }
        }

        // Degeneracy, refutation, and tau-star detection in sample order.
        for (i, v) in vals.iter().enumerate() {
            let w = Complex64::new(1.0 + v.re, v.im);
            if w.norm() < DEGENERATE_EPS {
                return Err(CertifyError::Degenerate { t: level as f64 + fracs[i] });
            }
            let raw = principal_arg(w);
            let prev = *unwrapped.last().unwrap();
            let a = prev + wrap_angle(raw - prev);
            unwrapped.push(a);
            if tau.is_none() {
                if a < runmax - opts.tol_arg {
                    // previous sample time
                    let t_prev = if i == 0 {
                        level as f64
                    } else {
                        level as f64 + fracs[i - 1]
                    };
                    tau = Some(t_prev.max(0.0));
                } else {
                    runmax = runmax.max(a);
                }
            }
            if v.im < -opts.tol_im && refuted_at.is_none() {
                refuted_at = Some(i);
            }
        }

        if let Some(cut) = refuted_at {
            vals.truncate(cut + 1);
            levels.push(vals);
            stop = StopReason::Refuted;
            break;
        }
        levels.push(vals);
        level += 1;

        if !opts.run_past_window {
            if let Some(tau_v) = tau {
                if level as f64 >= tau_v + 1.0 {
                    stop = StopReason::WindowComplete;
                    break;
                }
            }
        }
    }
    if let (StopReason::Exhausted, Some(tau_v), false) = (stop, tau, opts.run_past_window) {
        // window may have completed exactly at t_max
        if level as f64 >= tau_v + 1.0 {
            stop = StopReason::WindowComplete;
        }
    }

    let mut t_values = Vec::with_capacity(1 + levels.iter().map(Vec::len).sum::<usize>());
    let mut points = Vec::with_capacity(t_values.capacity());
    t_values.push(0.0);
    points.push(Complex64::new(0.0, 0.0));
    for (lvl, vals) in levels.iter().enumerate() {
        for (i, v) in vals.iter().enumerate() {
            t_values.push(lvl as f64 + fracs[i]);
            points.push(*v);
        }
    }
    Ok(CurveSamples { dt: opts.dt, t_values, points, stop })
}

fn unwrapped_arg1p(samples: &CurveSamples) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.points.len());
    let mut prev = 0.0f64;
    for p in &samples.points {
        let raw = principal_arg(Complex64::new(1.0 + p.re, p.im));
        let a = prev + wrap_angle(raw - prev);
        out.push(a);
        prev = a;
    }
    out
}

fn tau_star_detail(samples: &CurveSamples, tol_arg: f64) -> (f64, bool) {
    let args = unwrapped_arg1p(samples);
    let mut runmax = f64::NEG_INFINITY;
    for (i, &a) in args.iter().enumerate() {
        if a < runmax - tol_arg {
            return (samples.t_values[i - 1], true);
        }
        runmax = runmax.max(a);
    }
    (*samples.t_values.last().unwrap(), false)
}

/// Largest sampled `t'` such that `arg(1 + h(t))` is non-decreasing (within
/// `tol_arg`) on `[0, t']`, computed on unwrapped arguments. Always at least
/// 1 for curves satisfying the construction hypotheses.
pub fn tau_star(samples: &CurveSamples, tol_arg: f64) -> f64 {
    tau_star_detail(samples, tol_arg).0
}

/// Runs the iterated-curve criterion at `lambda`.
///
/// Activities in the lower half plane are conjugated first (zero sets are
/// conjugation-symmetric); real activities return `Inconclusive` since the
/// criterion requires `Im lambda > 0`.
pub fn certify_simons(d: u32, lambda: ComplexPoint, opts: &CurveOpts) -> Result<Certificate, CertifyError> {
    if d < 2 {
        return Err(CertifyError::BadDegree { d, min: 2 });
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) || lambda == Complex64::new(0.0, 0.0) {
        return Err(CertifyError::InvalidLambda);
    }
    let base = Certificate {
        d,
        lambda,
        status: CertStatus::Inconclusive,
        tau_star: None,
        ceil_tau_star: None,
        min_im: 0.0,
        tol_im: opts.tol_im,
        tol_arg: opts.tol_arg,
        dt: opts.dt,
        t_max: opts.t_max,
        note: None,
        samples: None,
    };
    if lambda.im == 0.0 {
        return Ok(Certificate {
            note: Some("real activity: the curve criterion needs Im lambda > 0".into()),
            ..base
        });
    }
    let run_lambda = if lambda.im < 0.0 { lambda.conj() } else { lambda };
    let samples = match h_curve_with(d, run_lambda, opts) {
        Ok(s) => s,
        Err(CertifyError::Degenerate { t }) => {
            return Ok(Certificate {
                note: Some(format!("degenerate curve: sample within {DEGENERATE_EPS} of -1 at t = {t}")),
                ..base
            });
        }
        Err(e) => return Err(e),
    };

    let (tau, found) = tau_star_detail(&samples, opts.tol_arg);
    let args = unwrapped_arg1p(&samples);
    let curve_end = *samples.t_values.last().unwrap();

    let window_end = tau + 1.0;
    let min_im_window = samples
        .t_values
        .iter()
        .zip(&samples.points)
        .filter(|(t, _)| **t <= window_end + 1e-12)
        .map(|(_, p)| p.im)
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let min_im_global = samples.points.iter().map(|p| p.im).fold(f64::INFINITY, f64::min).min(0.0);

    let any_refute = min_im_global < -opts.tol_im;
    let status = if any_refute {
        CertStatus::Refuted
    } else if found && curve_end + 1e-12 >= window_end {
        // Stopping-window conditions: arg(1 + h(tau)) small enough and
        // non-increasing across [tau, tau + 1].
        let tau_idx = samples.t_values.iter().position(|&t| t >= tau - 1e-12).unwrap();
        let arg_at_tau = args[tau_idx];
        let small_enough = arg_at_tau <= principal_arg(run_lambda) / d as f64 + opts.tol_arg;
        let mut runmin = f64::INFINITY;
        let mut non_increasing = true;
        for (i, t) in samples.t_values.iter().enumerate() {
            if *t < tau - 1e-12 || *t > window_end + 1e-12 {
                continue;
            }
            if args[i] > runmin + opts.tol_arg {
                non_increasing = false;
                break;
            }
            runmin = runmin.min(args[i]);
        }
        if small_enough && non_increasing && min_im_window >= -opts.tol_im {
            CertStatus::Certified
        } else {
            CertStatus::Inconclusive
        }
    } else {
        CertStatus::Inconclusive
    };

    Ok(Certificate {
        status,
        tau_star: if found { Some(tau) } else { None },
        ceil_tau_star: if found { Some(tau.ceil() as u32) } else { None },
        min_im: if found && curve_end + 1e-12 >= window_end { min_im_window } else { min_im_global },
        samples: Some(samples),
        ..base
    })
}

/// Rectangular scan window in the activity plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub lambda: [f64; 2],
    pub status: CertStatus,
    pub ceil_tau_star: Option<u32>,
}

/// Certifies the center of every cell of a `res x res` grid over `window`,
/// row-major from `im_min` upward. Cells are processed in parallel and
/// merged in deterministic order.
pub fn scan_grid(
    d: u32,
    window: ScanWindow,
    res: usize,
    opts: &CurveOpts,
) -> Result<Vec<ScanCell>, CertifyError> {
    if res == 0 || res > SCAN_RES_CAP {
        return Err(CertifyError::ScanGuardrail { res, max: SCAN_RES_CAP });
    }
    if !(window.re_min < window.re_max && window.im_min < window.im_max) {
        return Err(CertifyError::BadOptions("scan window must have positive extent".into()));
    }
    if d < 2 {
        return Err(CertifyError::BadDegree { d, min: 2 });
    }
    let dx = (window.re_max - window.re_min) / res as f64;
    let dy = (window.im_max - window.im_min) / res as f64;
    let cells: Vec<ScanCell> = (0..res * res)
        .into_par_iter()
        .map(|idx| {
            let ix = idx % res;
            let iy = idx / res;
            let lam = Complex64::new(
                window.re_min + (ix as f64 + 0.5) * dx,
                window.im_min + (iy as f64 + 0.5) * dy,
            );
            match certify_simons(d, lam, opts) {
                Ok(cert) => ScanCell {
                    lambda: [lam.re, lam.im],
                    status: cert.status,
                    ceil_tau_star: cert.ceil_tau_star,
                },
                // lambda == 0 in a cell center: the criterion does not apply
                Err(_) => ScanCell { lambda: [lam.re, lam.im], status: CertStatus::Inconclusive, ceil_tau_star: None },
            }
        })
        .collect();
    Ok(cells)
}

/// Orbit of the univariate recurrence from 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    /// Iterates `x_0 = 0, x_{k+1} = lambda / (1 + x_k)^d` (or their
    /// log-plane images for [`orbit_w`]).
    pub points: Vec<[f64; 2]>,
    pub min_dist_to_minus1: f64,
    /// Some iterate had `Re(1 + x) < 0`.
    pub crossed: bool,
}

/// Iterates `x -> lambda/(1+x)^d` from 0, recording the minimum distance of
/// the iterates to `-1`. Stops at `n_max` steps, on divergence, or when an
/// iterate lands within `1e-12` of `-1`.
pub fn orbit(d: u32, lambda: ComplexPoint, n_max: usize) -> Result<OrbitResult, CertifyError> {
    if d < 1 {
        return Err(CertifyError::BadDegree { d, min: 1 });
    }
    if n_max > ORBIT_MAX_N {
        return Err(CertifyError::OrbitGuardrail { n: n_max, max: ORBIT_MAX_N });
    }
    let mut points = Vec::with_capacity(n_max + 1);
    let mut x = Complex64::new(0.0, 0.0);
    points.push([0.0, 0.0]);
    let mut min_dist: f64 = 1.0;
    let mut crossed = false;
    for _ in 0..n_max {
        let w = Complex64::new(1.0 + x.re, x.im);
        if w.norm() < DEGENERATE_EPS {
            break;
        }
        x = lambda / w.powi(d as i32);
        points.push([x.re, x.im]);
        let w_next = Complex64::new(1.0 + x.re, x.im);
        min_dist = min_dist.min(w_next.norm());
        crossed |= w_next.re < 0.0;
        if x.norm() > DIVERGENCE_RADIUS {
            break;
        }
    }
    Ok(OrbitResult { points, min_dist_to_minus1: min_dist, crossed })
}

/// The same orbit in log coordinates `w = log(1 + z)`, iterating
/// `w -> log(1 + lambda e^(-dw))` from 0. Distances to `-1` translate to
/// `e^(Re w)`.
pub fn orbit_w(d: u32, lambda: ComplexPoint, n_max: usize) -> Result<OrbitResult, CertifyError> {
    if d < 1 {
        return Err(CertifyError::BadDegree { d, min: 1 });
    }
    if n_max > ORBIT_MAX_N {
        return Err(CertifyError::OrbitGuardrail { n: n_max, max: ORBIT_MAX_N });
    }
    let mut points = Vec::with_capacity(n_max + 1);
    let mut w = Complex64::new(0.0, 0.0);
    points.push([0.0, 0.0]);
    let mut min_dist: f64 = 1.0;
    let mut crossed = false;
    for step in 1..=n_max {
        let u = Complex64::new(1.0, 0.0) + lambda * (-(d as f64) * w).exp();
        if u.norm() < DEGENERATE_EPS {
            return Err(CertifyError::LogOrbitNearMinusOne { step });
        }
        w = crate::complexgeom::principal_log(u).expect("u checked nonzero");
        points.push([w.re, w.im]);
        min_dist = min_dist.min(w.re.exp());
        let z_plus_1 = w.exp();
        crossed |= z_plus_1.re < 0.0;
        if (z_plus_1 - Complex64::new(1.0, 0.0)).norm() > DIVERGENCE_RADIUS {
            break;
        }
    }
    Ok(OrbitResult { points, min_dist_to_minus1: min_dist, crossed })
}

// ---------------------------------------------------------------------------
// Fixed-point (positive axis) curve construction.
// ---------------------------------------------------------------------------

/// Parameters of the two-segment curve certifying activities near the
/// positive real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SokalParams {
    pub d: u32,
    pub epsilon: f64,
    pub delta: f64,
    pub theta: f64,
}

impl SokalParams {
    pub fn new(d: u32, epsilon: f64, delta: f64, theta: f64) -> Result<SokalParams, CertifyError> {
        if d < 2 {
            return Err(CertifyError::BadDegree { d, min: 2 });
        }
        let valid = epsilon > 0.0 && epsilon < 1.0 && delta > 0.0 && theta >= 0.0;
        if !valid {
            return Err(CertifyError::BadOptions(
                "need epsilon in (0,1), delta > 0, theta >= 0".into(),
            ));
        }
        Ok(SokalParams { d, epsilon, delta, theta })
    }

    /// Base activity `(1 - eps)(d - eps)^d / (d - 1)^(d+1)`.
    pub fn lambda0(&self) -> f64 {
        let df = self.d as f64;
        (1.0 - self.epsilon) * (df - self.epsilon).powi(self.d as i32)
            / (df - 1.0).powi(self.d as i32 + 1)
    }

    /// The certified activity `lambda0 e^(i theta)`.
    pub fn lambda(&self) -> ComplexPoint {
        Complex64::from_polar(self.lambda0(), self.theta)
    }

    /// Fixed point `(1 - eps)/(d - 1)` of `z -> lambda0/(1+z)^d`.
    pub fn z_fixed(&self) -> f64 {
        (1.0 - self.epsilon) / (self.d as f64 - 1.0)
    }

    pub fn z_plus(&self) -> ComplexPoint {
        Complex64::new(1.0 - self.epsilon, self.delta) / (self.d as f64 - 1.0)
    }

    pub fn z_minus(&self) -> ComplexPoint {
        self.z_plus().conj()
    }
}

/// Per-condition outcome of the fixed-point curve check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SokalCheck {
    pub fixed_point_ok: bool,
    /// `arg z+ > arg f(z-) > 0`.
    pub upper_wedge_ok: bool,
    /// `arg z- < arg f(z+) < 0`.
    pub lower_wedge_ok: bool,
    /// `arg(f(z+)/(1+f(z+))) + arg(z+/(1+z+)) >= 0`.
    pub angle_sum_ok: bool,
    /// `|f(z+-)| < |z_fixed|`.
    pub modulus_ok: bool,
    /// `arg(1 + f(t z+))` non-increasing on the sampled grid.
    pub mono_plus_ok: bool,
    /// `arg(1 + f(t z-))` non-decreasing on the sampled grid.
    pub mono_minus_ok: bool,
    pub first_failure: Option<String>,
}

impl SokalCheck {
    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies the inequalities and sampled covering monotonicity behind the
/// fixed-point curve construction, on a 1000-point grid per segment.
pub fn sokal_curve_check(params: &SokalParams) -> SokalCheck {
    let d = params.d;
    let lam = params.lambda();
    let z0 = Complex64::new(params.z_fixed(), 0.0);
    let zp = params.z_plus();
    let zm = params.z_minus();
    let f = |z: Complex64| tree_map(d, lam, z);
    let fp = f(zp);
    let fm = f(zm);

    let fixed_point_ok =
        (Complex64::new(params.lambda0(), 0.0) / (Complex64::new(1.0, 0.0) + z0).powi(d as i32)
            - z0)
            .norm()
            < 1e-12;
    let upper_wedge_ok =
        principal_arg(zp) > principal_arg(fm) && principal_arg(fm) > 0.0;
    let lower_wedge_ok =
        principal_arg(zm) < principal_arg(fp) && principal_arg(fp) < 0.0;
    let angle_sum_ok = principal_arg(fp / (Complex64::new(1.0, 0.0) + fp))
        + principal_arg(zp / (Complex64::new(1.0, 0.0) + zp))
        >= 0.0;
    let modulus_ok = fm.norm() < z0.norm() && fp.norm() < z0.norm();

    const GRID: usize = 1000;
    let mono = |seg: Complex64, increasing: bool| -> bool {
        let mut prev = None;
        for i in 0..=GRID {
            let t = i as f64 / GRID as f64;
            let a = principal_arg(Complex64::new(1.0, 0.0) + f(t * seg));
            if let Some(p) = prev {
                if increasing && a < p - 1e-12 {
                    return false;
                }
                if !increasing && a > p + 1e-12 {
                    return false;
                }
            }
            prev = Some(a);
        }
        true
    };
    let mono_plus_ok = mono(zp, false);
    let mono_minus_ok = mono(zm, true);

    let first_failure = [
        (fixed_point_ok, "fixed point: lambda0/(1+z0)^d = z0"),
        (upper_wedge_ok, "upper wedge: arg z+ > arg f(z-) > 0"),
        (lower_wedge_ok, "lower wedge: arg z- < arg f(z+) < 0"),
        (angle_sum_ok, "angle sum: arg(f(z+)/(1+f(z+))) + arg(z+/(1+z+)) >= 0"),
        (modulus_ok, "modulus: |f(z+-)| < |z0|"),
        (mono_plus_ok, "covering monotonicity: arg(1+f(t z+)) non-increasing"),
        (mono_minus_ok, "covering monotonicity: arg(1+f(t z-)) non-decreasing"),
    ]
    .iter()
    .find(|(ok, _)| !ok)
    .map(|(_, name)| (*name).to_string());

    SokalCheck {
        fixed_point_ok,
        upper_wedge_ok,
        lower_wedge_ok,
        angle_sum_ok,
        modulus_ok,
        mono_plus_ok,
        mono_minus_ok,
        first_failure,
    }
}

// ---------------------------------------------------------------------------
// Right-half-plane curve construction.
// ---------------------------------------------------------------------------

/// Parameters of the two-segment right-half-plane curve: segment endpoints
/// `A = r2 e^(-i beta)` and `B = i tan(psi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhpCurveParams {
    pub d: u32,
    pub lambda: [f64; 2],
    pub beta: f64,
    pub psi: f64,
    pub r2: f64,
}

impl RhpCurveParams {
    pub fn new(d: u32, lambda: ComplexPoint, beta: f64, psi: f64, r2: f64) -> Result<RhpCurveParams, CertifyError> {
        if d < 2 {
            return Err(CertifyError::BadDegree { d, min: 2 });
        }
        let theta = principal_arg(lambda);
        if !(lambda.norm() > 0.0 && theta > 0.0 && theta <= FRAC_PI_2 + 1e-12) {
            return Err(CertifyError::BadOptions(
                "lambda must satisfy |lambda| > 0, arg lambda in (0, pi/2]".into(),
            ));
        }
        if !((0.0..FRAC_PI_2).contains(&beta) && (0.0..FRAC_PI_2).contains(&psi) && r2 >= 0.0) {
            return Err(CertifyError::BadOptions("need beta, psi in [0, pi/2) and r2 >= 0".into()));
        }
        Ok(RhpCurveParams { d, lambda: [lambda.re, lambda.im], beta, psi, r2 })
    }

    /// Instantiates the parameters used to establish the right-half-plane
    /// radius at angle `theta`, with the activity scaled to
    /// `scale * rhp_bound(d, theta)`.
    pub fn for_bound_angle(d: u32, theta: f64, scale: f64) -> Result<RhpCurveParams, CertifyError> {
        let td = theta_d(d)?;
        let r = scale * rhp_bound(d, theta)?;
        let lambda = Complex64::from_polar(r, theta);
        let q = (FRAC_PI_2 - theta) / d as f64;
        let (beta, psi) = if theta <= td {
            (theta, 2.0 * theta / d as f64)
        } else {
            let b = beta_star(d, theta)?;
            (b, (theta + b) / d as f64)
        };
        let r2 = if (theta - FRAC_PI_2).abs() <= 1e-12 {
            (PI / (2.0 * d as f64)).tan()
        } else {
            // largest t with arg(1 + t e^(i beta)) <= q, infinite when the
            // ray angle stays under q
            match ray_angle_cap(beta, q) {
                Some(cap) => cap,
                None => r,
            }
        };
        RhpCurveParams::new(d, lambda, beta, psi, r2)
    }

    pub fn endpoint_a(&self) -> ComplexPoint {
        Complex64::from_polar(self.r2, -self.beta)
    }

    pub fn endpoint_b(&self) -> ComplexPoint {
        Complex64::new(0.0, self.psi.tan())
    }

    fn lambda_c(&self) -> ComplexPoint {
        Complex64::new(self.lambda[0], self.lambda[1])
    }
}

/// Largest `t >= 0` with `arg(1 + t e^(i ray)) <= q`, or `None` when the
/// whole ray satisfies the cap (`q >= ray`).
fn ray_angle_cap(ray: f64, q: f64) -> Option<f64> {
    if q >= ray {
        return None;
    }
    Some(q.tan() / (ray.sin() - ray.cos() * q.tan()))
}

/// Per-condition outcome of the right-half-plane curve check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhpCheck {
    /// The five closed-form side conditions, in statement order:
    /// `theta - d psi >= -beta`, `r2 >= r`, `r sin theta <= tan psi`,
    /// `theta + d arg(1 + r2 e^(i beta)) <= pi/2`, `theta >= beta`.
    pub conditions: [bool; 5],
    /// Sampled image of the curve stayed inside the covered wedges.
    pub covering_ok: bool,
    pub first_failure: Option<String>,
}

impl RhpCheck {
    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies the five side conditions of the right-half-plane construction
/// and then samples `f(h(t))` on a 1000-point grid over `t in [-1, 1]`,
/// checking containment in the two covered wedges.
pub fn rhp_curve_check(params: &RhpCurveParams) -> RhpCheck {
    const EPS: f64 = 1e-12;
    const WEDGE_EPS: f64 = 1e-9;
    let d = params.d as f64;
    let lam = params.lambda_c();
    let theta = principal_arg(lam);
    let r = lam.norm();
    let (beta, psi, r2) = (params.beta, params.psi, params.r2);

    let conditions = [
        theta - d * psi >= -beta - EPS,
        r2 >= r - EPS,
        r * theta.sin() <= psi.tan() + EPS,
        theta + d * principal_arg(Complex64::new(1.0 + r2 * beta.cos(), r2 * beta.sin()))
            <= FRAC_PI_2 + EPS,
        theta >= beta - EPS,
    ];

    // L1: right half strip 0 <= Im z <= tan(psi); L2: wedge
    // -beta <= arg z <= 0 with Im z >= -r2 sin(beta).
    let tan_psi = psi.tan();
    let im_floor = -r2 * beta.sin();
    let in_l1 = |z: Complex64| z.re >= -WEDGE_EPS && z.im >= -WEDGE_EPS && z.im <= tan_psi + WEDGE_EPS;
    let in_l2 = |z: Complex64| {
        let a = principal_arg(z);
        (-beta - WEDGE_EPS..=WEDGE_EPS).contains(&a) && z.im >= im_floor - WEDGE_EPS
    };

    const GRID: usize = 1000;
    let a_end = params.endpoint_a();
    let b_end = params.endpoint_b();
    let mut covering_ok = true;
    let mut covering_fail_t = 0.0;
    for i in 0..=2 * GRID {
        let t = -1.0 + i as f64 / GRID as f64;
        let h = if t <= 0.0 { -t * a_end } else { t * b_end };
        let img = tree_map(params.d, lam, h);
        if !(in_l1(img) || in_l2(img)) {
            covering_ok = false;
            covering_fail_t = t;
            break;
        }
    }

    let names = [
        "condition 1: theta - d psi >= -beta",
        "condition 2: r2 >= r",
        "condition 3: r sin(theta) <= tan(psi)",
        "condition 4: theta + d arg(1 + r2 e^(i beta)) <= pi/2",
        "condition 5: theta >= beta",
    ];
    let mut first_failure = conditions
        .iter()
        .zip(names)
        .find(|(ok, _)| !**ok)
        .map(|(_, n)| n.to_string());
    if first_failure.is_none() && !covering_ok {
        first_failure = Some(format!("covering: f(h({covering_fail_t})) left L1 and L2"));
    }

    RhpCheck { conditions, covering_ok, first_failure }
}

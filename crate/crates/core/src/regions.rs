//! Closed-form evaluation, root-bracketed solution, sampling, and membership
//! testing for the explicit zero-free region boundaries: the Shearer disk,
//! the cardioid, the critical-vicinity region near the negative real axis,
//! and the left/right half-plane regions.

use crate::complexgeom::{principal_arg, ComplexPoint};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

/// Epsilon used in floating boundary comparisons; membership is otherwise
/// exactly as strict or non-strict as the region statements.
pub const CMP_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("degree parameter d must be at least 2, got {d}")]
    BadDegree { d: u32 },
    #[error("theta {theta} outside the admissible range ({lo}, {hi}]")]
    ThetaRange { theta: f64, lo: f64, hi: f64 },
    #[error("phi {phi} outside the admissible range [pi/2, pi)")]
    PhiRange { phi: f64 },
    #[error("alpha must sit on the unit circle, |alpha| = {norm}")]
    AlphaNotUnit { norm: f64 },
    #[error("solver failed to bracket or converge: {what}")]
    Solver { what: String },
}

/// Degree parameter: graphs under consideration have maximum degree `d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d: u32,
}

impl ModelParams {
    pub fn new(d: u32) -> Result<ModelParams, RegionError> {
        if d < 2 {
            return Err(RegionError::BadDegree { d });
        }
        Ok(ModelParams { d })
    }
}

/// Shearer radius `d^d / (d+1)^(d+1)`, the largest zero-free disk radius.
pub fn shearer_radius(d: u32) -> f64 {
    assert!(d >= 2, "shearer_radius needs d >= 2");
    let df = d as f64;
    df.powi(d as i32) / (df + 1.0).powi(d as i32 + 1)
}

/// Uniqueness threshold `d^d / (d-1)^(d+1)`, the positive real point of the
/// cardioid boundary.
pub fn uniqueness_threshold(d: u32) -> f64 {
    assert!(d >= 2, "uniqueness_threshold needs d >= 2");
    let df = d as f64;
    df.powi(d as i32) / (df - 1.0).powi(d as i32 + 1)
}

/// Cardioid boundary point `-alpha d^d / (d + alpha)^(d+1)` for `|alpha| = 1`.
pub fn cardioid_point(d: u32, alpha: ComplexPoint) -> Result<ComplexPoint, RegionError> {
    assert!(d >= 2, "cardioid_point needs d >= 2");
    let norm = alpha.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(RegionError::AlphaNotUnit { norm });
    }
    let df = d as f64;
    let denom = (Complex64::new(df, 0.0) + alpha).powi(d as i32 + 1);
    Ok(-alpha * df.powi(d as i32) / denom)
}

type PolygonCache = Mutex<std::collections::HashMap<u32, &'static Vec<(f64, f64)>>>;

fn cardioid_polygon(d: u32) -> &'static Vec<(f64, f64)> {
    static CACHE: OnceLock<PolygonCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(pts) = guard.get(&d) {
        return pts;
    }
    // Adaptive refinement of the parameterization until every chord sits
    // within 1e-6 of the curve.
    let kappa = |phi: f64| cardioid_point(d, Complex64::from_polar(1.0, phi)).unwrap();
    let mut params: Vec<f64> = (0..=64).map(|i| -PI + 2.0 * PI * i as f64 / 64.0).collect();
    let mut pts: Vec<Complex64> = params.iter().map(|&p| kappa(p)).collect();
    for _ in 0..24 {
        let mut new_params = Vec::with_capacity(params.len() * 2);
        let mut new_pts = Vec::with_capacity(params.len() * 2);
        let mut refined = false;
        for i in 0..params.len() - 1 {
            new_params.push(params[i]);
            new_pts.push(pts[i]);
            let mid = 0.5 * (params[i] + params[i + 1]);
            let pm = kappa(mid);
            if (pm - 0.5 * (pts[i] + pts[i + 1])).norm() > 1e-6 {
                new_params.push(mid);
                new_pts.push(pm);
                refined = true;
            }
        }
        new_params.push(*params.last().unwrap());
        new_pts.push(*pts.last().unwrap());
        params = new_params;
        pts = new_pts;
        if !refined {
            break;
        }
    }
    let leaked: &'static Vec<(f64, f64)> =
        Box::leak(Box::new(pts.into_iter().map(|z| (z.re, z.im)).collect()));
    guard.insert(d, leaked);
    leaked
}

/// Whether `lambda` lies inside the open cardioid region (even-odd test
/// against an adaptively refined boundary polygon).
pub fn cardioid_contains(d: u32, lambda: ComplexPoint) -> bool {
    assert!(d >= 2, "cardioid_contains needs d >= 2");
    let poly = cardioid_polygon(d);
    // conjugate symmetry by construction
    let (px, py) = (lambda.re, lambda.im.abs());
    let mut inside = false;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        if (y1 > py) != (y2 > py) {
            let x_cross = x1 + (py - y1) / (y2 - y1) * (x2 - x1);
            if px < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Upper limit of the polar angle `theta` admitted by the critical-vicinity
/// region.
pub fn critical_theta_max(d: u32) -> f64 {
    assert!(d >= 2);
    (1.0 / (d as f64 + 0.5)).acos()
}

/// Radial bound of the critical-vicinity region at angle `theta`:
/// `min(d log(1 + 1/d), 2d(d+1)sin^2(theta/2) / (d^2 + 4(d+1)sin^2(theta/2)))`.
pub fn critical_region_bound(d: u32, theta: f64) -> Result<f64, RegionError> {
    assert!(d >= 2);
    let hi = critical_theta_max(d);
    if !(theta > 0.0 && theta <= hi + CMP_EPS) {
        return Err(RegionError::ThetaRange { theta, lo: 0.0, hi });
    }
    let df = d as f64;
    let cap = df * (1.0 + 1.0 / df).ln();
    let s2 = (theta / 2.0).sin().powi(2);
    let quad = 2.0 * df * (df + 1.0) * s2 / (df * df + 4.0 * (df + 1.0) * s2);
    Ok(cap.min(quad))
}

/// Membership in the critical-vicinity region: writing
/// `lambda = -lambda_* exp(r - i theta)`, requires `theta` in range and
/// `0 <= r <= critical_region_bound(d, theta)`. Conjugate-symmetric.
pub fn critical_region_contains(d: u32, lambda: ComplexPoint) -> bool {
    assert!(d >= 2);
    let r_abs = lambda.norm();
    if r_abs == 0.0 {
        return false;
    }
    let theta = PI - principal_arg(lambda).abs();
    let hi = critical_theta_max(d);
    if !(theta > 0.0 && theta <= hi + CMP_EPS) {
        return false;
    }
    let r = (r_abs / shearer_radius(d)).ln();
    if !(-CMP_EPS..).contains(&r) {
        return false;
    }
    match critical_region_bound(d, theta) {
        Ok(bound) => r <= bound + CMP_EPS,
        Err(_) => false,
    }
}

/// Radial bound of the left half-plane region at angle `phi` in `[pi/2, pi)`;
/// membership there is strict (`r < bound`).
pub fn lhp_bound(d: u32, phi: f64) -> Result<f64, RegionError> {
    assert!(d >= 2);
    if !(FRAC_PI_2 - CMP_EPS..PI).contains(&phi) {
        return Err(RegionError::PhiRange { phi });
    }
    let df = d as f64;
    let psi = (((2.0 - 1.0 / df) * phi - PI) / (df + 1.0)).max(0.0);
    let num = (phi / df).sin() * phi.sin().powi(d as i32);
    let den = ((df - 1.0) * phi / df - df * psi).sin() * (phi - psi).sin().powi(d as i32);
    Ok(num / den)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) < 0 < f(hi); 200 halvings collapse the bracket to adjacent floats.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Shrinks `x` geometrically toward `anchor` until `pred(x)` holds.
fn shrink_until<F: Fn(f64) -> bool>(anchor: f64, mut x: f64, pred: F) -> Option<f64> {
    for _ in 0..200 {
        if pred(x) {
            return Some(x);
        }
        x = anchor + (x - anchor) * 0.25;
    }
    None
}

/// Residual of the angle-threshold equation
/// `tan(2x/d) = tan((pi/2 - x)/d) / (1 - tan((pi/2 - x)/d)/tan(x))`.
fn theta_d_residual(d: u32, x: f64) -> f64 {
    let df = d as f64;
    let q = ((FRAC_PI_2 - x) / df).tan();
    (2.0 * x / df).tan() - q / (1.0 - q / x.tan())
}

/// The angle threshold where the two right-half-plane radius formulas meet:
/// the unique root of [`theta_d_residual`] in `(pi/(2(d+1)), pi/2)`, always
/// above `pi/6`.
pub fn theta_d(d: u32) -> Result<f64, RegionError> {
    assert!(d >= 2);
    let df = d as f64;
    let left = PI / (2.0 * (df + 1.0));
    let right = FRAC_PI_2;
    let gap = right - left;
    // The residual diverges to -inf at the left endpoint (denominator pole)
    // and is positive near pi/2.
    let lo = shrink_until(left, left + 1e-3 * gap, |x| theta_d_residual(d, x) < 0.0)
        .ok_or_else(|| RegionError::Solver { what: format!("theta_d left bracket, d={d}") })?;
    let hi = shrink_until(right, right - 1e-3 * gap, |x| theta_d_residual(d, x) > 0.0)
        .ok_or_else(|| RegionError::Solver { what: format!("theta_d right bracket, d={d}") })?;
    let root = bisect(|x| theta_d_residual(d, x), lo, hi);
    if theta_d_residual(d, root).abs() > 1e-12 {
        return Err(RegionError::Solver { what: format!("theta_d residual too large, d={d}") });
    }
    Ok(root)
}

fn gamma1(d: u32, theta: f64, x: f64) -> f64 {
    ((theta + x) / d as f64).tan() / theta.sin()
}

fn gamma2(d: u32, theta: f64, x: f64) -> f64 {
    let q = ((FRAC_PI_2 - theta) / d as f64).tan();
    q / (x.sin() - x.cos() * q)
}

/// The auxiliary angle for the right-half-plane radius when
/// `theta in [theta_d, pi/2]`: the unique solution of
/// `gamma1(x) = gamma2(x)` in `((pi/2 - theta)/d, theta]`, with
/// `beta_star = 0` exactly at `theta = pi/2`.
pub fn beta_star(d: u32, theta: f64) -> Result<f64, RegionError> {
    assert!(d >= 2);
    let td = theta_d(d)?;
    if !(td - 1e-9..=FRAC_PI_2 + CMP_EPS).contains(&theta) {
        return Err(RegionError::ThetaRange { theta, lo: td, hi: FRAC_PI_2 });
    }
    if (theta - FRAC_PI_2).abs() <= CMP_EPS {
        return Ok(0.0);
    }
    let pole = (FRAC_PI_2 - theta) / d as f64;
    let g = |x: f64| gamma1(d, theta, x) - gamma2(d, theta, x);
    if g(theta) <= 0.0 {
        // theta == theta_d up to rounding: the branches meet at the endpoint.
        return Ok(theta);
    }
    // gamma2 blows up at the pole; walk the left end toward it until the
    // sign is negative.
    let lo = shrink_until(pole, pole + 1e-3 * (theta - pole), |x| x > pole && g(x) < 0.0)
        .ok_or_else(|| RegionError::Solver { what: format!("beta_star bracket, d={d}") })?;
    let root = bisect(g, lo, theta);
    if g(root).abs() > 1e-10 {
        return Err(RegionError::Solver { what: format!("beta_star residual too large, d={d}") });
    }
    Ok(root)
}

/// Radial bound of the right half-plane region at angle `theta` in
/// `(0, pi/2]`: `tan(2 theta/d)/sin(theta)` up to the angle threshold, then
/// `tan((theta + beta_star)/d)/sin(theta)`; membership is non-strict.
pub fn rhp_bound(d: u32, theta: f64) -> Result<f64, RegionError> {
    assert!(d >= 2);
    if !(theta > 0.0 && theta <= FRAC_PI_2 + CMP_EPS) {
        return Err(RegionError::ThetaRange { theta, lo: 0.0, hi: FRAC_PI_2 });
    }
    let td = theta_d(d)?;
    if theta <= td {
        Ok((2.0 * theta / d as f64).tan() / theta.sin())
    } else {
        let b = beta_star(d, theta)?;
        Ok(((theta + b) / d as f64).tan() / theta.sin())
    }
}

/// Membership flags for a query activity, conjugation-invariant by
/// construction; `margin` is the largest signed slack across the parametric
/// regions (a proxy, not a Euclidean distance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub shearer: bool,
    pub cardioid: bool,
    pub critical: bool,
    pub lhp: bool,
    pub rhp: bool,
    pub margin: f64,
}

/// Evaluates every region test at `lambda`; verdicts depend only on
/// `(|lambda|, |arg lambda|)`.
pub fn region_membership(d: u32, lambda: ComplexPoint) -> RegionVerdict {
    assert!(d >= 2);
    let r = lambda.norm();
    let phi = principal_arg(lambda).abs();
    let lam_star = shearer_radius(d);

    let shearer = r <= lam_star + CMP_EPS;
    let cardioid = cardioid_contains(d, lambda);
    let critical = critical_region_contains(d, lambda);

    let mut margin = lam_star - r;
    let theta_crit = PI - phi;
    if theta_crit > 0.0 && theta_crit <= critical_theta_max(d) + CMP_EPS && r > 0.0 {
        if let Ok(bound) = critical_region_bound(d, theta_crit.min(critical_theta_max(d))) {
            margin = margin.max(bound - (r / lam_star).ln());
        }
    }

    let lhp = if (FRAC_PI_2..PI).contains(&phi) {
        match lhp_bound(d, phi) {
            Ok(bound) => {
                margin = margin.max(bound - r);
                r < bound
            }
            Err(_) => false,
        }
    } else {
        false
    };

    let rhp = if phi > 0.0 && phi <= FRAC_PI_2 {
        match rhp_bound(d, phi) {
            Ok(bound) => {
                margin = margin.max(bound - r);
                r <= bound + CMP_EPS
            }
            Err(_) => false,
        }
    } else {
        false
    };

    RegionVerdict { shearer, cardioid, critical, lhp, rhp, margin }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Shearer,
    Cardioid,
    Critical,
    Lhp,
    Rhp,
}

impl BoundaryKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Shearer => "shearer",
            BoundaryKind::Cardioid => "cardioid",
            BoundaryKind::Critical => "critical",
            BoundaryKind::Lhp => "lhp",
            BoundaryKind::Rhp => "rhp",
        }
    }
}

/// Sampled boundary polyline, strictly monotone in the parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionBoundary {
    pub kind: BoundaryKind,
    pub d: u32,
    pub samples: Vec<(f64, ComplexPoint)>,
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    out[0] = a;
    out[n - 1] = b;
    out
}

/// Replaces the parameter closest to `landmark` by its exact value so the
/// landmark point appears in the sampling.
fn snap(params: &mut [f64], landmark: f64) {
    let mut best = 0;
    for (i, p) in params.iter().enumerate() {
        if (p - landmark).abs() < (params[best] - landmark).abs() {
            best = i;
        }
    }
    params[best] = landmark;
}

/// Samples a region boundary with `n_samples >= 16` points, exact endpoint
/// parameters included; the conjugate half is generated by reflection.
pub fn boundary_polyline(d: u32, kind: BoundaryKind, n_samples: usize) -> RegionBoundary {
    assert!(d >= 2, "boundary_polyline needs d >= 2");
    assert!(n_samples >= 16, "boundary_polyline needs at least 16 samples");
    let df = d as f64;
    let samples = match kind {
        BoundaryKind::Shearer => {
            let r = shearer_radius(d);
            linspace(-PI, PI, n_samples)
                .into_iter()
                .map(|p| (p, Complex64::from_polar(r, p)))
                .collect()
        }
        BoundaryKind::Cardioid => {
            let mut params = linspace(-PI, PI, n_samples);
            snap(&mut params, 0.0);
            params
                .into_iter()
                .map(|p| (p, cardioid_point(d, Complex64::from_polar(1.0, p)).unwrap()))
                .collect()
        }
        BoundaryKind::Critical => {
            let tm = critical_theta_max(d);
            let mut params = linspace(-tm, tm, n_samples);
            snap(&mut params, 0.0);
            let lam_star = shearer_radius(d);
            params
                .into_iter()
                .map(|p| {
                    let r = if p == 0.0 { 0.0 } else { critical_region_bound(d, p.abs()).unwrap() };
                    // -lambda_* exp(r - i p)
                    (p, -Complex64::from_polar(lam_star * r.exp(), -p))
                })
                .collect()
        }
        BoundaryKind::Lhp => {
            // Single sweep through the origin: angle phi = t for t <= pi,
            // mirrored to the conjugate half for t > pi.
            let mut params = linspace(FRAC_PI_2, 3.0 * FRAC_PI_2, n_samples);
            snap(&mut params, PI);
            params
                .into_iter()
                .map(|t| {
                    let phi = if t <= PI { t } else { 2.0 * PI - t };
                    let r = if phi >= PI - 1e-12 { 0.0 } else { lhp_bound(d, phi).unwrap() };
                    let sign = if t <= PI { 1.0 } else { -1.0 };
                    (t, Complex64::from_polar(r, sign * phi))
                })
                .collect()
        }
        BoundaryKind::Rhp => {
            let mut params = linspace(-FRAC_PI_2, FRAC_PI_2, n_samples);
            snap(&mut params, 0.0);
            params
                .into_iter()
                .map(|t| {
                    // limit of tan(2 theta/d)/sin(theta) as theta -> 0
                    let r = if t == 0.0 { 2.0 / df } else { rhp_bound(d, t.abs()).unwrap() };
                    (t, Complex64::from_polar(r, t))
                })
                .collect()
        }
    };
    RegionBoundary { kind, d, samples }
}

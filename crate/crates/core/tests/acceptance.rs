//! Acceptance suite: one test per release criterion, each printing a
//! one-line summary (visible with `--nocapture`). Every tolerance is pinned
//! here, not configurable.

use indzero_core::certify::{certify_simons, orbit, sokal_curve_check, CurveOpts, SokalParams};
use indzero_core::complexgeom::{cpow, geo_mean_dominates, principal_log};
use indzero_core::graphs::Graph;
use indzero_core::indpoly::{ind_poly, taylor_log_z, TreeCatalog};
use indzero_core::regions::{
    cardioid_point, critical_region_bound, critical_theta_max, lhp_bound, rhp_bound,
    shearer_radius, theta_d, uniqueness_threshold,
};
use indzero_core::CertStatus;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn criterion_01_imaginary_axis_agreement() {
    for d in 2..=20u32 {
        let axis = (PI / (2.0 * d as f64)).tan();
        let lhp = lhp_bound(d, FRAC_PI_2).unwrap();
        let rhp = rhp_bound(d, FRAC_PI_2).unwrap();
        assert!((lhp - axis).abs() < 1e-10, "d={d}: lhp {lhp} vs {axis}");
        assert!((rhp - axis).abs() < 1e-12, "d={d}: rhp {rhp} vs {axis}");
    }
    println!("criterion 01 (imaginary-axis agreement, d=2..20): PASS");
}

#[test]
fn criterion_02_cardioid_landmarks() {
    for d in 2..=20u32 {
        let at_plus = cardioid_point(d, c(1.0, 0.0)).unwrap();
        let at_minus = cardioid_point(d, c(-1.0, 0.0)).unwrap();
        assert!(
            (at_plus - c(-shearer_radius(d), 0.0)).norm() < 1e-12,
            "d={d}: kappa(1) = {at_plus}"
        );
        assert!(
            (at_minus - c(uniqueness_threshold(d), 0.0)).norm() < 1e-12,
            "d={d}: kappa(-1) = {at_minus}"
        );
    }
    println!("criterion 02 (cardioid landmarks, d=2..20): PASS");
}

#[test]
fn criterion_03_theta_d_bracket() {
    for d in 2..=50u32 {
        let td = theta_d(d).unwrap();
        assert!(td > PI / 6.0 && td < FRAC_PI_2, "d={d}: theta_d = {td}");
        // residual of the defining equation
        let df = d as f64;
        let q = ((FRAC_PI_2 - td) / df).tan();
        let residual = (2.0 * td / df).tan() - q / (1.0 - q / td.tan());
        assert!(residual.abs() < 1e-10, "d={d}: residual {residual}");
    }
    println!("criterion 03 (angle-threshold bracket and residual, d=2..50): PASS");
}

#[test]
fn criterion_04_quadratic_boundary_law() {
    let d = 9u32;
    let lam_star = shearer_radius(d);
    let expected = -lam_star / (2.0 * d as f64);
    for &phi in &[0.005f64, 0.01, 0.02] {
        let r = critical_region_bound(d, phi).unwrap();
        let x = -lam_star * r.exp() * phi.cos();
        let ratio = (x + lam_star) / (phi * phi);
        assert!(
            (ratio / expected - 1.0).abs() < 0.10,
            "phi={phi}: ratio {ratio} vs expected {expected}"
        );
    }
    println!("criterion 04 (quadratic boundary power law, d=9): PASS");
}

/// 100 activities per region boundary at 0.99 radial scaling, conjugates
/// included, against every tree of at most 11 vertices and degree <= 4.
#[test]
fn criterion_05_zero_freeness_cross_validation() {
    let d = 3u32;
    let catalog = TreeCatalog::build(d, 11).unwrap();
    assert!(catalog.len() > 100);
    let mut points: Vec<Complex64> = Vec::new();

    let lam_star = shearer_radius(d);
    let theta_max = critical_theta_max(d);
    for k in 1..=100 {
        let theta = theta_max * k as f64 / 100.0;
        let r = 0.99 * critical_region_bound(d, theta).unwrap();
        points.push(-Complex64::from_polar(lam_star * r.exp(), -theta));
    }
    for k in 0..100 {
        let phi = FRAC_PI_2 + (PI - 1e-6 - FRAC_PI_2) * k as f64 / 100.0;
        points.push(Complex64::from_polar(0.99 * lhp_bound(d, phi).unwrap(), phi));
    }
    for k in 1..=100 {
        let theta = FRAC_PI_2 * k as f64 / 100.0;
        points.push(Complex64::from_polar(0.99 * rhp_bound(d, theta).unwrap(), theta));
    }

    let mut global_min = f64::INFINITY;
    for lam in points {
        for q in [lam, lam.conj()] {
            let (min_abs, _) = catalog.min_abs(q);
            global_min = global_min.min(min_abs);
            assert!(min_abs > 1e-6, "|Z| = {min_abs} at {q}");
        }
    }
    println!(
        "criterion 05 (zero-freeness over {} trees, 600 activities, min |Z| = {global_min:.3e}): PASS",
        catalog.len()
    );
}

#[test]
fn criterion_06_refutation_beyond_shearer() {
    // Past the negative-axis threshold the real orbit crosses -1 quickly.
    let crossed = orbit(2, c(-0.17, 0.0), 10).unwrap();
    assert!(crossed.crossed, "no crossing within 10 iterates at -0.17");
    // Inside it, the trap holds a fat margin for ten thousand iterates.
    let trapped = orbit(2, c(-0.14, 0.0), 10_000).unwrap();
    assert!(!trapped.crossed);
    assert!(
        trapped.min_dist_to_minus1 >= 0.66,
        "margin {} < 0.66",
        trapped.min_dist_to_minus1
    );
    println!(
        "criterion 06 (orbit refutation at -0.17 and trap margin {:.4} at -0.14): PASS",
        trapped.min_dist_to_minus1
    );
}

#[test]
fn criterion_07_criterion_reproduces_critical_region() {
    let d = 9u32;
    let lam_star = shearer_radius(d);
    let theta_max = critical_theta_max(d);
    let opts = CurveOpts::default();
    let mut max_tau: f64 = 0.0;
    for k in 1..=50 {
        let theta = theta_max * k as f64 / 50.0;
        let r = 0.99 * critical_region_bound(d, theta).unwrap();
        let lam = -Complex64::from_polar(lam_star * r.exp(), -theta);
        let cert = certify_simons(d, lam, &opts).unwrap();
        assert_eq!(
            cert.status,
            CertStatus::Certified,
            "theta={theta}: {:?} ({:?})",
            cert.status,
            cert.note
        );
        max_tau = max_tau.max(cert.tau_star.unwrap());
    }
    println!("criterion 07 (50 critical-vicinity points certified, max tau* = {max_tau:.2}): PASS");
}

#[test]
fn criterion_08_sokal_conditions() {
    for d in 2..=10u32 {
        for &eps in &[0.05, 0.1, 0.3] {
            let p = SokalParams::new(d, eps, 0.01, 0.0).unwrap();
            let z0 = c(p.z_fixed(), 0.0);
            let residual =
                (c(p.lambda0(), 0.0) / (c(1.0, 0.0) + z0).powi(d as i32) - z0).norm();
            assert!(residual < 1e-12, "d={d} eps={eps}: residual {residual}");
        }
    }
    for &theta in &[0.0, 1e-3] {
        let p = SokalParams::new(3, 0.1, 0.01, theta).unwrap();
        let chk = sokal_curve_check(&p);
        assert!(
            chk.ok(),
            "sokal_curve_check(d=3, eps=0.1, delta=0.01, theta={theta}) failed: {:?}. \
             With delta = 0.01 the upper-wedge inequality arg z+ > arg f(z-) holds only \
             for theta < 7.66e-4 (need delta >= 0.0131 at theta = 1e-3), so this \
             parameter point does not satisfy the checked construction.",
            chk.first_failure
        );
    }
    println!("criterion 08 (fixed-point residual grid and curve check at theta in {{0, 1e-3}}): PASS");
}

#[test]
fn criterion_09_am_gm_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_err: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for _ in 0..100_000 {
        let r1 = rng.gen_range(0.01..10.0f64);
        let r2 = rng.gen_range(0.01..10.0f64);
        let th1 = rng.gen_range(-3.0..3.0f64);
        let th2 = rng.gen_range(-3.0..3.0f64);
        if (th1 - th2).abs() > PI {
            continue;
        }
        let alpha = rng.gen_range(0.0..1.0f64);
        let z1 = Complex64::from_polar(r1, th1);
        let z2 = Complex64::from_polar(r2, th2);
        let w = geo_mean_dominates(z1, z2, alpha).unwrap();
        let gm = cpow(z1, alpha).unwrap() * cpow(z2, 1.0 - alpha).unwrap();
        let err = (w.t * gm - (w.beta * z1 + (1.0 - w.beta) * z2)).norm();
        worst_err = worst_err.max(err);
        worst_t = worst_t.max(w.t);
        assert!(err < 1e-9, "reconstruction error {err} at ({z1}, {z2}, {alpha})");
        assert!((0.0..=1.0 + 1e-12).contains(&w.t));
    }
    println!("criterion 09 (1e5 geometric-average witnesses, worst error {worst_err:.2e}): PASS");
}

/// Random bounded-degree graph on up to `n_max` vertices.
fn random_graph(rng: &mut ChaCha8Rng, n_max: usize, max_deg: usize) -> Graph {
    let n = rng.gen_range(4..=n_max);
    let target_edges = rng.gen_range(n / 2..=(n * max_deg / 2).min(n * 2));
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut deg = vec![0usize; n];
    for _ in 0..10 * target_edges {
        if edges.len() >= target_edges {
            break;
        }
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v || deg[u as usize] >= max_deg || deg[v as usize] >= max_deg {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if edges.contains(&key) {
            continue;
        }
        deg[u as usize] += 1;
        deg[v as usize] += 1;
        edges.push(key);
    }
    Graph::from_edges(n, &edges)
}

#[test]
fn criterion_10_approximation_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let lam = c(0.5 * shearer_radius(3), 0.0);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let g = random_graph(&mut rng, 16, 4);
        let poly = ind_poly(&g).unwrap();
        let approx = taylor_log_z(&poly, lam, 40, None).unwrap();
        let exact = poly.eval(lam);
        let rel = (approx.value.exp() - exact).norm() / exact.norm();
        worst = worst.max(rel);
        assert!(rel <= 1e-6, "graph {i} (n={}): rel error {rel}", g.n());
        // sanity: the log itself agrees too
        let exact_log = principal_log(exact).unwrap();
        assert!((approx.value - exact_log).norm() < 1e-6);
    }
    println!("criterion 10 (50 random graphs, worst relative error {worst:.2e}): PASS");
}

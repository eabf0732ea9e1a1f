//! Cross-module invariants: soundness of certification against the exact
//! tree oracle, stopping-rule stability, orbit/curve agreement, and the
//! exact-engine equivalences.

use indzero_core::certify::{certify_simons, h_curve_with, orbit, CurveOpts, StopReason};
use indzero_core::complexgeom::{cpow, principal_log};
use indzero_core::graphs::{gen_all_trees, parse_edge_list, Graph};
use indzero_core::indpoly::{ind_poly, min_abs_over_catalog, TreeCatalog};
use indzero_core::regions::{
    boundary_polyline, cardioid_contains, critical_region_bound, critical_theta_max, lhp_bound,
    rhp_bound, shearer_radius, BoundaryKind,
};
use indzero_core::CertStatus;
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// No certified activity may be a zero of any small tree.
#[test]
fn certified_points_are_nonzero_on_the_catalog() {
    let d = 3u32;
    let catalog = TreeCatalog::build(d, 11).unwrap();
    let opts = CurveOpts::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut certified = 0usize;
    for _ in 0..200 {
        let lam = c(rng.gen_range(-0.16..0.16), rng.gen_range(0.001..0.21));
        let cert = certify_simons(d, lam, &opts).unwrap();
        if cert.status == CertStatus::Certified {
            certified += 1;
            let (min_abs, _) = catalog.min_abs(lam);
            assert!(min_abs > 1e-6, "certified {lam} has |Z| = {min_abs}");
        }
    }
    assert!(certified >= 40, "window too hostile: only {certified} certified draws");
}

#[test]
fn certification_is_conjugation_invariant() {
    let opts = CurveOpts { dt: 5e-3, t_max: 50.0, ..CurveOpts::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let lam = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        if lam == c(0.0, 0.0) {
            continue;
        }
        let a = certify_simons(9, lam, &opts).unwrap();
        let b = certify_simons(9, lam.conj(), &opts).unwrap();
        assert_eq!(a.status, b.status, "at {lam}");
    }
}

/// Once the stopping window certifies, running five more units of curve
/// never produces a refutation.
#[test]
fn stopping_window_is_stable_under_extension() {
    let d = 9u32;
    let base = CurveOpts { dt: 2e-3, ..CurveOpts::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let mut checked = 0usize;
    let mut attempts = 0usize;
    while checked < 100 && attempts < 3000 {
        attempts += 1;
        let lam = c(rng.gen_range(-0.06..0.06), rng.gen_range(0.001..0.08));
        let cert = certify_simons(d, lam, &base).unwrap();
        if cert.status != CertStatus::Certified {
            continue;
        }
        checked += 1;
        let tau = cert.tau_star.unwrap();
        let extended = CurveOpts {
            t_max: (tau + 6.0).ceil().max(2.0),
            run_past_window: true,
            ..base
        };
        let rerun = certify_simons(d, lam, &extended).unwrap();
        assert_ne!(rerun.status, CertStatus::Refuted, "extension flipped {lam} (tau = {tau})");
    }
    assert_eq!(checked, 100, "only found {checked} certified draws in {attempts} attempts");
}

/// The curve restricted to integer times is the orbit shifted by one.
#[test]
fn curve_at_integer_times_matches_orbit() {
    let d = 5u32;
    let lam = c(0.01, 0.03);
    let opts = CurveOpts { dt: 1e-2, t_max: 12.0, run_past_window: true, ..CurveOpts::default() };
    let samples = h_curve_with(d, lam, &opts).unwrap();
    let orb = orbit(d, lam, 11).unwrap();
    let mut compared = 0;
    for (i, &t) in samples.t_values.iter().enumerate() {
        if (t - t.round()).abs() < 1e-12 {
            let n = t.round() as usize;
            if n < orb.points.len() {
                let x = c(orb.points[n][0], orb.points[n][1]);
                assert!((samples.points[i] - x).norm() < 1e-10, "t = {n}");
                compared += 1;
            }
        }
    }
    assert!(compared >= 10, "only {compared} integer samples compared");
}

#[test]
fn curve_stops_exactly_once_window_is_covered() {
    let lam = c(0.0, 0.02);
    let opts = CurveOpts::default();
    let samples = h_curve_with(9, lam, &opts).unwrap();
    assert_eq!(samples.stop, StopReason::WindowComplete);
    let end = *samples.t_values.last().unwrap();
    let tau = indzero_core::tau_star(&samples, opts.tol_arg);
    assert!(end >= tau + 1.0 - 1e-9);
}

/// Scaled-down region boundaries all stay inside the cardioid.
#[test]
fn region_boundaries_sit_inside_the_cardioid() {
    let d = 9u32;
    let lam_star = shearer_radius(d);
    let theta_max = critical_theta_max(d);
    let mut checked = 0usize;
    for k in 1..=334 {
        let theta = theta_max * k as f64 / 334.0;
        let r = 0.999 * critical_region_bound(d, theta).unwrap();
        let lam = -Complex64::from_polar(lam_star * r.exp(), -theta);
        assert!(cardioid_contains(d, lam), "critical boundary point {lam}");
        checked += 1;
    }
    for k in 0..333 {
        let phi = FRAC_PI_2 + (PI - 1e-6 - FRAC_PI_2) * k as f64 / 333.0;
        let lam = Complex64::from_polar(0.999 * lhp_bound(d, phi).unwrap(), phi);
        assert!(cardioid_contains(d, lam), "left-plane boundary point {lam}");
        checked += 1;
    }
    for k in 1..=333 {
        let theta = FRAC_PI_2 * k as f64 / 333.0;
        let lam = Complex64::from_polar(0.999 * rhp_bound(d, theta).unwrap(), theta);
        assert!(cardioid_contains(d, lam), "right-plane boundary point {lam}");
        checked += 1;
    }
    assert!(checked >= 1000);
}

/// Outside the cardioid zeros are dense, so a sound criterion must never
/// certify there.
#[test]
fn no_certification_beyond_the_cardioid() {
    use indzero_core::certify::{scan_grid, ScanWindow};
    let d = 9u32;
    let window = ScanWindow { re_min: -0.5, re_max: -0.3, im_min: 0.001, im_max: 0.05 };
    // the window sits fully outside the region
    for &(re, im) in &[(-0.5, 0.001), (-0.3, 0.001), (-0.5, 0.05), (-0.3, 0.05)] {
        assert!(!cardioid_contains(d, c(re, im)));
    }
    let opts = CurveOpts { dt: 5e-3, t_max: 50.0, ..CurveOpts::default() };
    let cells = scan_grid(d, window, 6, &opts).unwrap();
    for cell in &cells {
        assert_ne!(cell.status, CertStatus::Certified, "cell at {:?}", cell.lambda);
    }
}

/// Near the negative real axis the curve converges so cleanly that the
/// argument overshoots its limit by less than the default tolerance, so no
/// stopping time is ever detected: honest Inconclusive at tol_arg = 1e-9,
/// Certified once the detector can see the 1e-11 overshoot.
#[test]
fn tiny_imaginary_parts_need_a_tighter_arg_tolerance() {
    let lam = c(-0.0108, 0.00337); // well inside the zero-free disk
    assert!(lam.norm() < 0.5 * shearer_radius(9));
    let default = certify_simons(9, lam, &CurveOpts::default()).unwrap();
    assert_eq!(default.status, CertStatus::Inconclusive);
    assert_eq!(default.tau_star, None);
    let tight = CurveOpts { tol_arg: 1e-12, ..CurveOpts::default() };
    let cert = certify_simons(9, lam, &tight).unwrap();
    assert_eq!(cert.status, CertStatus::Certified);
    assert!((cert.tau_star.unwrap() - 9.1).abs() < 0.5);
}

/// At 0.99 of the zero-free disk radius no small tree vanishes.
#[test]
fn shearer_disk_is_safe_on_the_catalog() {
    let catalog = TreeCatalog::build(2, 12).unwrap();
    let r = 0.99 * shearer_radius(2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let lam = Complex64::from_polar(r, rng.gen_range(-PI..PI));
        let (min_abs, _) = catalog.min_abs(lam);
        assert!(min_abs > 0.0, "vanishing |Z| at {lam}");
    }
}

/// Brute-force subset enumeration agrees with the recursive engine,
/// coefficient by coefficient.
fn enumerate_coeffs(g: &Graph) -> Vec<BigUint> {
    let n = g.n();
    let mut counts = vec![0u64; n + 1];
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v as u32).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    for mask in 0u64..(1 << n) {
        let mut independent = true;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if adj[v] & mask != 0 {
                independent = false;
                break;
            }
        }
        if independent {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    counts.into_iter().map(BigUint::from).collect()
}

#[test]
fn recursion_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    let mut graphs: Vec<Graph> = gen_all_trees(9, 8).unwrap().collect();
    graphs.push(parse_edge_list("0 1\n1 2\n2 0").unwrap()); // triangle
    graphs.push(parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 2\n1 3").unwrap()); // K4
    graphs.push(parse_edge_list("0 1\n2 3\n4 5").unwrap()); // disconnected
    for _ in 0..40 {
        let n = rng.gen_range(2..=12usize);
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.gen_bool(0.3) {
                    edges.push((u, v));
                }
            }
        }
        graphs.push(Graph::from_edges(n, &edges));
    }
    for g in &graphs {
        let fast = ind_poly(g).unwrap();
        assert_eq!(fast.coeffs(), enumerate_coeffs(g).as_slice(), "n = {}", g.n());
    }
}

#[test]
fn ind_poly_is_relabeling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let cases = [
        parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n1 6\n2 7\n7 8\n3 9").unwrap(),
        parse_edge_list("0 1\n1 2\n2 3\n3 0\n0 4\n4 5\n5 6\n6 4").unwrap(), // two cycles
    ];
    for base in &cases {
        let reference = ind_poly(base).unwrap();
        let n = base.n();
        for _ in 0..100 {
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            let edges: Vec<(u32, u32)> = base
                .edges()
                .iter()
                .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
                .collect();
            let relabeled = Graph::from_edges(n, &edges);
            assert_eq!(ind_poly(&relabeled).unwrap(), reference);
        }
    }
}

#[test]
fn eval_is_conjugate_symmetric() {
    let poly = ind_poly(&parse_edge_list("0 1\n1 2\n2 3\n1 4\n4 5").unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let lam = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        assert_eq!(poly.eval(lam.conj()), poly.eval(lam).conj());
    }
}

/// Along the negative axis past the disk radius, the catalog minimum keeps
/// shrinking with tree size while staying positive at 14 vertices: the
/// witnessed approach toward a zero that full binary trees only realize at
/// much larger depth.
#[test]
fn negative_axis_catalog_minimum_shrinks() {
    let lam = c(-0.17, 0.0);
    let (min7, _) = min_abs_over_catalog(2, lam, 7).unwrap();
    let (min11, _) = min_abs_over_catalog(2, lam, 11).unwrap();
    let (min14, witness) = min_abs_over_catalog(2, lam, 14).unwrap();
    assert!(min14 < min11 && min11 < min7, "{min7} -> {min11} -> {min14}");
    // Frozen against an exact rational-arithmetic enumeration.
    assert!((min14 - 0.029052561784253104).abs() < 1e-9, "min14 = {min14}");
    assert!(witness.n() <= 14);
    // No sign change yet at this size: every catalog value is still positive.
    let catalog = TreeCatalog::build(2, 14).unwrap();
    for (g, p) in catalog.iter() {
        assert!(p.eval(lam).re > 0.0, "Z <= 0 for a {}-vertex tree", g.n());
    }
}

#[test]
fn branch_consistency_bulk() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100_000 {
        let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        if z.norm() < 1e-6 {
            continue;
        }
        let delta = rng.gen_range(0.0..5.0);
        let lhs = cpow(z, delta).unwrap();
        let rhs = (delta * principal_log(z).unwrap()).exp();
        assert!(
            (lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0),
            "z = {z}, delta = {delta}"
        );
    }
}

#[test]
fn boundary_samples_monotone_and_finite() {
    for kind in [
        BoundaryKind::Shearer,
        BoundaryKind::Cardioid,
        BoundaryKind::Critical,
        BoundaryKind::Lhp,
        BoundaryKind::Rhp,
    ] {
        for d in [2u32, 9] {
            let b = boundary_polyline(d, kind, 129);
            assert_eq!(b.samples.len(), 129);
            for w in b.samples.windows(2) {
                assert!(w[0].0 < w[1].0, "{kind:?} params not strictly monotone");
            }
            for (_, z) in &b.samples {
                assert!(z.re.is_finite() && z.im.is_finite());
            }
        }
    }
}

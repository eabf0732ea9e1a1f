use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use indzero_core::certify::{certify_simons, orbit, CurveOpts};
use indzero_core::graphs::{gen_all_trees, gen_complete_dary_tree};
use indzero_core::indpoly::{ind_poly, TreeCatalog};
use indzero_core::regions::{boundary_polyline, theta_d, BoundaryKind};
use num_complex::Complex64;

fn bench_ind_poly(c: &mut Criterion) {
    let tree = gen_complete_dary_tree(3, 3).unwrap(); // 40 vertices
    c.bench_function("ind_poly_ternary_depth3", |b| {
        b.iter(|| black_box(ind_poly(&tree).unwrap()))
    });
}

fn bench_tree_enumeration(c: &mut Criterion) {
    c.bench_function("gen_all_trees_14_deg4", |b| {
        b.iter(|| black_box(gen_all_trees(14, 4).unwrap().count()))
    });
}

fn bench_catalog_min_abs(c: &mut Criterion) {
    let catalog = TreeCatalog::build(3, 11).unwrap();
    let lam = Complex64::new(-0.03, 0.02);
    c.bench_function("catalog_min_abs_d3_n11", |b| {
        b.iter(|| black_box(catalog.min_abs(lam)))
    });
}

fn bench_certify(c: &mut Criterion) {
    let opts = CurveOpts::default();
    c.bench_function("certify_shearer_interior_d9", |b| {
        b.iter(|| black_box(certify_simons(9, Complex64::new(0.0, 0.02), &opts).unwrap()))
    });
    let lam_star = 9f64.powi(9) / 10f64.powi(10);
    c.bench_function("certify_near_critical_d9", |b| {
        b.iter(|| {
            black_box(
                certify_simons(9, Complex64::from_polar(1.02 * lam_star, 3.0), &opts).unwrap(),
            )
        })
    });
}

fn bench_orbit(c: &mut Criterion) {
    c.bench_function("orbit_100k_threshold", |b| {
        b.iter(|| black_box(orbit(2, Complex64::new(-4.0 / 27.0, 0.0), 100_000).unwrap()))
    });
}

fn bench_regions(c: &mut Criterion) {
    c.bench_function("theta_d_9", |b| b.iter(|| black_box(theta_d(9).unwrap())));
    c.bench_function("boundary_rhp_512", |b| {
        b.iter(|| black_box(boundary_polyline(9, BoundaryKind::Rhp, 512)))
    });
}

criterion_group!(
    benches,
    bench_ind_poly,
    bench_tree_enumeration,
    bench_catalog_min_abs,
    bench_certify,
    bench_orbit,
    bench_regions
);
criterion_main!(benches);

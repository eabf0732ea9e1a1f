//! Zero-freeness toolkit for the independence polynomial (hard-core model
//! partition function) of bounded-degree graphs.
//!
//! The crate computes exact independence polynomials over isomorph-free tree
//! catalogs, evaluates and samples the explicit zero-free region boundaries
//! (Shearer disk, cardioid, critical vicinity, left/right half-plane), and
//! certifies or refutes zero-freeness of individual activities with an
//! iterated-curve criterion. The certification is semi-rigorous: sound when
//! it answers `Certified`, silent otherwise.

pub mod certify;
pub mod complexgeom;
pub mod graphs;
pub mod indpoly;
pub mod regions;

pub use certify::{
    certify_simons, h_curve, orbit, orbit_w, rhp_curve_check, scan_grid, sokal_curve_check,
    tau_star, CertStatus, Certificate, CertificateJson, CurveOpts, CurveSamples, OrbitResult,
    RhpCurveParams, ScanCell, ScanWindow, SokalParams, StopReason,
};
pub use complexgeom::{
    arg1p, covers, cpow, geo_mean_dominates, principal_arg, principal_log, ComplexPoint,
    CoverWitness,
};
pub use graphs::{
    gen_all_trees, gen_complete_dary_tree, gen_layered_tree, max_degree, parse_edge_list, Graph,
};
pub use indpoly::{
    coeffs_by_size_enumeration, ind_poly, min_abs_over_catalog, taylor_log_z, IndPoly, LogZApprox,
    TreeCatalog,
};
pub use regions::{
    beta_star, boundary_polyline, cardioid_contains, cardioid_point, critical_region_bound,
    critical_region_contains, lhp_bound, region_membership, rhp_bound, shearer_radius, theta_d,
    uniqueness_threshold, BoundaryKind, ModelParams, RegionBoundary, RegionVerdict,
};

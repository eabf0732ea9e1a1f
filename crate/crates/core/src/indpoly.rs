//! Exact independence polynomials, catalog minimum-modulus scans, and the
//! truncated Taylor approximation of `log Z`.
//!
//! Coefficients are arbitrary-precision integers: `e_k` counts the
//! independent sets of size `k`, and exactness is the whole point of the
//! oracle.

use crate::complexgeom::{principal_arg, ComplexPoint};
use crate::graphs::{gen_all_trees, tree_canonical_code, Graph};
use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

/// Default vertex cap for the exact recursion (exponential worst case).
pub const DEFAULT_IND_POLY_CAP: usize = 40;
/// Guardrail on prefix-coefficient enumeration.
pub const SIZE_ENUM_MAX_M: usize = 8;
/// Guardrail on the truncated series order.
pub const SERIES_ORDER_CAP: usize = 512;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("graph has {n} vertices, exact recursion capped at {cap}")]
    VertexCap { n: usize, cap: usize },
    #[error("size enumeration limited to m <= {max}, got {m}")]
    SizeGuardrail { m: usize, max: usize },
    #[error("series order must lie in 1..={max}, got {m}")]
    SeriesOrder { m: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] crate::graphs::GraphError),
}

/// Independence polynomial with exact nonnegative integer coefficients,
/// index `k` holding `e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndPoly {
    coeffs: Vec<BigUint>,
}

impl IndPoly {
    pub fn from_coeffs(coeffs: Vec<BigUint>) -> IndPoly {
        assert!(!coeffs.is_empty() && coeffs[0] == BigUint::from(1u32), "e_0 must be 1");
        IndPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Degree, i.e. the independence number of the source graph.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation in double precision with exact coefficients.
    pub fn eval(&self, lambda: ComplexPoint) -> ComplexPoint {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * lambda + Complex64::new(c.to_f64().unwrap_or(f64::INFINITY), 0.0);
        }
        acc
    }
}

fn poly_add_shifted(acc: &mut Vec<BigUint>, other: &[BigUint], shift: usize) {
    if acc.len() < other.len() + shift {
        acc.resize(other.len() + shift, BigUint::zero());
    }
    for (i, c) in other.iter().enumerate() {
        acc[i + shift] += c;
    }
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

struct PolyEngine<'g> {
    g: &'g Graph,
    closed_nbhd: Vec<u128>,
    memo: HashMap<Vec<u8>, Vec<BigUint>>,
}

impl<'g> PolyEngine<'g> {
    fn new(g: &'g Graph) -> PolyEngine<'g> {
        let closed_nbhd = (0..g.n())
            .map(|v| {
                let mut m = 1u128 << v;
                for &w in g.neighbors(v as u32) {
                    m |= 1u128 << w;
                }
                m
            })
            .collect();
        PolyEngine { g, closed_nbhd, memo: HashMap::new() }
    }

    fn z_subset(&mut self, mask: u128) -> Vec<BigUint> {
        let mut acc = vec![BigUint::from(1u32)];
        let mut rest = mask;
        while rest != 0 {
            let seed = rest.trailing_zeros() as usize;
            // flood-fill one connected component
            let mut comp = 1u128 << seed;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u128;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.closed_nbhd[v] & mask & !comp;
                }
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            let zc = self.z_component(comp);
            acc = poly_mul(&acc, &zc);
        }
        acc
    }

    fn z_component(&mut self, comp: u128) -> Vec<BigUint> {
        let k = comp.count_ones();
        if k == 1 {
            return vec![BigUint::from(1u32), BigUint::from(1u32)];
        }
        let key = self.component_code(comp);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        // pivot on the densest vertex of the component
        let mut pivot = usize::MAX;
        let mut best = 0usize;
        let mut m = comp;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let deg = ((self.closed_nbhd[v] & comp).count_ones() - 1) as usize;
            if pivot == usize::MAX || deg > best {
                pivot = v;
                best = deg;
            }
        }
        let without_v = self.z_subset(comp & !(1u128 << pivot));
        let without_closed = self.z_subset(comp & !self.closed_nbhd[pivot]);
        let mut z = without_v;
        poly_add_shifted(&mut z, &without_closed, 1);
        self.memo.insert(key, z.clone());
        z
    }

    /// Memo key: AHU code for tree components (shares work across isomorphic
    /// subtrees), otherwise the order-preserving adjacency encoding.
    fn component_code(&self, comp: u128) -> Vec<u8> {
        let mut verts = Vec::with_capacity(comp.count_ones() as usize);
        let mut m = comp;
        while m != 0 {
            let v = m.trailing_zeros();
            m &= m - 1;
            verts.push(v);
        }
        let local: HashMap<u32, u32> =
            verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let mut edges = Vec::new();
        for &v in &verts {
            for &w in self.g.neighbors(v) {
                if w > v && comp & (1u128 << w) != 0 {
                    edges.push((local[&v], local[&w]));
                }
            }
        }
        if edges.len() == verts.len() - 1 {
            let t = Graph::from_edges(verts.len(), &edges);
            if let Some(mut code) = tree_canonical_code(&t) {
                code.insert(0, b'T');
                return code;
            }
        }
        let mut code = vec![b'G', verts.len() as u8];
        for &v in &verts {
            let mut row = 0u128;
            for &w in self.g.neighbors(v) {
                if comp & (1u128 << w) != 0 {
                    row |= 1u128 << local[&w];
                }
            }
            code.extend_from_slice(&row.to_le_bytes());
        }
        code
    }
}

/// Exact independence polynomial via the vertex recursion
/// `Z_G = Z_{G-v} + lambda * Z_{G-N[v]}`, pivoting on a maximum-degree
/// vertex and memoizing connected components.
pub fn ind_poly(g: &Graph) -> Result<IndPoly, PolyError> {
    ind_poly_with_cap(g, DEFAULT_IND_POLY_CAP)
}

pub fn ind_poly_with_cap(g: &Graph, cap: usize) -> Result<IndPoly, PolyError> {
    let n = g.n();
    if n > cap.min(128) {
        return Err(PolyError::VertexCap { n, cap: cap.min(128) });
    }
    if n == 0 {
        return Ok(IndPoly::from_coeffs(vec![BigUint::from(1u32)]));
    }
    let mut engine = PolyEngine::new(g);
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    Ok(IndPoly::from_coeffs(engine.z_subset(full)))
}

/// First `m + 1` coefficients of the independence polynomial by direct
/// enumeration of independent sets of size at most `m`.
pub fn coeffs_by_size_enumeration(g: &Graph, m: usize) -> Result<Vec<BigUint>, PolyError> {
    if m > SIZE_ENUM_MAX_M {
        return Err(PolyError::SizeGuardrail { m, max: SIZE_ENUM_MAX_M });
    }
    let n = g.n();
    let mut counts = vec![0u128; m + 1];
    counts[0] = 1;
    let mut blocked = vec![0u32; n];
    fn rec(g: &Graph, start: usize, depth: usize, m: usize, blocked: &mut [u32], counts: &mut [u128]) {
        if depth == m {
            return;
        }
        for v in start..g.n() {
            if blocked[v] > 0 {
                continue;
            }
            counts[depth + 1] += 1;
            blocked[v] += 1;
            for &w in g.neighbors(v as u32) {
                blocked[w as usize] += 1;
            }
            rec(g, v + 1, depth + 1, m, blocked, counts);
            blocked[v] -= 1;
            for &w in g.neighbors(v as u32) {
                blocked[w as usize] -= 1;
            }
        }
    }
    rec(g, 0, 0, m, &mut blocked, &mut counts);
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// Precomputed exact polynomials for every tree in a bounded-degree catalog,
/// reusable across many activities.
pub struct TreeCatalog {
    trees: Vec<(Graph, IndPoly)>,
}

impl TreeCatalog {
    /// Catalog of all trees with at most `n_max` vertices and degree at most
    /// `d + 1`.
    pub fn build(d: u32, n_max: usize) -> Result<TreeCatalog, PolyError> {
        assert!(d >= 1, "catalog needs d >= 1");
        let graphs: Vec<Graph> = gen_all_trees(n_max, d as usize + 1)?.collect();
        let trees = graphs
            .into_par_iter()
            .map(|g| {
                let p = ind_poly(&g).expect("catalog trees stay under the vertex cap");
                (g, p)
            })
            .collect();
        Ok(TreeCatalog { trees })
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Graph, IndPoly)> {
        self.trees.iter()
    }

    /// Minimum of `|Z_T(lambda)|` over the catalog with an argmin tree;
    /// ties break toward the earlier tree in catalog order.
    pub fn min_abs(&self, lambda: ComplexPoint) -> (f64, &Graph) {
        let moduli: Vec<f64> = self
            .trees
            .par_iter()
            .map(|(_, p)| p.eval(lambda).norm())
            .collect();
        let mut best = 0usize;
        for (i, &m) in moduli.iter().enumerate() {
            if m < moduli[best] {
                best = i;
            }
        }
        (moduli[best], &self.trees[best].0)
    }
}

/// Minimum modulus of the independence polynomial over all trees with at
/// most `n_max` vertices and degree at most `d + 1`, with a witness tree.
pub fn min_abs_over_catalog(
    d: u32,
    lambda: ComplexPoint,
    n_max: usize,
) -> Result<(f64, Graph), PolyError> {
    let catalog = TreeCatalog::build(d, n_max)?;
    let (min, witness) = catalog.min_abs(lambda);
    Ok((min, witness.clone()))
}

/// Truncated Taylor approximation of `log Z` with an optional tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LogZApprox {
    pub value: ComplexPoint,
    pub order: usize,
    /// `sum_{j>m} n (|lambda|/rho)^j / j` when a root-modulus lower bound
    /// `rho > |lambda|` is available, otherwise `None`.
    pub tail_bound: Option<f64>,
}

/// `(mantissa, exponent)` with `|x| = mantissa * 2^exponent`, mantissa finite.
fn big_magnitude(x: &BigInt) -> (f64, i64) {
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 53 {
        return (mag.to_f64().unwrap(), 0);
    }
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().unwrap();
    (top, shift as i64)
}

/// Truncated series for `log Z` at order `m`: inverse-root power sums
/// `p_j` come from the coefficients by Newton's identities in exact integer
/// arithmetic, and the result is `-sum_{j<=m} p_j lambda^j / j`.
///
/// Terms are assembled in log-magnitude form so deep orders neither
/// overflow nor underflow before the product `p_j lambda^j` is formed.
pub fn taylor_log_z(
    p: &IndPoly,
    lambda: ComplexPoint,
    m: usize,
    root_lower_bound: Option<f64>,
) -> Result<LogZApprox, PolyError> {
    if m == 0 || m > SERIES_ORDER_CAP {
        return Err(PolyError::SeriesOrder { m, max: SERIES_ORDER_CAP });
    }
    let deg = p.degree();
    let e: Vec<BigInt> = p.coeffs().iter().map(|c| BigInt::from(c.clone())).collect();
    let mut power_sums: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=(k - 1).min(deg) {
            acc += &e[i] * &power_sums[k - i];
        }
        if k <= deg {
            acc += BigInt::from(k as u64) * &e[k];
        }
        power_sums[k] = -acc;
    }

    let mut value = Complex64::new(0.0, 0.0);
    if lambda != Complex64::new(0.0, 0.0) {
        let ln_r = lambda.norm().ln();
        let phi = principal_arg(lambda);
        for (j, pj) in power_sums.iter().enumerate().skip(1) {
            if pj.is_zero() {
                continue;
            }
            let (mant, exp2) = big_magnitude(pj);
            let ln_mag = mant.ln() + exp2 as f64 * std::f64::consts::LN_2 + j as f64 * ln_r
                - (j as f64).ln();
            let mut phase = j as f64 * phi;
            if pj.sign() == Sign::Minus {
                phase += std::f64::consts::PI;
            }
            let mag = ln_mag.exp();
            value -= Complex64::new(mag * phase.cos(), mag * phase.sin());
        }
    }

    let n_vertices = if p.coeffs().len() > 1 { p.coeffs()[1].to_f64().unwrap() } else { 0.0 };
    let tail_bound = root_lower_bound.and_then(|rho| {
        let q = lambda.norm() / rho;
        if !(0.0..1.0).contains(&q) {
            return None;
        }
        let mut partial = 0.0;
        let mut qj = 1.0;
        for j in 1..=m {
            qj *= q;
            partial += qj / j as f64;
        }
        Some(n_vertices * (-(1.0 - q).ln() - partial))
    });

    Ok(LogZApprox { value, order: m, tail_bound })
}

//! Simple undirected graphs, edge-list ingestion, and isomorph-free
//! generation of the bounded-degree tree catalogs used as brute-force
//! zero-freeness oracles.

use std::collections::BTreeSet;
use thiserror::Error;

/// Default vertex cap for the tree generators.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;
/// Exhaustive tree enumeration is limited to this many vertices.
pub const TREE_ENUM_MAX_N: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: u64 },
    #[error("vertex cap exceeded: need {needed}, cap {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("tree enumeration is limited to n_max <= {max}, got {got}")]
    EnumGuardrail { got: usize, max: usize },
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list; duplicates are collapsed.
    ///
    /// Panics on self-loops or endpoints outside `0..n` (internal
    /// constructor; file ingestion goes through [`parse_edge_list`]).
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            assert!((u as usize) < n && (v as usize) < n, "edge ({u},{v}) outside 0..{n}");
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in set {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

/// Maximum vertex degree; 0 for the empty graph.
pub fn max_degree(g: &Graph) -> usize {
    g.adj.iter().map(|l| l.len()).max().unwrap_or(0)
}

/// Parses the whitespace edge-list format: a line is blank, a `#` comment,
/// or exactly two distinct nonnegative integers `u v`. Vertices are implicit,
/// `n = 1 + max id`; duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_id: Option<u64> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line,
                reason: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok.parse::<u64>().map_err(|_| GraphError::Parse {
                line,
                reason: format!("invalid vertex id {tok:?}"),
            })?;
        }
        let (u, v) = (ids[0], ids[1]);
        if u == v {
            return Err(GraphError::SelfLoop { line, v: u });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    if n > DEFAULT_VERTEX_CAP {
        return Err(GraphError::CapExceeded { needed: n, cap: DEFAULT_VERTEX_CAP });
    }
    let edges32: Vec<(u32, u32)> = edges.into_iter().map(|(u, v)| (u as u32, v as u32)).collect();
    Ok(Graph::from_edges(n, &edges32))
}

/// Complete `d`-ary tree with all leaves at the given depth.
pub fn gen_complete_dary_tree(d: usize, depth: usize) -> Result<Graph, GraphError> {
    gen_complete_dary_tree_with_cap(d, depth, DEFAULT_VERTEX_CAP)
}

pub fn gen_complete_dary_tree_with_cap(d: usize, depth: usize, cap: usize) -> Result<Graph, GraphError> {
    assert!(d >= 1, "arity must be at least 1");
    gen_layered_tree_with_cap(&vec![d; depth], cap)
}

/// Spherically symmetric tree whose level-`i` vertices each have
/// `arities[i]` children; `[]` is a single vertex.
pub fn gen_layered_tree(arities: &[usize]) -> Result<Graph, GraphError> {
    gen_layered_tree_with_cap(arities, DEFAULT_VERTEX_CAP)
}

pub fn gen_layered_tree_with_cap(arities: &[usize], cap: usize) -> Result<Graph, GraphError> {
    let mut total: usize = 1;
    let mut level_size: usize = 1;
    for &a in arities {
        level_size = level_size
            .checked_mul(a)
            .ok_or(GraphError::CapExceeded { needed: usize::MAX, cap })?;
        total = total
            .checked_add(level_size)
            .ok_or(GraphError::CapExceeded { needed: usize::MAX, cap })?;
        if total > cap {
            return Err(GraphError::CapExceeded { needed: total, cap });
        }
    }
    let mut edges = Vec::with_capacity(total.saturating_sub(1));
    let mut level_start = 0u32;
    let mut level_len = 1u32;
    let mut next = 1u32;
    for &a in arities {
        for p in level_start..level_start + level_len {
            for _ in 0..a {
                edges.push((p, next));
                next += 1;
            }
        }
        level_start += level_len;
        level_len *= a as u32;
    }
    Ok(Graph::from_edges(total, &edges))
}

// ---------------------------------------------------------------------------
// Isomorph-free enumeration of free trees.
//
// Canonical rooted trees are built as multisets of smaller canonical rooted
// trees; a free tree is emitted exactly once, rooted at its centroid (every
// root subtree strictly smaller than n/2) or, for even n, as an unordered
// pair of rooted halves joined by the centroid edge.
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Rooted {
    size: usize,
    code: Vec<u8>,
    children: Vec<usize>, // indices into the pool
}

struct RootedPool {
    nodes: Vec<Rooted>,
    /// by_size[m] = pool indices of canonical rooted trees with m vertices,
    /// sorted by code; every vertex has at most the subtree child bound.
    by_size: Vec<Vec<usize>>,
}

impl RootedPool {
    fn build(max_size: usize, max_children: usize) -> RootedPool {
        let mut pool = RootedPool {
            nodes: Vec::new(),
            by_size: vec![Vec::new(); max_size + 1],
        };
        if max_size >= 1 {
            let leaf = pool.intern(Vec::new());
            pool.by_size[1].push(leaf);
        }
        for m in 2..=max_size {
            let mut found = Vec::new();
            let mut chosen = Vec::new();
            pool.compose(m - 1, max_children, usize::MAX, 0, &mut chosen, &mut found);
            found.sort_by(|&a, &b| pool.nodes[a].code.cmp(&pool.nodes[b].code));
            pool.by_size[m] = found;
        }
        pool
    }

    fn intern(&mut self, children: Vec<usize>) -> usize {
        let size = 1 + children.iter().map(|&c| self.nodes[c].size).sum::<usize>();
        let mut codes: Vec<&[u8]> = children.iter().map(|&c| self.nodes[c].code.as_slice()).collect();
        codes.sort_unstable();
        let mut code = Vec::with_capacity(2 + codes.iter().map(|c| c.len()).sum::<usize>());
        code.push(b'(');
        for c in codes {
            code.extend_from_slice(c);
        }
        code.push(b')');
        self.nodes.push(Rooted { size, code, children });
        self.nodes.len() - 1
    }

    /// Chooses a multiset of subtrees totalling `remaining` vertices, at most
    /// `slots` of them, each no larger than the previously chosen one
    /// (`(last_size, last_idx)` in the per-size ordering), so every multiset
    /// appears exactly once.
    fn compose(
        &mut self,
        remaining: usize,
        slots: usize,
        last_size: usize,
        last_idx: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<usize>,
    ) {
        if remaining == 0 {
            out.push(self.intern(chosen.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        let top = remaining.min(last_size);
        for k in (1..=top).rev() {
            let start = if k == last_size { last_idx } else { 0 };
            for idx in start..self.by_size[k].len() {
                let node = self.by_size[k][idx];
                chosen.push(node);
                self.compose(remaining - k, slots - 1, k, idx, chosen, out);
                chosen.pop();
            }
        }
    }

    fn to_graph_single(&self, root: usize) -> Graph {
        let n = self.nodes[root].size;
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let mut next = 1u32;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((root, 0u32));
        while let Some((node, id)) = queue.pop_front() {
            for &c in &self.nodes[node].children {
                edges.push((id, next));
                queue.push_back((c, next));
                next += 1;
            }
        }
        Graph::from_edges(n, &edges)
    }

    fn to_graph_pair(&self, a: usize, b: usize) -> Graph {
        let n = self.nodes[a].size + self.nodes[b].size;
        let mut edges = Vec::with_capacity(n - 1);
        let mut next = 1u32;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back((a, 0u32));
        while let Some((node, id)) = queue.pop_front() {
            for &c in &self.nodes[node].children {
                edges.push((id, next));
                queue.push_back((c, next));
                next += 1;
            }
        }
        let b_root = next;
        edges.push((0, b_root));
        next += 1;
        queue.push_back((b, b_root));
        while let Some((node, id)) = queue.pop_front() {
            for &c in &self.nodes[node].children {
                edges.push((id, next));
                queue.push_back((c, next));
                next += 1;
            }
        }
        Graph::from_edges(n, &edges)
    }
}

/// Exactly one representative per isomorphism class of trees with at most
/// `n_max` vertices and maximum degree at most `max_deg`, in a deterministic
/// order (by size; within a size, centroid-rooted trees before centroid-edge
/// pairs).
pub fn gen_all_trees(n_max: usize, max_deg: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n_max > TREE_ENUM_MAX_N {
        return Err(GraphError::EnumGuardrail { got: n_max, max: TREE_ENUM_MAX_N });
    }
    let mut out = Vec::new();
    if n_max == 0 {
        return Ok(out.into_iter());
    }
    let subtree_children = max_deg.saturating_sub(1);
    let max_block = n_max / 2; // largest subtree needed by either rooting
    let mut pool = RootedPool::build(max_block.max(1), subtree_children);

    out.push(Graph::new(1));
    for n in 2..=n_max {
        // Unique centroid: every root subtree has at most (n-1)/2 vertices,
        // and the root has at most max_deg children.
        let cap = (n - 1) / 2;
        if cap >= 1 && max_deg >= 2 {
            let mut roots = Vec::new();
            let mut chosen = Vec::new();
            pool.compose(n - 1, max_deg, cap, 0, &mut chosen, &mut roots);
            roots.sort_by(|&a, &b| pool.nodes[a].code.cmp(&pool.nodes[b].code));
            for r in roots {
                out.push(pool.to_graph_single(r));
            }
        }
        // Centroid edge: even n, two rooted halves of n/2 vertices each.
        if n % 2 == 0 && max_deg >= 1 {
            let half = n / 2;
            let list = pool.by_size[half].clone();
            for i in 0..list.len() {
                for j in i..list.len() {
                    out.push(pool.to_graph_pair(list[i], list[j]));
                }
            }
        }
    }
    Ok(out.into_iter())
}

/// Canonical code of a tree, identical for isomorphic trees: the AHU
/// encoding rooted at the centroid, or at the centroid edge for even
/// splits. Returns `None` when the graph is not a tree.
pub fn tree_canonical_code(g: &Graph) -> Option<Vec<u8>> {
    let n = g.n();
    if n == 0 || g.edge_count() != n - 1 || !g.is_connected() {
        return None;
    }
    if n == 1 {
        return Some(b"V()".to_vec());
    }
    // Subtree sizes from an arbitrary root, then centroid(s).
    let mut parent = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0u32];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in g.neighbors(u) {
            if !seen[v as usize] {
                seen[v as usize] = true;
                parent[v as usize] = u;
                stack.push(v);
            }
        }
    }
    let mut sub = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u as usize] != u32::MAX {
            sub[parent[u as usize] as usize] += sub[u as usize];
        }
    }
    let mut centroids = Vec::new();
    for v in 0..n as u32 {
        let mut heaviest = n - sub[v as usize]; // parent side
        for &c in g.neighbors(v) {
            if parent[c as usize] == v {
                heaviest = heaviest.max(sub[c as usize]);
            }
        }
        if heaviest <= n / 2 {
            centroids.push(v);
        }
    }
    fn ahu(g: &Graph, v: u32, from: u32, out: &mut Vec<u8>) {
        let mut codes: Vec<Vec<u8>> = g
            .neighbors(v)
            .iter()
            .filter(|&&c| c != from)
            .map(|&c| {
                let mut buf = Vec::new();
                ahu(g, c, v, &mut buf);
                buf
            })
            .collect();
        codes.sort_unstable();
        out.push(b'(');
        for c in codes {
            out.extend_from_slice(&c);
        }
        out.push(b')');
    }
    match centroids.as_slice() {
        [c] => {
            let mut code = b"V".to_vec();
            ahu(g, *c, u32::MAX, &mut code);
            Some(code)
        }
        [c1, c2] => {
            let mut a = Vec::new();
            ahu(g, *c1, *c2, &mut a);
            let mut b = Vec::new();
            ahu(g, *c2, *c1, &mut b);
            if b < a {
                std::mem::swap(&mut a, &mut b);
            }
            let mut code = b"E".to_vec();
            code.extend_from_slice(&a);
            code.extend_from_slice(&b);
            Some(code)
        }
        _ => None, // a tree has one centroid or two adjacent ones
    }
}

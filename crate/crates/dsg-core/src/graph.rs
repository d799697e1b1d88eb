//! Immutable undirected simple graphs in adjacency (CSR-style) form,
//! plus exact density arithmetic.
//!
//! Edges are canonicalized so that `u < v` and sorted by `(u, v)`; the
//! incidence slot (0 for `u`, 1 for `v`) gives every (edge, endpoint)
//! pair the stable flat index `2 * edge_id + slot`.

use num_rational::Ratio;

use crate::error::{Error, Result};

/// An undirected, unweighted simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    inc_offsets: Vec<usize>,
    inc: Vec<(u32, u8)>,
    degree: Vec<u32>,
    max_degree: usize,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph from edge pairs over the vertex range `[0, n)`.
    /// Self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                continue;
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push((u as u32, v as u32));
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Ok(Self::build(n, edges, (0..n as u64).collect()))
    }

    fn build(n: usize, edges: Vec<(u32, u32)>, original_ids: Vec<u64>) -> Self {
        let mut degree = vec![0u32; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut inc_offsets = vec![0usize; n + 1];
        for u in 0..n {
            inc_offsets[u + 1] = inc_offsets[u] + degree[u] as usize;
        }
        let mut cursor = inc_offsets.clone();
        let mut inc = vec![(0u32, 0u8); 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            inc[cursor[u as usize]] = (e as u32, 0);
            cursor[u as usize] += 1;
            inc[cursor[v as usize]] = (e as u32, 1);
            cursor[v as usize] += 1;
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;
        Graph {
            n,
            edges,
            inc_offsets,
            inc,
            degree,
            max_degree,
            original_ids,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Endpoints of edge `e` as `(u, v)` with `u < v`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    /// `(edge_id, slot)` pairs incident to `u`.
    pub fn incidences(&self, u: usize) -> &[(u32, u8)] {
        &self.inc[self.inc_offsets[u]..self.inc_offsets[u + 1]]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degree[u] as usize
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// The input vertex label that was relabeled to `u`.
    pub fn original_id(&self, u: usize) -> u64 {
        self.original_ids[u]
    }

    /// Flat index of the incidence `(e, slot)` into length-`2m` vectors.
    #[inline]
    pub fn zindex(e: usize, slot: u8) -> usize {
        2 * e + slot as usize
    }

    /// The endpoint of edge `e` at `slot`.
    pub fn endpoint(&self, e: usize, slot: u8) -> usize {
        let (u, v) = self.edges[e];
        if slot == 0 {
            u as usize
        } else {
            v as usize
        }
    }
}

/// Parses whitespace-separated edge pairs; lines starting with `#` are
/// comments. Vertex labels may be arbitrary nonnegative integers and
/// are relabeled to a dense range (sorted by original id).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let a = parse_token(tokens.next(), line_no)?;
        let b = parse_token(tokens.next(), line_no)?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "expected exactly two tokens".into(),
            });
        }
        if a == b {
            continue; // self-loop
        }
        raw.push(if a < b { (a, b) } else { (b, a) });
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut ids: Vec<u64> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let lookup = |x: u64| ids.binary_search(&x).unwrap() as u32;
    let mut edges: Vec<(u32, u32)> = raw.iter().map(|&(a, b)| (lookup(a), lookup(b))).collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(Graph::build(ids.len(), edges, ids))
}

fn parse_token(tok: Option<&str>, line: usize) -> Result<u64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: "missing vertex token".into(),
    })?;
    tok.parse::<u64>().map_err(|_| Error::Parse {
        line,
        msg: format!("malformed vertex token {tok:?}"),
    })
}

/// A subset of the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: vec![false; n],
            len: 0,
        }
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for u in members {
            s.insert(u);
        }
        s
    }

    /// Decodes the low `n` bits of `mask` as a membership vector.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::from_members(n, (0..n).filter(|&u| mask >> u & 1 == 1))
    }

    pub fn insert(&mut self, u: usize) {
        if !self.bits[u] {
            self.bits[u] = true;
            self.len += 1;
        }
    }

    pub fn contains(&self, u: usize) -> bool {
        self.bits[u]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&u| self.bits[u]).collect()
    }
}

/// Exact subgraph density `|E(S)| / |S|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityValue {
    pub edges: u64,
    pub vertices: u64,
}

impl DensityValue {
    pub fn new(edges: u64, vertices: u64) -> Self {
        assert!(vertices >= 1, "density needs a nonempty set");
        DensityValue { edges, vertices }
    }

    pub fn exact(&self) -> Ratio<u64> {
        Ratio::new(self.edges, self.vertices)
    }

    pub fn value(&self) -> f64 {
        self.edges as f64 / self.vertices as f64
    }
}

impl PartialOrd for DensityValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DensityValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // cross-multiplied to stay exact
        let lhs = self.edges as u128 * other.vertices as u128;
        let rhs = other.edges as u128 * self.vertices as u128;
        lhs.cmp(&rhs)
    }
}

/// Number of edges of `g` with both endpoints in `s`.
pub fn induced_edge_count(g: &Graph, s: &VertexSet) -> u64 {
    g.edges()
        .iter()
        .filter(|&&(u, v)| s.contains(u as usize) && s.contains(v as usize))
        .count() as u64
}

/// Exact density of the subgraph induced by `s`.
pub fn density(g: &Graph, s: &VertexSet) -> Result<DensityValue> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(DensityValue::new(induced_edge_count(g, s), s.len() as u64))
}

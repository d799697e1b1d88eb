//! Deterministic random-graph generators for fixtures and benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Erdős–Rényi G(n, p). Retries a few seeds derived from `seed` if the
/// draw comes out with no edges.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    for attempt in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt << 32));
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::EmptyGraph)
}

/// G(n, p) background noise with a clique planted on vertices `0..k`.
pub fn planted_clique(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    if k > n || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "planted clique needs 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (u < k && v < k) || rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// RMAT graph on `2^scale` vertices targeting `8 * 2^scale` distinct
/// edges, with the standard (0.57, 0.19, 0.19, 0.05) quadrant split.
pub fn rmat(scale: u32, seed: u64) -> Result<Graph> {
    let n = 1usize << scale;
    let target = 8 * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(target * 2);
    let mut edges = Vec::with_capacity(target);
    let mut attempts = 0usize;
    while edges.len() < target && attempts < 64 * target {
        attempts += 1;
        let (mut u, mut v) = (0usize, 0usize);
        for _ in 0..scale {
            let r: f64 = rng.gen();
            let (du, dv) = if r < 0.57 {
                (0, 0)
            } else if r < 0.76 {
                (0, 1)
            } else if r < 0.95 {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | du;
            v = (v << 1) | dv;
        }
        if u == v {
            continue;
        }
        let key = if u < v {
            (u as u32, v as u32)
        } else {
            (v as u32, u as u32)
        };
        if seen.insert(key) {
            edges.push((key.0 as usize, key.1 as usize));
        }
    }
    Graph::from_edges(n, &edges)
}

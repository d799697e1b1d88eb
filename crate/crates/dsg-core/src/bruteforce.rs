//! Exponential-time oracles used as ground truth in tests: exact densest
//! subgraph and exact dense decomposition by subset enumeration.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{DensityValue, Graph, VertexSet};

const DENSEST_LIMIT: usize = 24;
const DECOMPOSITION_LIMIT: usize = 20;

/// Adjacency bitmasks, one per vertex.
fn adjacency_masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}

fn edges_inside(adj: &[u64], mask: u64) -> u64 {
    let mut count = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // count each edge at its lower endpoint
        count += (adj[u] & mask & !((1u64 << u) | ((1u64 << u) - 1))).count_ones() as u64;
    }
    count
}

/// Exact maximum-density subgraph by enumerating all nonempty subsets.
/// Ties break toward the larger set, then lexicographically smaller
/// membership. Refuses graphs with more than 24 vertices.
pub fn brute_force_densest(g: &Graph) -> Result<(VertexSet, DensityValue)> {
    let n = g.n();
    if n > DENSEST_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DENSEST_LIMIT,
        });
    }
    let adj = adjacency_masks(g);
    let mut best_mask = 1u64;
    let mut best = DensityValue::new(0, 1);
    for mask in 1u64..(1u64 << n) {
        let d = DensityValue::new(edges_inside(&adj, mask), mask.count_ones() as u64);
        let better = match d.cmp(&best) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                let (sz, bsz) = (mask.count_ones(), best_mask.count_ones());
                sz > bsz || (sz == bsz && lex_smaller(mask, best_mask))
            }
        };
        if better {
            best_mask = mask;
            best = d;
        }
    }
    Ok((VertexSet::from_mask(n, best_mask), best))
}

/// True if the member list of `a` is lexicographically smaller than `b`'s.
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    a >> low & 1 == 1
}

/// One block of the exact dense decomposition.
#[derive(Debug, Clone)]
pub struct ExactBlock {
    pub members: Vec<usize>,
    pub value: Ratio<u64>,
}

/// The exact decomposition together with its unique load profile `b*`.
#[derive(Debug, Clone)]
pub struct ExactDecomposition {
    pub blocks: Vec<ExactBlock>,
    pub b_star: Vec<Ratio<u64>>,
}

impl ExactDecomposition {
    pub fn b_star_f64(&self) -> Vec<f64> {
        self.b_star
            .iter()
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .collect()
    }

    /// Σ_u (b*_u)², the optimum of the load quadratic program.
    pub fn optimal_objective(&self) -> f64 {
        self.b_star_f64().iter().map(|b| b * b).sum()
    }
}

/// Exact dense decomposition: recursively extracts the maximal set
/// maximizing `|E(prev ∪ S) − E(prev)| / |S|` over the remaining
/// vertices. Refuses graphs with more than 20 vertices.
pub fn brute_force_decomposition(g: &Graph) -> Result<ExactDecomposition> {
    let n = g.n();
    if n > DECOMPOSITION_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DECOMPOSITION_LIMIT,
        });
    }
    let adj = adjacency_masks(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut remaining = full;
    let mut prev = 0u64;
    let mut blocks = Vec::new();
    let mut b_star = vec![Ratio::new(0u64, 1u64); n];

    while remaining != 0 {
        let (block_mask, value) = best_block(&adj, remaining, prev);
        let mut members = Vec::new();
        for u in 0..n {
            if block_mask >> u & 1 == 1 {
                members.push(u);
                b_star[u] = value;
            }
        }
        blocks.push(ExactBlock { members, value });
        prev |= block_mask;
        remaining &= !block_mask;
    }

    debug_assert!(blocks.windows(2).all(|w| w[0].value > w[1].value));
    Ok(ExactDecomposition { blocks, b_star })
}

/// The maximal maximizer of `(|E(S)| + |E(S, prev)|) / |S|` over
/// nonempty `S ⊆ remaining`.
fn best_block(adj: &[u64], remaining: u64, prev: u64) -> (u64, Ratio<u64>) {
    let bits: Vec<usize> = (0..64).filter(|&u| remaining >> u & 1 == 1).collect();
    let k = bits.len();
    let mut best_mask = 0u64;
    let mut best = Ratio::new(0u64, 1u64);
    for sub in 1u64..(1u64 << k) {
        let mut mask = 0u64;
        for (i, &u) in bits.iter().enumerate() {
            if sub >> i & 1 == 1 {
                mask |= 1 << u;
            }
        }
        let mut gained = edges_inside(adj, mask);
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            gained += (adj[u] & prev).count_ones() as u64;
        }
        let value = Ratio::new(gained, mask.count_ones() as u64);
        if best_mask == 0
            || value > best
            || (value == best && mask.count_ones() > best_mask.count_ones())
            || (value == best
                && mask.count_ones() == best_mask.count_ones()
                && lex_smaller(mask, best_mask))
        {
            best_mask = mask;
            best = value;
        }
    }
    (best_mask, best)
}

//! Greedy peeling and Greedy++ baselines. Cheap 1/2-approximations
//! used for binary-search brackets and benchmark comparison.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{DensityValue, Graph, VertexSet};

/// Record of one peeling pass.
#[derive(Debug, Clone)]
pub struct PeelTrace {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    /// Density of the suffix starting at each removal position
    /// (`suffix_density[i]` is the density before removing `order[i]`).
    pub suffix_density: Vec<DensityValue>,
    pub best_set: VertexSet,
    pub best_density: DensityValue,
}

/// Peels vertices in increasing `carried_load + current degree` order
/// (ties by vertex id) and returns the best suffix by exact density.
/// With `loads = None` this is plain greedy peeling.
pub fn greedy_peel(g: &Graph, loads: Option<&[f64]>) -> PeelTrace {
    let n = g.n();
    let mut degree: Vec<u64> = (0..n).map(|u| g.degree(u) as u64).collect();
    let key = |u: usize, deg: u64| loads.map_or(0.0, |l| l[u]) + deg as f64;
    // (key, vertex); stale entries skipped via the alive/degree check
    let mut queue: BinaryHeap<Reverse<(OrderedKey, usize)>> = BinaryHeap::with_capacity(n);
    for u in 0..n {
        queue.push(Reverse((OrderedKey(key(u, degree[u])), u)));
    }

    let mut alive = vec![true; n];
    let mut edges_left = g.m() as u64;
    let mut order = Vec::with_capacity(n);
    let mut suffix_density = Vec::with_capacity(n);
    let mut best_density = DensityValue::new(0, 1);
    let mut best_prefix_removed = 0usize;

    for removed in 0..n {
        let d = DensityValue::new(edges_left, (n - removed) as u64);
        suffix_density.push(d);
        if removed == 0 || d > best_density {
            best_density = d;
            best_prefix_removed = removed;
        }
        let u = loop {
            let Reverse((OrderedKey(k), u)) = queue.pop().expect("queue exhausted early");
            if alive[u] && key(u, degree[u]) == k {
                break u;
            }
        };
        alive[u] = false;
        order.push(u);
        for &(e, slot) in g.incidences(u) {
            let v = g.endpoint(e as usize, 1 - slot);
            if alive[v] {
                edges_left -= 1;
                degree[v] -= 1;
                queue.push(Reverse((OrderedKey(key(v, degree[v])), v)));
            }
        }
    }

    let best_set = VertexSet::from_members(n, order[best_prefix_removed..].iter().copied());
    PeelTrace {
        order,
        suffix_density,
        best_set,
        best_density,
    }
}

/// f64 keys are finite here, so total ordering is safe.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrderedKey(f64);

impl Eq for OrderedKey {}

impl PartialOrd for OrderedKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.partial_cmp(&other.0).unwrap()
    }
}

/// One Greedy++ pass: peels with the carried loads, then adds each
/// vertex's removal-time degree to `loads`.
pub fn greedy_pp_pass(g: &Graph, loads: &mut [f64]) -> PeelTrace {
    let trace = greedy_peel(g, Some(loads));
    // replay the pass to accumulate removal-time degrees
    let mut degree: Vec<f64> = (0..g.n()).map(|u| g.degree(u) as f64).collect();
    let mut alive = vec![true; g.n()];
    for &u in &trace.order {
        loads[u] += degree[u];
        alive[u] = false;
        for &(e, slot) in g.incidences(u) {
            let v = g.endpoint(e as usize, 1 - slot);
            if alive[v] {
                degree[v] -= 1.0;
            }
        }
    }
    trace
}

/// Greedy++: repeated peeling where each pass adds the removal-time
/// degree to a persistent per-vertex load. Pass 1 equals plain peeling.
pub fn greedy_pp(g: &Graph, iterations: usize) -> (VertexSet, DensityValue) {
    assert!(iterations >= 1);
    let mut loads = vec![0.0f64; g.n()];
    let mut best: Option<(VertexSet, DensityValue)> = None;
    for _ in 0..iterations {
        let trace = greedy_pp_pass(g, &mut loads);
        if best
            .as_ref()
            .map_or(true, |(_, bd)| trace.best_density > *bd)
        {
            best = Some((trace.best_set, trace.best_density));
        }
    }
    best.unwrap()
}

//! Primal construction from a dual distribution and oracle output, and
//! Charikar's sweep rounding from a fractional primal to a vertex set.

use crate::error::{Error, Result};
use crate::graph::{DensityValue, Graph, VertexSet};
use crate::mwu::{mwu_solve, vertex_loads, MwuRun};
use crate::scalar::Scalar;

const TIGHT_TOL: f64 = 1e-9;
const SLACK_TOL: f64 = 1e-8;

/// Feasible solution to the combined-constraint primal LP.
#[derive(Debug, Clone)]
pub struct PrimalSolution<S> {
    /// Per-vertex weights, summing to 1.
    pub x: Vec<S>,
    /// Per-incidence slack variables, length `2m`.
    pub alpha: Vec<S>,
    pub w: S,
    /// Vertices whose load is tight against `D`.
    pub tight: Vec<bool>,
}

/// For `u` in the tight set, the incident edge with smallest `p_e`
/// among those with positive `z_eu` (ties toward the larger edge id).
fn cheapest_positive_edge<S: Scalar>(g: &Graph, p: &[S], z: &[S], u: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &(e, slot) in g.incidences(u) {
        let e = e as usize;
        if z[Graph::zindex(e, slot)] > S::zero() {
            best = match best {
                None => Some(e),
                Some(b) if p[e] < p[b] || (p[e] == p[b] && e > b) => Some(e),
                other => other,
            };
        }
    }
    best
}

/// Builds the optimal primal solution from an oracle pair `(z, D)` for
/// the distribution `p`, by the tight-set assignment rules.
pub fn construct_primal<S: Scalar>(g: &Graph, p: &[S], z: &[S], d: S) -> Result<PrimalSolution<S>> {
    let loads = vertex_loads(g, z);
    let tol = S::c(TIGHT_TOL) * d.abs().max(S::one());
    let tight: Vec<bool> = loads.iter().map(|&l| (l - d).abs() <= tol).collect();
    assert!(
        tight.iter().any(|&t| t),
        "tight set is empty; (z, D) is not an oracle output"
    );

    let mut anchor = vec![usize::MAX; g.n()];
    let mut denom = S::zero();
    for u in 0..g.n() {
        if tight[u] {
            let e = cheapest_positive_edge(g, p, z, u).ok_or_else(|| {
                Error::Invariant(format!("tight vertex {u} has no positive incidence"))
            })?;
            anchor[u] = e;
            denom = denom + p[e];
        }
    }
    if denom <= S::zero() {
        return Err(Error::Invariant(
            "anchor weights of the tight set sum to zero".into(),
        ));
    }
    let w = S::one() / denom;

    let mut x = vec![S::zero(); g.n()];
    for u in 0..g.n() {
        if tight[u] {
            x[u] = p[anchor[u]] * w;
        }
    }

    let mut alpha = vec![S::zero(); 2 * g.m()];
    for u in 0..g.n() {
        for &(e, slot) in g.incidences(u) {
            let e = e as usize;
            let idx = Graph::zindex(e, slot);
            if !tight[u] {
                alpha[idx] = p[e] * w;
            } else if p[e] >= p[anchor[u]] {
                alpha[idx] = (p[e] * w - x[u]).max(S::zero());
            }
        }
    }

    Ok(PrimalSolution { x, alpha, w, tight })
}

/// `Σ_e min(x_u, x_v)`, the primal LP objective.
pub fn primal_objective<S: Scalar>(g: &Graph, x: &[S]) -> S {
    g.edges()
        .iter()
        .map(|&(u, v)| x[u as usize].min(x[v as usize]))
        .sum()
}

/// Charikar's sweep: sort vertices by decreasing `x` (ties by vertex
/// id) and return the best-density prefix, preferring the longer
/// prefix on exact ties.
pub fn charikar_sweep<S: Scalar>(g: &Graph, x: &[S]) -> (VertexSet, DensityValue) {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).unwrap().then(a.cmp(&b)));
    let mut rank = vec![0usize; g.n()];
    for (i, &u) in order.iter().enumerate() {
        rank[u] = i;
    }

    let mut edges_so_far = 0u64;
    let mut best_len = 1usize;
    let mut best = DensityValue::new(0, 1);
    for (i, &u) in order.iter().enumerate() {
        for &(e, slot) in g.incidences(u) {
            let other = g.endpoint(e as usize, 1 - slot);
            if rank[other] < i {
                edges_so_far += 1;
            }
        }
        let d = DensityValue::new(edges_so_far, (i + 1) as u64);
        if d >= best {
            best = d;
            best_len = i + 1;
        }
    }
    let set = VertexSet::from_members(g.n(), order[..best_len].iter().copied());
    (set, best)
}

/// Outcome of the complementary-slackness diagnostic.
#[derive(Debug, Clone)]
pub struct SlacknessReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks the three complementary-slackness conditions tying the
/// primal `(W, x, α)` to the oracle pair `(z, D)` for distribution `p`.
pub fn verify_complementary_slackness<S: Scalar>(
    g: &Graph,
    p: &[S],
    z: &[S],
    d: S,
    primal: &PrimalSolution<S>,
) -> SlacknessReport {
    let tol = S::c(SLACK_TOL);
    let mut violations = Vec::new();

    let total: S = primal.x.iter().copied().sum();
    if (total - S::one()).abs() > tol {
        violations.push(format!("condition 1: sum of x is {total}, expected 1"));
    }

    let loads = vertex_loads(g, z);
    let tight_tol = S::c(TIGHT_TOL) * d.abs().max(S::one());
    for u in 0..g.n() {
        if loads[u] < d - tight_tol && primal.x[u].abs() > tol {
            violations.push(format!(
                "condition 2: vertex {u} has slack load {} but x = {}",
                loads[u], primal.x[u]
            ));
        }
    }

    for u in 0..g.n() {
        for &(e, slot) in g.incidences(u) {
            let e_id = e as usize;
            let idx = Graph::zindex(e_id, slot);
            let (zv, av) = (z[idx], primal.alpha[idx]);
            if !primal.tight[u] {
                if (zv - S::one()).abs() > tol {
                    violations.push(format!(
                        "condition 3: slack vertex {u} has z = {zv} on edge {e_id}"
                    ));
                }
                if (av - p[e_id] * primal.w).abs() > tol {
                    violations.push(format!(
                        "condition 3: slack vertex {u} has alpha = {av} on edge {e_id}"
                    ));
                }
            } else if zv > tol {
                let gap = primal.x[u] + av - p[e_id] * primal.w;
                if gap.abs() > tol {
                    violations.push(format!(
                        "condition 3: tight vertex {u}, edge {e_id}: x + alpha - pW = {gap}"
                    ));
                }
            } else if av > tol {
                violations.push(format!(
                    "condition 3: tight vertex {u} has alpha = {av} on zero incidence of edge {e_id}"
                ));
            }
        }
    }

    SlacknessReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// End-to-end MWU pipeline: solve, build the primal from the best
/// iterate, and sweep to a vertex set.
pub fn mwu_densest<S: Scalar>(g: &Graph, eps: f64) -> Result<(VertexSet, DensityValue, MwuRun<S>)> {
    let run = mwu_solve(g, eps)?;
    let primal = construct_primal(g, &run.p_tau, &run.z_tau, run.d_tau)?;
    let (set, density) = charikar_sweep(g, &primal.x);
    Ok((set, density, run))
}

//! Multiplicative weights update over the width-reduced dual LP, with
//! the exact greedy-packing oracle for the per-iteration LP.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::smax::smax_gradient;

const R_BOUNDARY_TOL: f64 = 1e-12;
const COMBINED_CONSTRAINT_TOL: f64 = 1e-9;

/// Per-vertex incidences sorted by decreasing weight, ties by edge id.
pub(crate) fn sorted_incidences<S: Scalar>(g: &Graph, p: &[S]) -> Vec<Vec<(u32, u8)>> {
    (0..g.n())
        .map(|u| {
            let mut inc: Vec<(u32, u8)> = g.incidences(u).to_vec();
            inc.sort_unstable_by(|a, b| {
                p[b.0 as usize]
                    .partial_cmp(&p[a.0 as usize])
                    .unwrap()
                    .then(a.0.cmp(&b.0))
            });
            inc
        })
        .collect()
}

/// Exact solver for the per-iteration LP: minimizes the maximum vertex
/// load subject to `Σ_u Σ_{e∋u} p_e z_eu = 1` and `z ∈ [0,1]^{2m}`.
///
/// Returns `(D, z)` where `z` is the greedy prefix assignment: per
/// vertex, the `⌊D⌋` largest-weight edges get 1, the next gets
/// `R = D − ⌊D⌋`, the rest 0. Panics if no `⌊D⌋` admits `0 ≤ R < 1`,
/// which cannot happen for a valid distribution `p`.
pub fn solve_weighted_lp<S: Scalar>(g: &Graph, p: &[S]) -> (S, Vec<S>) {
    assert_eq!(p.len(), g.m());
    let sorted = sorted_incidences(g, p);

    // vertices in decreasing degree order; for a candidate floor(D) the
    // vertices with spare capacity form a prefix
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_unstable_by_key(|&u| std::cmp::Reverse(g.degree(u)));

    let r_tol = S::c(R_BOUNDARY_TOL);
    let mut taken_sum = S::zero(); // Σ_u Σ_{full edges} p_e at current floor(D)
    let mut active = g.n(); // prefix of by_degree with degree > floor(D)

    for floor_d in 0..=g.max_degree() {
        while active > 0 && g.degree(by_degree[active - 1]) <= floor_d {
            active -= 1;
        }
        let mut next_sum = S::zero();
        for &u in &by_degree[..active] {
            next_sum = next_sum + p[sorted[u][floor_d].0 as usize];
        }
        let remainder = if next_sum > S::zero() {
            Some((S::one() - taken_sum) / next_sum)
        } else if (S::one() - taken_sum).abs() <= r_tol {
            Some(S::zero())
        } else {
            None
        };
        if let Some(r) = remainder {
            if r >= -r_tol && r < S::one() {
                let r = r.max(S::zero());
                let d = S::from_usize(floor_d).unwrap() + r;
                let z = assemble(g, &sorted, floor_d, r);
                let combined = combined_constraint(g, p, &z);
                assert!(
                    (combined - S::one()).abs() <= S::c(COMBINED_CONSTRAINT_TOL),
                    "combined constraint violated: {combined}"
                );
                return (d, z);
            }
        }
        taken_sum = taken_sum + next_sum;
    }
    panic!("no floor(D) admits 0 <= R < 1; p is not a valid distribution");
}

fn assemble<S: Scalar>(g: &Graph, sorted: &[Vec<(u32, u8)>], floor_d: usize, r: S) -> Vec<S> {
    let mut z = vec![S::zero(); 2 * g.m()];
    for order in sorted {
        for (rank, &(e, slot)) in order.iter().enumerate() {
            if rank < floor_d {
                z[Graph::zindex(e as usize, slot)] = S::one();
            } else if rank == floor_d {
                z[Graph::zindex(e as usize, slot)] = r;
            } else {
                break;
            }
        }
    }
    z
}

/// `Σ_u Σ_{e∋u} p_e z_eu`, which an oracle solution holds at 1.
pub fn combined_constraint<S: Scalar>(g: &Graph, p: &[S], z: &[S]) -> S {
    (0..g.m()).map(|e| p[e] * (z[2 * e] + z[2 * e + 1])).sum()
}

/// Per-vertex loads `Σ_{e∋u} z_eu` of an incidence vector.
pub fn vertex_loads<S: Scalar>(g: &Graph, z: &[S]) -> Vec<S> {
    let mut loads = vec![S::zero(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        loads[u as usize] = loads[u as usize] + z[2 * e];
        loads[v as usize] = loads[v as usize] + z[2 * e + 1];
    }
    loads
}

pub fn max_load<S: Scalar>(g: &Graph, z: &[S]) -> S {
    vertex_loads(g, z)
        .into_iter()
        .fold(S::neg_infinity(), S::max)
}

/// Result of a full MWU run.
#[derive(Debug, Clone)]
pub struct MwuRun<S> {
    /// Average of the per-iteration oracle solutions.
    pub zbar: Vec<S>,
    /// Oracle objective of every iteration, in order.
    pub d_history: Vec<S>,
    /// Zero-based index of the best iteration.
    pub tau: usize,
    pub d_tau: S,
    /// Edge distribution at the best iteration.
    pub p_tau: Vec<S>,
    /// Oracle solution at the best iteration.
    pub z_tau: Vec<S>,
}

/// Number of MWU rounds for approximation parameter `eps` (at least 1).
pub fn mwu_rounds(m: usize, eps: f64) -> usize {
    ((2.0 * (m as f64).ln() / (eps * eps)).ceil() as usize).max(1)
}

/// Runs `T = ⌈2 ln m / eps²⌉` rounds of multiplicative weights with
/// step `eta = eps`, returning the averaged solution and the best
/// iterate. Deterministic.
pub fn mwu_solve<S: Scalar>(g: &Graph, eps: f64) -> Result<MwuRun<S>> {
    let mut solver = MwuSolver::new(g, eps)?;
    for _ in 0..solver.planned_rounds() {
        solver.round()?;
    }
    solver.finish()
}

/// Round-by-round driver for the MWU loop, for callers that want to
/// observe the trajectory (the benchmark harness, for instance).
pub struct MwuSolver<'g, S> {
    g: &'g Graph,
    planned: usize,
    eta: S,
    p: Vec<S>,
    gains: Vec<S>,
    zsum: Vec<S>,
    d_history: Vec<S>,
    best: Option<(usize, S, Vec<S>, Vec<S>)>,
}

impl<'g, S: Scalar> MwuSolver<'g, S> {
    pub fn new(g: &'g Graph, eps: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eps) || eps == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eps must be in (0,1), got {eps}"
            )));
        }
        let m = g.m();
        let rounds = mwu_rounds(m, eps);
        Ok(MwuSolver {
            g,
            planned: rounds,
            eta: S::c(eps),
            p: vec![S::one() / S::from_usize(m).unwrap(); m],
            gains: vec![S::zero(); m],
            zsum: vec![S::zero(); 2 * m],
            d_history: Vec::with_capacity(rounds),
            best: None,
        })
    }

    /// The round budget `T = ⌈2 ln m / eps²⌉`.
    pub fn planned_rounds(&self) -> usize {
        self.planned
    }

    pub fn rounds_done(&self) -> usize {
        self.d_history.len()
    }

    /// Runs one round; returns this round's oracle objective.
    pub fn round(&mut self) -> Result<S> {
        let g = self.g;
        let m = g.m();
        let t = self.d_history.len();
        let (d, z) = solve_weighted_lp(g, &self.p);
        for (acc, &v) in self.zsum.iter_mut().zip(&z) {
            *acc = *acc + v;
        }
        if self.best.as_ref().map_or(true, |(_, bd, _, _)| d > *bd) {
            self.best = Some((t, d, self.p.clone(), z.clone()));
        }
        self.d_history.push(d);
        for e in 0..m {
            let gain = S::one() - (z[2 * e] + z[2 * e + 1]);
            debug_assert!(gain >= -S::one() - S::c(1e-9) && gain <= S::one() + S::c(1e-9));
            self.gains[e] = self.gains[e] + gain;
        }
        self.p = smax_gradient(self.eta, &self.gains)?;
        Ok(d)
    }

    /// `(d_tau, p_tau, z_tau)` of the best round so far.
    pub fn best_snapshot(&self) -> Option<(S, &[S], &[S])> {
        self.best
            .as_ref()
            .map(|(_, d, p, z)| (*d, p.as_slice(), z.as_slice()))
    }

    /// Average of the oracle solutions over the rounds run so far.
    pub fn zbar(&self) -> Vec<S> {
        let t = S::from_usize(self.rounds_done().max(1)).unwrap();
        self.zsum.iter().map(|&v| v / t).collect()
    }

    pub fn finish(self) -> Result<MwuRun<S>> {
        let rounds = self.d_history.len();
        if rounds == 0 {
            return Err(Error::Invariant("no MWU rounds were run".into()));
        }
        let t_scalar = S::from_usize(rounds).unwrap();
        let zbar = self.zsum.iter().map(|&v| v / t_scalar).collect();
        let (tau, d_tau, p_tau, z_tau) = self.best.unwrap();
        Ok(MwuRun {
            zbar,
            d_history: self.d_history,
            tau,
            d_tau,
            p_tau,
            z_tau,
        })
    }
}

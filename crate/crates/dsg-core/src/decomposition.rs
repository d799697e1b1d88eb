//! Dense-decomposition solvers for the load-balancing quadratic
//! program `min Σ_u b_u²` over the product of per-edge segments
//! `{z_eu + z_ev = 1, z ∈ [0,1]²}`: plain and accelerated random
//! coordinate descent, a restarted practical variant, and fractional
//! peeling from a near-optimal load vector to an ordered partition.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::greedy_peel;
use crate::graph::{DensityValue, Graph};
use crate::scalar::Scalar;

/// Projection onto the segment `{(a, b) : a + b = 1, a, b ∈ [0, 1]}`.
pub fn project_block<S: Scalar>(pair: (S, S)) -> (S, S) {
    let (a, b) = pair;
    let diff = a - b;
    if diff > S::one() {
        (S::one(), S::zero())
    } else if diff < -S::one() {
        (S::zero(), S::one())
    } else {
        let half = S::c(0.5);
        ((diff + S::one()) * half, (S::one() - diff) * half)
    }
}

/// Per-vertex loads `b_u = Σ_{e∋u} z_eu`.
pub fn loads<S: Scalar>(g: &Graph, z: &[S]) -> Vec<S> {
    crate::mwu::vertex_loads(g, z)
}

/// `f(z) = Σ_u b_u²`.
pub fn objective<S: Scalar>(g: &Graph, z: &[S]) -> S {
    loads(g, z).into_iter().map(|b| b * b).sum()
}

/// Exact minimizer of
/// `⟨grad, s⟩ + step_weight · ‖s − anchor‖²` over the edge segment:
/// `project_block(anchor − grad / (2 · step_weight))`.
pub fn coordinate_update<S: Scalar>(anchor: (S, S), step_weight: S, grad: (S, S)) -> (S, S) {
    debug_assert!(step_weight > S::zero());
    let two = S::c(2.0);
    project_block((
        anchor.0 - grad.0 / (two * step_weight),
        anchor.1 - grad.1 / (two * step_weight),
    ))
}

/// Order in which coordinate solvers visit edges within a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// `m` edges drawn uniformly with replacement per pass.
    Sampled,
    /// A fresh uniform permutation of the edges per pass.
    Permutation,
}

/// Every edge split evenly: the canonical starting point.
pub fn even_init<S: Scalar>(g: &Graph) -> Vec<S> {
    vec![S::c(0.5); 2 * g.m()]
}

/// Orients each edge fully toward the endpoint that greedy peeling
/// removes later (the denser side).
pub fn greedy_init<S: Scalar>(g: &Graph) -> Vec<S> {
    let trace = greedy_peel(g, None);
    let mut position = vec![0usize; g.n()];
    for (i, &u) in trace.order.iter().enumerate() {
        position[u] = i;
    }
    let mut z = vec![S::zero(); 2 * g.m()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if position[u as usize] > position[v as usize] {
            z[2 * e] = S::one();
        } else {
            z[2 * e + 1] = S::one();
        }
    }
    z
}

fn pass_order(m: usize, mode: SweepMode, rng: &mut ChaCha8Rng) -> Vec<usize> {
    match mode {
        SweepMode::Sampled => (0..m).map(|_| rng.gen_range(0..m)).collect(),
        SweepMode::Permutation => {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(rng);
            order
        }
    }
}

/// Pass-by-pass driver for plain random coordinate descent.
pub struct RcdmSolver<'g, S> {
    g: &'g Graph,
    mode: SweepMode,
    rng: ChaCha8Rng,
    z: Vec<S>,
    b: Vec<S>,
}

impl<'g, S: Scalar> RcdmSolver<'g, S> {
    pub fn new(g: &'g Graph, z0: &[S], mode: SweepMode, seed: u64) -> Self {
        let z = z0.to_vec();
        let b = loads(g, &z);
        RcdmSolver {
            g,
            mode,
            rng: ChaCha8Rng::seed_from_u64(seed),
            z,
            b,
        }
    }

    /// Runs one pass of `m` edge updates and returns the objective.
    pub fn pass(&mut self) -> S {
        for e in pass_order(self.g.m(), self.mode, &mut self.rng) {
            rcdm_step(self.g, &mut self.z, &mut self.b, e);
        }
        self.b.iter().map(|&v| v * v).sum()
    }

    pub fn z(&self) -> &[S] {
        &self.z
    }

    pub fn loads(&self) -> &[S] {
        &self.b
    }
}

/// Random coordinate descent from `z0`: each visit replaces an edge's
/// pair by the exact minimizer of `f` over its segment, so `f` never
/// increases. Deterministic for a fixed seed.
pub fn rcdm_from<S: Scalar>(
    g: &Graph,
    z0: &[S],
    passes: usize,
    mode: SweepMode,
    seed: u64,
) -> Vec<S> {
    assert!(passes >= 1);
    let mut solver = RcdmSolver::new(g, z0, mode, seed);
    for _ in 0..passes {
        solver.pass();
    }
    solver.z
}

/// One exact block minimization at edge `e`, keeping `b` in sync.
pub fn rcdm_step<S: Scalar>(g: &Graph, z: &mut [S], b: &mut [S], e: usize) {
    let (u, v) = g.endpoints(e);
    let pair = (z[2 * e], z[2 * e + 1]);
    let grad = (S::c(2.0) * b[u], S::c(2.0) * b[v]);
    let next = coordinate_update(pair, S::one(), grad);
    b[u] = b[u] + next.0 - pair.0;
    b[v] = b[v] + next.1 - pair.1;
    z[2 * e] = next.0;
    z[2 * e + 1] = next.1;
}

/// [`rcdm_from`] started at the even split.
pub fn rcdm<S: Scalar>(g: &Graph, passes: usize, mode: SweepMode, seed: u64) -> Vec<S> {
    rcdm_from(g, &even_init(g), passes, mode, seed)
}

/// Which momentum parameter the x-materialization and y-step weight
/// use: the value from the previous inner step (reference accelerated
/// pseudocode) or the freshly updated one (practical variant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIndexing {
    Lagged,
    Current,
}

struct AcdmEpoch<S> {
    y: Vec<S>,
    w: Vec<S>,
    /// per-vertex loads of y and w, kept so a single edge update is O(1)
    by: Vec<S>,
    bw: Vec<S>,
    theta: S,
    theta_prev: S,
}

impl<S: Scalar> AcdmEpoch<S> {
    fn start(g: &Graph, z: &[S]) -> Self {
        let m = S::from_usize(g.m()).unwrap();
        let y = z.to_vec();
        let by = loads(g, &y);
        AcdmEpoch {
            y,
            w: vec![S::zero(); 2 * g.m()],
            by,
            bw: vec![S::zero(); g.n()],
            theta: S::one() / m,
            theta_prev: S::one() / m,
        }
    }

    fn advance_theta(&mut self) {
        let t = self.theta;
        self.theta_prev = t;
        let t2 = t * t;
        self.theta = ((t2 * t2 + S::c(4.0) * t2).sqrt() - t2) / S::c(2.0);
    }

    /// One accelerated update at edge `e`.
    fn update_edge(&mut self, g: &Graph, e: usize, indexing: ThetaIndexing) {
        let (u, v) = g.endpoints(e);
        let th = match indexing {
            ThetaIndexing::Lagged => self.theta_prev,
            ThetaIndexing::Current => self.theta,
        };
        let th2 = th * th;
        let m = S::from_usize(g.m()).unwrap();
        // loads of x = θ² w + y, per endpoint
        let gx = (
            S::c(2.0) * (th2 * self.bw[u] + self.by[u]),
            S::c(2.0) * (th2 * self.bw[v] + self.by[v]),
        );
        let y_old = (self.y[2 * e], self.y[2 * e + 1]);
        let y_new = coordinate_update(y_old, S::c(2.0) * m * th, gx);
        let dy = (y_new.0 - y_old.0, y_new.1 - y_old.1);
        // the w recurrence always lags by one θ step
        let tp = self.theta_prev;
        let factor = (S::one() - m * tp) / (tp * tp);
        self.w[2 * e] = self.w[2 * e] - factor * dy.0;
        self.w[2 * e + 1] = self.w[2 * e + 1] - factor * dy.1;
        self.bw[u] = self.bw[u] - factor * dy.0;
        self.bw[v] = self.bw[v] - factor * dy.1;
        self.y[2 * e] = y_new.0;
        self.y[2 * e + 1] = y_new.1;
        self.by[u] = self.by[u] + dy.0;
        self.by[v] = self.by[v] + dy.1;
    }

    fn materialize(&self, theta: S) -> Vec<S> {
        let th2 = theta * theta;
        self.w
            .iter()
            .zip(&self.y)
            .map(|(&w, &y)| th2 * w + y)
            .collect()
    }
}

/// Accelerated random coordinate descent, reference form: `epochs`
/// restarts, each running `inner` steps where every edge joins the
/// step independently with probability `1/m`. The combination
/// `z = θ²w + y` is materialized only at epoch boundaries.
pub fn acdm<S: Scalar>(
    g: &Graph,
    epochs: usize,
    inner: usize,
    seed: u64,
    indexing: ThetaIndexing,
) -> Vec<S> {
    assert!(epochs >= 1 && inner >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = g.m();
    let p = 1.0 / m as f64;
    let mut z = even_init::<S>(g);
    for _ in 0..epochs {
        let mut ep = AcdmEpoch::start(g, &z);
        let mut theta_before_last = ep.theta;
        for _ in 0..inner {
            for e in 0..m {
                if rng.gen::<f64>() < p {
                    ep.update_edge(g, e, indexing);
                }
            }
            theta_before_last = ep.theta;
            ep.advance_theta();
        }
        z = ep.materialize(theta_before_last);
    }
    z
}

/// Result of a practical accelerated run.
#[derive(Debug, Clone)]
pub struct PracticalRun<S> {
    pub z: Vec<S>,
    /// Objective value at the end of every pass.
    pub pass_f: Vec<S>,
    /// Passes at which the momentum state was restarted.
    pub restarts: Vec<usize>,
}

/// Practical accelerated coordinate descent: permutation sweeps, one
/// θ advance per pass, and a momentum restart whenever a pass ends
/// with a larger objective than the previous one. `b` and `f` are
/// maintained incrementally and recomputed once per pass.
pub fn acdm_practical<S: Scalar>(g: &Graph, passes: usize, seed: u64) -> PracticalRun<S> {
    acdm_practical_from(g, &even_init(g), passes, seed)
}

pub fn acdm_practical_from<S: Scalar>(
    g: &Graph,
    z0: &[S],
    passes: usize,
    seed: u64,
) -> PracticalRun<S> {
    assert!(passes >= 1);
    let mut solver = PracticalSolver::new(g, z0, seed);
    let mut pass_f = Vec::with_capacity(passes);
    for _ in 0..passes {
        pass_f.push(solver.pass());
    }
    PracticalRun {
        z: solver.z,
        pass_f,
        restarts: solver.restarts,
    }
}

/// Pass-by-pass driver for the practical accelerated method.
pub struct PracticalSolver<'g, S> {
    g: &'g Graph,
    rng: ChaCha8Rng,
    ep: AcdmEpoch<S>,
    z: Vec<S>,
    f: S,
    f_last: S,
    passes_done: usize,
    restarts: Vec<usize>,
}

impl<'g, S: Scalar> PracticalSolver<'g, S> {
    pub fn new(g: &'g Graph, z0: &[S], seed: u64) -> Self {
        let z = z0.to_vec();
        let f = objective(g, &z);
        let ep = AcdmEpoch::start(g, &z);
        PracticalSolver {
            g,
            rng: ChaCha8Rng::seed_from_u64(seed),
            ep,
            z,
            f,
            f_last: S::zero(),
            passes_done: 0,
            restarts: Vec::new(),
        }
    }

    /// Runs one permutation pass (with restart bookkeeping) and
    /// returns the end-of-pass objective.
    pub fn pass(&mut self) -> S {
        if self.f > self.f_last {
            self.z = self.ep.materialize(self.ep.theta);
            self.ep = AcdmEpoch::start(self.g, &self.z);
            if self.passes_done > 0 {
                self.restarts.push(self.passes_done);
            }
        } else {
            self.ep.advance_theta();
        }
        self.f_last = self.f;
        for e in pass_order(self.g.m(), SweepMode::Permutation, &mut self.rng) {
            self.ep.update_edge(self.g, e, ThetaIndexing::Current);
        }
        // recompute from scratch to cancel incremental drift
        self.z = self.ep.materialize(self.ep.theta);
        let b = loads(self.g, &self.z);
        self.f = b.iter().map(|&v| v * v).sum();
        self.passes_done += 1;
        self.f
    }

    pub fn z(&self) -> &[S] {
        &self.z
    }
}

/// One block of an ordered dense decomposition. The density counts
/// edges inside the block plus edges to all earlier blocks.
#[derive(Debug, Clone)]
pub struct Block {
    pub members: Vec<usize>,
    pub density: DensityValue,
}

/// Ordered partition of the vertices with provenance metadata.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub algorithm: String,
    pub eps: Option<f64>,
    pub seed: Option<u64>,
}

impl Decomposition {
    pub fn block_of(&self, u: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.members.contains(&u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PeelKey(f64);

impl Eq for PeelKey {}

impl PartialOrd for PeelKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PeelKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.partial_cmp(&other.0).unwrap()
    }
}

/// Fractional peeling: rounds a near-optimal `(z, b)` into an ordered
/// decomposition. Each round peels the minimum-`b′` vertex (ties by
/// id) and keeps the maximum-density suffix as the next block, with
/// densities tracked in exact integer arithmetic; crossing edges are
/// then reassigned entirely to the surviving endpoint.
pub fn fractional_peel<S: Scalar>(g: &Graph, z: &[S], b: &[S]) -> Decomposition {
    let n = g.n();
    let mut z: Vec<S> = z.to_vec();
    let mut alive = vec![true; n];
    // edges fully credited to a vertex from earlier blocks
    let mut bonus = vec![0u64; n];
    let mut remaining = n;
    let mut blocks = Vec::new();
    let mut first_round = true;

    while remaining > 0 {
        // b′ for this round: the given loads in round one, otherwise
        // recomputed from the rewired z plus earlier-block credits
        let mut bp: Vec<f64> = if first_round {
            b.iter().map(|v| v.to_f64_lossy()).collect()
        } else {
            let mut bp = vec![0.0f64; n];
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                let (u, v) = (u as usize, v as usize);
                if alive[u] && alive[v] {
                    bp[u] += z[2 * e].to_f64_lossy();
                    bp[v] += z[2 * e + 1].to_f64_lossy();
                }
            }
            for u in 0..n {
                bp[u] += bonus[u] as f64;
            }
            bp
        };
        first_round = false;

        let mut in_round = alive.clone();
        let mut queue: BinaryHeap<Reverse<(PeelKey, usize)>> = BinaryHeap::new();
        for u in 0..n {
            if in_round[u] {
                queue.push(Reverse((PeelKey(bp[u]), u)));
            }
        }
        // exact integer edge count of the current suffix, including
        // credits toward earlier blocks
        let mut suffix_edges: u64 = bonus
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(&b, _)| b)
            .sum();
        for &(u, v) in g.edges() {
            if alive[u as usize] && alive[v as usize] {
                suffix_edges += 1;
            }
        }
        let mut suffix_size = remaining as u64;
        let mut peel_order = Vec::with_capacity(remaining);
        let mut best = DensityValue::new(suffix_edges, suffix_size);
        let mut best_removed = 0usize;

        while suffix_size > 0 {
            let u = loop {
                let Reverse((PeelKey(k), u)) = queue.pop().expect("round queue exhausted");
                if in_round[u] && bp[u] == k {
                    break u;
                }
            };
            in_round[u] = false;
            // drop u's credited edges and its edges into the suffix
            suffix_edges -= bonus[u];
            for &(e, slot) in g.incidences(u) {
                let v = g.endpoint(e as usize, 1 - slot);
                if alive[v] && in_round[v] {
                    suffix_edges -= 1;
                    bp[v] -= z[Graph::zindex(e as usize, 1 - slot)].to_f64_lossy();
                    queue.push(Reverse((PeelKey(bp[v]), v)));
                }
            }
            suffix_size -= 1;
            peel_order.push(u);
            if suffix_size > 0 {
                let d = DensityValue::new(suffix_edges, suffix_size);
                if d > best {
                    best = d;
                    best_removed = peel_order.len();
                }
            }
        }

        let members: Vec<usize> = peel_order[best_removed..].to_vec();
        for &u in &members {
            alive[u] = false;
        }
        remaining -= members.len();
        // reassign crossing edges wholly to the surviving endpoint
        for &u in &members {
            for &(e, slot) in g.incidences(u) {
                let v = g.endpoint(e as usize, 1 - slot);
                if alive[v] {
                    z[Graph::zindex(e as usize, slot)] = S::zero();
                    z[Graph::zindex(e as usize, 1 - slot)] = S::one();
                    bonus[v] += 1;
                }
            }
        }
        let mut members = members;
        members.sort_unstable();
        blocks.push(Block {
            members,
            density: best,
        });
    }

    Decomposition {
        blocks,
        algorithm: String::new(),
        eps: None,
        seed: None,
    }
}

/// Best-density prefix when vertices are ordered by decreasing load
/// (ties by id): the standard readout for benchmark trajectories.
pub fn best_density_from_loads<S: Scalar>(g: &Graph, b: &[S]) -> DensityValue {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&x, &y| b[y].partial_cmp(&b[x]).unwrap().then(x.cmp(&y)));
    let mut rank = vec![0usize; g.n()];
    for (i, &u) in order.iter().enumerate() {
        rank[u] = i;
    }
    let mut edges = 0u64;
    let mut best = DensityValue::new(0, 1);
    for (i, &u) in order.iter().enumerate() {
        for &(e, slot) in g.incidences(u) {
            if rank[g.endpoint(e as usize, 1 - slot)] < i {
                edges += 1;
            }
        }
        let d = DensityValue::new(edges, (i + 1) as u64);
        if d > best {
            best = d;
        }
    }
    best
}

/// Like [`best_density_from_loads`], but also returns the achieving
/// prefix as a vertex set.
pub fn best_set_from_loads<S: Scalar>(
    g: &Graph,
    b: &[S],
) -> (crate::graph::VertexSet, DensityValue) {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&x, &y| b[y].partial_cmp(&b[x]).unwrap().then(x.cmp(&y)));
    let mut rank = vec![0usize; g.n()];
    for (i, &u) in order.iter().enumerate() {
        rank[u] = i;
    }
    let mut edges = 0u64;
    let mut best = DensityValue::new(0, 1);
    let mut best_len = 1usize;
    for (i, &u) in order.iter().enumerate() {
        for &(e, slot) in g.incidences(u) {
            if rank[g.endpoint(e as usize, 1 - slot)] < i {
                edges += 1;
            }
        }
        let d = DensityValue::new(edges, (i + 1) as u64);
        if d > best {
            best = d;
            best_len = i + 1;
        }
    }
    let set = crate::graph::VertexSet::from_members(g.n(), order[..best_len].iter().copied());
    (set, best)
}

//! Accelerated saddle-point solver for the width-reduced dual: an
//! area-convex regularizer, Sherman's extragradient outer loop, an
//! alternating-minimization oracle with closed-form block steps, and
//! binary search over the load cap with primal recovery.

use crate::baselines::greedy_peel;
use crate::error::{Error, Result};
use crate::graph::{DensityValue, Graph, VertexSet};
use crate::mwu::{max_load, solve_weighted_lp};
use crate::primal::{charikar_sweep, construct_primal};
use crate::scalar::Scalar;
use crate::smax::smax_gradient;

/// Tunable knobs of the saddle-point solver.
#[derive(Debug, Clone, Copy)]
pub struct AcConfig {
    /// Outer-step constant: `T = ceil(c * ln m / eps)`.
    pub outer_constant: f64,
    /// Iteration cap of the alternating-minimization oracle.
    pub inner_cap: usize,
}

impl Default for AcConfig {
    fn default() -> Self {
        AcConfig {
            outer_constant: 50.0,
            inner_cap: 500,
        }
    }
}

/// A pair `(z, y)` with `z` in the capped box `C(D)` and `y` in the
/// edge simplex.
#[derive(Debug, Clone)]
pub struct SaddlePoint<S> {
    pub z: Vec<S>,
    pub y: Vec<S>,
}

/// Linear payoffs `(s, r)` fed to the minimization oracle.
#[derive(Debug, Clone)]
pub struct OracleInput<S> {
    pub s: Vec<S>,
    pub r: Vec<S>,
}

fn six_sqrt3<S: Scalar>() -> S {
    S::c(6.0 * 3.0f64.sqrt())
}

/// The area-convex regularizer
/// `6√3 (Σ_e y_e (z_eu² + z_ev²) + 6 y_e ln y_e − 2)`, with
/// `y ln y = 0` at `y = 0`. Always in `[−6√3(6 ln m + 2), 0]`.
pub fn phi<S: Scalar>(g: &Graph, z: &[S], y: &[S]) -> S {
    let mut total = S::zero();
    for e in 0..g.m() {
        let sq = z[2 * e] * z[2 * e] + z[2 * e + 1] * z[2 * e + 1];
        let ent = if y[e] > S::zero() {
            y[e] * y[e].ln()
        } else {
            S::zero()
        };
        total = total + y[e] * sq + S::c(6.0) * ent;
    }
    six_sqrt3::<S>() * (total - S::c(2.0))
}

/// Matrix-free application of the anti-symmetric operator:
/// `s_eu = y_e` per incidence, `r_e = −(z_eu + z_ev)` per edge.
pub fn apply_a<S: Scalar>(g: &Graph, z: &[S], y: &[S]) -> OracleInput<S> {
    let mut s = vec![S::zero(); 2 * g.m()];
    let mut r = vec![S::zero(); g.m()];
    for e in 0..g.m() {
        s[2 * e] = y[e];
        s[2 * e + 1] = y[e];
        r[e] = -(z[2 * e] + z[2 * e + 1]);
    }
    OracleInput { s, r }
}

/// `H(z, y) = φ(z, y) − ⟨z, s⟩ − ⟨y, r⟩`, the oracle's objective.
pub fn h_value<S: Scalar>(g: &Graph, z: &[S], y: &[S], input: &OracleInput<S>) -> S {
    let zs: S = z.iter().zip(&input.s).map(|(&a, &b)| a * b).sum();
    let yr: S = y.iter().zip(&input.r).map(|(&a, &b)| a * b).sum();
    phi(g, z, y) - zs - yr
}

/// Exact minimizer of `H(z, ·)` over the simplex: softmax of
/// `L_e = −(1/6)((z_eu² + z_ev²) − r_e/(6√3))`.
pub fn oracle_y_step<S: Scalar>(g: &Graph, z: &[S], r: &[S]) -> Vec<S> {
    let scale = six_sqrt3::<S>();
    let l: Vec<S> = (0..g.m())
        .map(|e| {
            let sq = z[2 * e] * z[2 * e] + z[2 * e + 1] * z[2 * e + 1];
            -(sq - r[e] / scale) / S::c(6.0)
        })
        .collect();
    smax_gradient(S::one(), &l).expect("nonempty edge set")
}

const Y_FLOOR: f64 = 1e-300;

/// Exact minimizer of `H(·, y)` over `C(D)`, vertex by vertex: each
/// incidence takes `clamp((s̃_eu − λ)/(2 y_e), 0, 1)` with `s̃ = s/(6√3)`
/// and the smallest `λ ≥ 0` bringing the vertex load under `D`.
pub fn oracle_z_step<S: Scalar>(g: &Graph, y: &[S], s: &[S], d: S) -> Vec<S> {
    let scale = six_sqrt3::<S>();
    let floor = S::c(Y_FLOOR);
    let mut z = vec![S::zero(); 2 * g.m()];
    let mut stilde: Vec<S> = Vec::new();
    let mut ye: Vec<S> = Vec::new();
    let mut breaks: Vec<S> = Vec::new();
    for u in 0..g.n() {
        let inc = g.incidences(u);
        stilde.clear();
        ye.clear();
        for &(e, _) in inc {
            stilde.push(s[Graph::zindex(e as usize, inc_slot(g, e as usize, u))] / scale);
            ye.push(y[e as usize].max(floor));
        }
        let clamp_sum = |lambda: S| -> S {
            stilde
                .iter()
                .zip(&ye)
                .map(|(&st, &w)| {
                    ((st - lambda) / (S::c(2.0) * w))
                        .max(S::zero())
                        .min(S::one())
                })
                .sum()
        };
        let lambda = if clamp_sum(S::zero()) <= d {
            S::zero()
        } else {
            // the load is piecewise linear and decreasing in λ between
            // the breakpoints where an incidence enters or leaves (0,1)
            breaks.clear();
            for (&st, &w) in stilde.iter().zip(&ye) {
                breaks.push(st);
                breaks.push(st - S::c(2.0) * w);
            }
            breaks.retain(|b| *b > S::zero());
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut lo = S::zero();
            let mut lo_sum = clamp_sum(lo);
            let mut lambda = S::zero();
            let mut found = false;
            for &b in breaks.iter() {
                let hi_sum = clamp_sum(b);
                if hi_sum <= d {
                    // linear interpolation inside [lo, b]
                    let t = if lo_sum > hi_sum {
                        (lo_sum - d) / (lo_sum - hi_sum)
                    } else {
                        S::zero()
                    };
                    lambda = lo + (b - lo) * t;
                    found = true;
                    break;
                }
                lo = b;
                lo_sum = hi_sum;
            }
            if !found {
                // past the last breakpoint every incidence is 0
                lambda = *breaks.last().unwrap_or(&S::zero());
            }
            lambda
        };
        for (i, &(e, slot)) in inc.iter().enumerate() {
            let v = ((stilde[i] - lambda) / (S::c(2.0) * ye[i]))
                .max(S::zero())
                .min(S::one());
            z[Graph::zindex(e as usize, slot)] = v;
        }
    }
    z
}

fn inc_slot(g: &Graph, e: usize, u: usize) -> u8 {
    if g.endpoint(e, 0) == u {
        0
    } else {
        1
    }
}

/// Output of [`approx_oracle`].
#[derive(Debug, Clone)]
pub struct OracleOutput<S> {
    pub point: SaddlePoint<S>,
    pub rounds: usize,
    /// Set when the iteration cap fired before the stopping rule.
    pub low_precision: bool,
}

/// Alternating minimization of `H` over `C(D) × Δ_m`, stopping when
/// the per-round decrease drops to `δ/12` (the 11/12 contraction makes
/// the remaining suboptimality at most 12× that) or at the cap.
pub fn approx_oracle<S: Scalar>(
    g: &Graph,
    input: &OracleInput<S>,
    d: S,
    delta: S,
    cfg: &AcConfig,
) -> OracleOutput<S> {
    assert!(delta > S::zero());
    let mut z = vec![S::zero(); 2 * g.m()];
    let mut y = oracle_y_step(g, &z, &input.r);
    z = oracle_z_step(g, &y, &input.s, d);
    let mut h = h_value(g, &z, &y, input);
    let threshold = delta / S::c(12.0);
    for round in 1..=cfg.inner_cap {
        let y_next = oracle_y_step(g, &z, &input.r);
        let z_next = oracle_z_step(g, &y_next, &input.s, d);
        let h_next = h_value(g, &z_next, &y_next, input);
        let decrease = h - h_next;
        y = y_next;
        z = z_next;
        h = h_next;
        if decrease <= threshold {
            return OracleOutput {
                point: SaddlePoint { z, y },
                rounds: round + 1,
                low_precision: false,
            };
        }
    }
    OracleOutput {
        point: SaddlePoint { z, y },
        rounds: cfg.inner_cap + 1,
        low_precision: true,
    }
}

/// Number of outer steps for accuracy `eps`.
pub fn sherman_rounds(m: usize, eps: f64, cfg: &AcConfig) -> usize {
    // the log is floored so single-edge graphs still get a real run
    ((cfg.outer_constant * (m.max(2) as f64).ln() / eps).ceil() as usize).max(1)
}

/// Sherman's extragradient loop `w ← w + Φ̃(Aw)`,
/// `Φ̃(a) = Φ(a + 2AΦ(a))`, started from `(z=0, y=uniform)`. Returns
/// the average of the extragradient outputs, which lies in `C(D) × Δ_m`.
pub fn sherman_solve<S: Scalar>(g: &Graph, d: S, eps: f64, cfg: &AcConfig) -> SaddlePoint<S> {
    let mut solver = ShermanSolver::new(g, d, eps, cfg);
    for _ in 0..solver.planned_rounds() {
        solver.round();
    }
    solver.average()
}

/// Round-by-round driver for the extragradient loop, for callers that
/// want to inspect the averaged iterate as it evolves.
pub struct ShermanSolver<'g, S> {
    g: &'g Graph,
    d: S,
    delta: S,
    cfg: AcConfig,
    planned: usize,
    wz: Vec<S>,
    wy: Vec<S>,
    sum_z: Vec<S>,
    sum_y: Vec<S>,
    rounds_done: usize,
}

impl<'g, S: Scalar> ShermanSolver<'g, S> {
    pub fn new(g: &'g Graph, d: S, eps: f64, cfg: &AcConfig) -> Self {
        let m = g.m();
        ShermanSolver {
            g,
            d,
            delta: S::c(eps / 2.0),
            cfg: *cfg,
            planned: sherman_rounds(m, eps, cfg),
            wz: vec![S::zero(); 2 * m],
            wy: vec![S::one() / S::from_usize(m).unwrap(); m],
            sum_z: vec![S::zero(); 2 * m],
            sum_y: vec![S::zero(); m],
            rounds_done: 0,
        }
    }

    /// The round budget implied by `eps` at construction.
    pub fn planned_rounds(&self) -> usize {
        self.planned
    }

    pub fn rounds_done(&self) -> usize {
        self.rounds_done
    }

    /// Runs one extragradient round.
    pub fn round(&mut self) {
        let g = self.g;
        let a = apply_a(g, &self.wz, &self.wy);
        let mid = approx_oracle(g, &a, self.d, self.delta, &self.cfg).point;
        let a_mid = apply_a(g, &mid.z, &mid.y);
        let shifted = OracleInput {
            s: a.s
                .iter()
                .zip(&a_mid.s)
                .map(|(&b, &e)| b + S::c(2.0) * e)
                .collect(),
            r: a.r
                .iter()
                .zip(&a_mid.r)
                .map(|(&b, &e)| b + S::c(2.0) * e)
                .collect(),
        };
        let step = approx_oracle(g, &shifted, self.d, self.delta, &self.cfg).point;
        for (acc, &v) in self.wz.iter_mut().zip(&step.z) {
            *acc = *acc + v;
        }
        for (acc, &v) in self.wy.iter_mut().zip(&step.y) {
            *acc = *acc + v;
        }
        for (acc, &v) in self.sum_z.iter_mut().zip(&step.z) {
            *acc = *acc + v;
        }
        for (acc, &v) in self.sum_y.iter_mut().zip(&step.y) {
            *acc = *acc + v;
        }
        self.rounds_done += 1;
    }

    /// Average of the extragradient outputs so far; lies in
    /// `C(D) × Δ_m` once at least one round has run.
    pub fn average(&self) -> SaddlePoint<S> {
        assert!(self.rounds_done > 0, "no rounds run yet");
        let t = S::from_usize(self.rounds_done).unwrap();
        SaddlePoint {
            z: self.sum_z.iter().map(|&v| v / t).collect(),
            y: self.sum_y.iter().map(|&v| v / t).collect(),
        }
    }
}

/// Exact saddle gap of a candidate pair on `C(D) × Δ_m`:
/// `sup_{z̄∈C(D)} Σ_e y_e (z̄_eu + z̄_ev) − min_e (z_eu + z_ev)`.
pub fn saddle_gap<S: Scalar>(g: &Graph, pt: &SaddlePoint<S>, d: S) -> S {
    let sup = best_response_fill(g, &pt.y, d);
    let inf = (0..g.m())
        .map(|e| pt.z[2 * e] + pt.z[2 * e + 1])
        .fold(S::infinity(), S::min);
    sup - inf
}

/// `max_{z̄∈C(D)} Σ_e y_e (z̄_eu + z̄_ev)`: per vertex, greedily fill
/// the largest-weight incidences up to total `D`.
pub fn best_response_fill<S: Scalar>(g: &Graph, y: &[S], d: S) -> S {
    let mut total = S::zero();
    let mut weights: Vec<S> = Vec::new();
    for u in 0..g.n() {
        weights.clear();
        weights.extend(g.incidences(u).iter().map(|&(e, _)| y[e as usize]));
        weights.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut budget = d;
        for &w in &weights {
            if budget <= S::zero() {
                break;
            }
            let take = budget.min(S::one());
            total = total + w * take;
            budget = budget - take;
        }
    }
    total
}

/// Feasibility dichotomy for a probe at cap `D`: the returned `z̄` has
/// every edge pair-sum at least `1 − eps`, or the returned `ȳ`
/// certifies that no `z ∈ C(D)` covers all edges.
pub fn classify_probe<S: Scalar>(g: &Graph, pt: &SaddlePoint<S>, eps: f64) -> bool {
    let min_pair = (0..g.m())
        .map(|e| pt.z[2 * e] + pt.z[2 * e + 1])
        .fold(S::infinity(), S::min);
    min_pair >= S::c(1.0 - eps)
}

/// Binary search over the load cap. Returns `(z̃, D̃)` where every edge
/// satisfies `z̃_eu + z̃_ev ≥ 1` exactly and `D̃` is the maximum load,
/// within a `(1 ± O(ε))` factor of the optimum.
pub fn solve_with_binary_search<S: Scalar>(
    g: &Graph,
    eps: f64,
    cfg: &AcConfig,
) -> Result<(Vec<S>, S)> {
    if !(0.0..1.0 / 6.0).contains(&eps) || eps == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eps must be in (0, 1/6), got {eps}"
        )));
    }
    let g0 = greedy_peel(g, None).best_density.value();
    if g0 <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut lo = S::c(g0);
    let mut hi = S::c(2.0 * g0);
    let mut feasible_z: Option<Vec<S>> = None;

    // the greedy bound guarantees OPT <= 2 g0, but keep a safety margin
    for _ in 0..4 {
        let pt = sherman_solve(g, hi, eps, cfg);
        if classify_probe(g, &pt, eps) {
            feasible_z = Some(pt.z);
            break;
        }
        lo = hi;
        hi = hi * S::c(2.0);
    }
    let mut feasible_z = feasible_z
        .ok_or_else(|| Error::Invariant("no feasible cap found above the greedy bracket".into()))?;

    while hi > lo * S::c(1.0 + eps / 2.0) {
        let mid = (lo + hi) / S::c(2.0);
        let pt = sherman_solve(g, mid, eps, cfg);
        if classify_probe(g, &pt, eps) {
            hi = mid;
            feasible_z = pt.z;
        } else {
            lo = mid;
        }
    }

    // rescale so every edge's pair sums to exactly 1
    for e in 0..g.m() {
        let sum = feasible_z[2 * e] + feasible_z[2 * e + 1];
        debug_assert!(sum > S::zero());
        feasible_z[2 * e] = feasible_z[2 * e] / sum;
        feasible_z[2 * e + 1] = feasible_z[2 * e + 1] / sum;
    }
    let d_tilde = max_load(g, &feasible_z);
    Ok((feasible_z, d_tilde))
}

/// Rounds an edge distribution from a saddle run at cap `Dbar` into a
/// vertex set: exact packing oracle, primal construction, sweep.
pub fn recover_primal_ac<S: Scalar>(
    g: &Graph,
    ybar: &[S],
    dbar: S,
) -> Result<(VertexSet, DensityValue)> {
    if dbar <= S::zero() {
        return Err(Error::InvalidParameter("cap must be positive".into()));
    }
    let (d, z) = solve_weighted_lp(g, ybar);
    let sol = construct_primal(g, ybar, &z, d)?;
    Ok(charikar_sweep(g, &sol.x))
}

/// End-to-end solver: binary search for `D̃`, a final saddle run at
/// `D̄ = D̃(1 − 2ε)`, and primal recovery from its averaged `ȳ`.
pub fn ac_densest<S: Scalar>(
    g: &Graph,
    eps: f64,
    cfg: &AcConfig,
) -> Result<(VertexSet, DensityValue, S)> {
    let (_, d_tilde) = solve_with_binary_search::<S>(g, eps, cfg)?;
    let dbar = d_tilde * S::c(1.0 - 2.0 * eps);
    let pt = sherman_solve(g, dbar, eps, cfg);
    let (set, density) = recover_primal_ac(g, &pt.y, dbar)?;
    Ok((set, density, d_tilde))
}

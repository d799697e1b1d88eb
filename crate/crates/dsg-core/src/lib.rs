//! Densest-subgraph solvers: multiplicative weights with exact oracle
//! rounding, an area-convexity accelerated saddle-point solver, dense
//! decompositions via random coordinate descent, and greedy baselines.
//!
//! Numerical routines are generic over the scalar type through
//! [`Scalar`]; the crate-root aliases fix `f64` for everyday use.

pub mod area_convexity;
pub mod baselines;
pub mod bruteforce;
pub mod decomposition;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod mwu;
pub mod primal;
pub mod scalar;
pub mod smax;

pub use baselines::{greedy_peel, greedy_pp, PeelTrace};
pub use decomposition::{fractional_peel, Block, Decomposition, PracticalSolver, RcdmSolver};
pub use error::{Error, Result};
pub use graph::{density, induced_edge_count, parse_edge_list, DensityValue, Graph, VertexSet};
pub use scalar::Scalar;

/// Default-precision MWU run record.
pub type MwuRun = mwu::MwuRun<f64>;
/// Default-precision primal solution.
pub type PrimalSolution = primal::PrimalSolution<f64>;
/// Default-precision saddle-point pair.
pub type SaddlePoint = area_convexity::SaddlePoint<f64>;
/// Default-precision practical accelerated-descent run.
pub type PracticalRun = decomposition::PracticalRun<f64>;

//! Scalar abstraction for the floating-point solvers.
//!
//! The solvers are generic over the working precision; the exact
//! oracles in [`crate::bruteforce`] use integer rationals instead.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the iterative solvers.
pub trait Scalar: Float + FromPrimitive + Sum + Debug + Display + Default + 'static {
    /// Lossy conversion from `f64`, used for constants and tolerances.
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("constant representable")
    }

    fn to_f64_lossy(self) -> f64;
}

impl Scalar for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

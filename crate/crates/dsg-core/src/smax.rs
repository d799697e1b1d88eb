//! Soft maximum (log-sum-exp) and its gradient, computed in log space.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `(1/eta) * ln Σ exp(eta * x_i)`, stabilized by subtracting the max.
pub fn smax<S: Scalar>(eta: S, x: &[S]) -> Result<S> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("smax of empty vector".into()));
    }
    if eta <= S::zero() {
        return Err(Error::InvalidParameter("smax needs eta > 0".into()));
    }
    let m = x.iter().copied().fold(S::neg_infinity(), S::max);
    let sum: S = x.iter().map(|&v| ((v - m) * eta).exp()).sum();
    Ok(m + sum.ln() / eta)
}

/// Gradient of [`smax`]: the softmax distribution `exp(eta x_i) / Σ_j exp(eta x_j)`.
pub fn smax_gradient<S: Scalar>(eta: S, x: &[S]) -> Result<Vec<S>> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("smax of empty vector".into()));
    }
    if eta <= S::zero() {
        return Err(Error::InvalidParameter("smax needs eta > 0".into()));
    }
    let m = x.iter().copied().fold(S::neg_infinity(), S::max);
    let mut g: Vec<S> = x.iter().map(|&v| ((v - m) * eta).exp()).collect();
    let total: S = g.iter().copied().sum();
    for v in &mut g {
        *v = *v / total;
    }
    Ok(g)
}

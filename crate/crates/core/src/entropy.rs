//! von Neumann entropy, quantum relative entropy and mutual information,
//! all in bits. Matrix logarithms go through the eigendecomposition.

use crate::density::{partial_trace, DensityOperator, Subsystem};
use crate::error::{Error, Result};

/// Eigenvalues below this are treated as zero inside logarithms.
pub const EIGEN_FLOOR: f64 = 1e-12;
/// Weight of the first argument on a null direction of the second that is
/// still counted as "no support".
pub const SUPPORT_TOL: f64 = 1e-10;

/// `-Σ λ log2 λ` over the spectrum, with `0 log 0 = 0`.
pub fn von_neumann(state: &DensityOperator) -> f64 {
    state
        .eigenvalues()
        .into_iter()
        .filter(|&l| l > EIGEN_FLOOR)
        .map(|l| -l * l.log2())
        .sum()
}

/// `tr[S1 (log2 S1 - log2 S2)]`, or `+∞` when the support of `S1` is not
/// contained in the support of `S2`.
pub fn relative_entropy(s1: &DensityOperator, s2: &DensityOperator) -> Result<f64> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy of dimensions {} and {}",
            s1.dim(),
            s2.dim()
        )));
    }
    let eig2 = s2.eig();
    let mut cross = 0.0;
    for (k, &lambda) in eig2.values.iter().enumerate() {
        let weight = s1.matrix().quadratic_form(&eig2.vector(k)).re;
        if lambda < EIGEN_FLOOR {
            if weight > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * lambda.log2();
    }
    Ok((-von_neumann(s1) - cross).max(0.0))
}

/// Both one-qubit marginals of a two-qubit state.
pub fn marginals(state: &DensityOperator) -> Result<(DensityOperator, DensityOperator)> {
    if state.dim() != 4 {
        return Err(Error::NotTwoQubit(state.dim()));
    }
    Ok((
        partial_trace(state, 2, 2, Subsystem::B)?,
        partial_trace(state, 2, 2, Subsystem::A)?,
    ))
}

/// `I(A:B) = S(A) + S(B) - S(AB)`.
pub fn mutual_information(state: &DensityOperator) -> Result<f64> {
    let (a, b) = marginals(state)?;
    Ok((von_neumann(&a) + von_neumann(&b) - von_neumann(state)).max(0.0))
}

/// `I(A:B)` as the relative entropy between the state and the product of
/// its marginals.
pub fn mutual_information_relative(state: &DensityOperator) -> Result<f64> {
    let (a, b) = marginals(state)?;
    relative_entropy(state, &a.tensor(&b))
}

//! Measurement bases, Shannon entropy of observables, mutual unbiasedness
//! and the entropic uncertainty relation.
//!
//! Logarithms are base 2 throughout.

use num_complex::Complex64;
use rand::Rng;

use crate::density::{DensityOperator, Observable};
use crate::error::{Error, Result};
use crate::linalg::{c64, inner, pauli_basis, ComplexMatrix};
use crate::states::haar_unitary;

/// Default tolerance on `|<x|y>|^2 - 1/d` for mutual unbiasedness.
pub const MUB_TOL: f64 = 1e-8;
/// Slack allowed when checking the uncertainty relation.
pub const UNCERTAINTY_SLACK: f64 = 1e-9;

/// An orthonormal basis of `C^d`.
#[derive(Debug, Clone)]
pub struct Basis {
    vectors: Vec<Vec<Complex64>>,
}

impl Basis {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "need {d} vectors of length {d}"
            )));
        }
        for i in 0..d {
            for j in 0..d {
                let expected = if i == j { 1.0 } else { 0.0 };
                let g = inner(&vectors[i], &vectors[j]);
                if (g - c64(expected, 0.0)).norm() > 1e-10 {
                    return Err(Error::NotOrthonormal(format!(
                        "<v{i}|v{j}> = {:.3e}{:+.3e}i",
                        g.re, g.im
                    )));
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(d: usize) -> Self {
        Self::from_columns(&ComplexMatrix::identity(d))
    }

    /// Columns of a unitary matrix.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::DimensionMismatch("basis matrix must be square".into()));
        }
        Self::new((0..u.cols()).map(|j| u.column(j)).collect())
    }

    /// Eigenbasis of an observable, ordered by descending eigenvalue.
    pub fn eigenbasis(x: &Observable) -> Self {
        Self::from_columns(x.eigenvectors())
    }

    fn from_columns(m: &ComplexMatrix) -> Self {
        Self {
            vectors: (0..m.cols()).map(|j| m.column(j)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

/// Haar-random basis of `C^d`.
pub fn random_basis<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Basis {
    Basis::from_columns(&haar_unitary(rng, d))
}

fn same_dim(d1: usize, d2: usize) -> Result<()> {
    if d1 != d2 {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {d1} and {d2} differ"
        )));
    }
    Ok(())
}

/// `p_k = <x_k|S|x_k>`.
pub fn outcome_probabilities(state: &DensityOperator, basis: &Basis) -> Result<Vec<f64>> {
    same_dim(state.dim(), basis.dim())?;
    let probs: Vec<f64> = basis
        .vectors
        .iter()
        .map(|v| state.matrix().quadratic_form(v).re)
        .collect();
    debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    Ok(probs
        .into_iter()
        .map(|p| if (-1e-12..0.0).contains(&p) { 0.0 } else { p })
        .collect())
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
pub fn shannon(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Shannon entropy of measuring `state` in `basis`.
pub fn shannon_entropy(state: &DensityOperator, basis: &Basis) -> Result<f64> {
    Ok(shannon(&outcome_probabilities(state, basis)?))
}

fn max_overlap(b1: &Basis, b2: &Basis) -> f64 {
    let mut best = 0.0f64;
    for x in &b1.vectors {
        for y in &b2.vectors {
            best = best.max(inner(x, y).norm_sqr());
        }
    }
    best
}

/// `-log2 max_{k,l} |<x_k|y_l>|^2`, in `[0, log2 d]`.
pub fn incompatibility(b1: &Basis, b2: &Basis) -> Result<f64> {
    same_dim(b1.dim(), b2.dim())?;
    // max overlap is at least 1/d, so this stays non-negative up to roundoff
    Ok((-max_overlap(b1, b2).log2()).max(0.0))
}

/// Every squared overlap equals `1/d` within `tol`.
pub fn is_mub(b1: &Basis, b2: &Basis, tol: f64) -> Result<bool> {
    same_dim(b1.dim(), b2.dim())?;
    let target = 1.0 / b1.dim() as f64;
    Ok(b1.vectors.iter().all(|x| {
        b2.vectors
            .iter()
            .all(|y| (inner(x, y).norm_sqr() - target).abs() <= tol)
    }))
}

/// The Pauli observables X, Y, Z: a complete set of three pairwise
/// complementary qubit observables.
pub fn pauli_triplet() -> [Observable; 3] {
    pauli_basis().map(|m| Observable::new(m).expect("Pauli matrices are Hermitian"))
}

/// Both sides of `H(B1) + H(B2) >= -log2 max |<x|y>|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl UncertaintyCheck {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }
}

pub fn uncertainty_check(state: &DensityOperator, b1: &Basis, b2: &Basis) -> Result<UncertaintyCheck> {
    let lhs = shannon_entropy(state, b1)? + shannon_entropy(state, b2)?;
    let rhs = incompatibility(b1, b2)?;
    Ok(UncertaintyCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - UNCERTAINTY_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_density, seeded_rng};
    use approx::assert_abs_diff_eq;

    fn ket0() -> DensityOperator {
        DensityOperator::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap()
    }

    fn bases() -> [Basis; 3] {
        pauli_triplet().map(|o| Basis::eigenbasis(&o))
    }

    #[test]
    fn probabilities() {
        let [x, _, z] = bases();
        let mixed = DensityOperator::maximally_mixed(2);
        let p = outcome_probabilities(&mixed, &z).unwrap();
        assert_abs_diff_eq!(p[0], 0.5);
        assert_abs_diff_eq!(p[1], 0.5);
        let p = outcome_probabilities(&ket0(), &x).unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-14);
        let p = outcome_probabilities(&ket0(), &z).unwrap();
        assert_eq!(p, vec![1.0, 0.0]);
        assert!(outcome_probabilities(&DensityOperator::maximally_mixed(4), &z).is_err());
    }

    #[test]
    fn entropies() {
        let [x, y, z] = bases();
        let mixed = DensityOperator::maximally_mixed(2);
        for b in [&x, &y, &z] {
            assert_abs_diff_eq!(shannon_entropy(&mixed, b).unwrap(), 1.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(shannon_entropy(&ket0(), &z).unwrap(), 0.0);
        assert_abs_diff_eq!(shannon_entropy(&ket0(), &x).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn incompatibility_examples() {
        let [x, y, z] = bases();
        assert_abs_diff_eq!(incompatibility(&z, &z).unwrap(), 0.0);
        assert_abs_diff_eq!(incompatibility(&z, &x).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(incompatibility(&y, &x).unwrap(), 1.0, epsilon = 1e-12);
        assert!(incompatibility(&z, &Basis::computational(3)).is_err());
    }

    #[test]
    fn mub_examples() {
        let [x, y, z] = bases();
        assert!(is_mub(&z, &x, MUB_TOL).unwrap());
        assert!(!is_mub(&z, &z, MUB_TOL).unwrap());
        assert!(is_mub(&z, &y, MUB_TOL).unwrap());
        assert!(is_mub(&x, &y, MUB_TOL).unwrap());
    }

    #[test]
    fn qutrit_fourier_basis_is_mub_with_computational() {
        let d = 3;
        let w = 2.0 * std::f64::consts::PI / d as f64;
        let f = ComplexMatrix::from_fn(d, d, |j, k| {
            Complex64::from_polar(1.0 / (d as f64).sqrt(), w * (j * k) as f64)
        });
        let fourier = Basis::from_unitary(&f).unwrap();
        let comp = Basis::computational(d);
        assert!(is_mub(&comp, &fourier, MUB_TOL).unwrap());
        assert_abs_diff_eq!(
            incompatibility(&comp, &fourier).unwrap(),
            (d as f64).log2(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn pauli_triplet_properties() {
        let triplet = pauli_triplet();
        assert_eq!(triplet.len(), 3);
        for o in &triplet {
            assert!(o.matrix().trace().norm() < 1e-15);
            let sq = o.matrix() * o.matrix();
            assert!(sq.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
            assert_eq!(o.eigenvalues().len(), 2);
            assert_abs_diff_eq!(o.eigenvalues()[0], 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn uncertainty_examples() {
        let [x, _, z] = bases();
        let c = uncertainty_check(&ket0(), &z, &x).unwrap();
        assert_abs_diff_eq!(c.lhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.rhs, 1.0, epsilon = 1e-12);
        assert!(c.holds);
        let c = uncertainty_check(&DensityOperator::maximally_mixed(2), &z, &x).unwrap();
        assert_abs_diff_eq!(c.lhs, 2.0, epsilon = 1e-12);
        assert!(c.holds);
    }

    #[test]
    fn uncertainty_on_random_draws() {
        let mut rng = seeded_rng(99);
        for _ in 0..500 {
            let s = random_density(&mut rng, 2).unwrap();
            let b1 = random_basis(&mut rng, 2);
            let b2 = random_basis(&mut rng, 2);
            assert!(uncertainty_check(&s, &b1, &b2).unwrap().holds);
            assert_abs_diff_eq!(
                incompatibility(&b1, &b2).unwrap(),
                incompatibility(&b2, &b1).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn basis_rejects_non_orthonormal() {
        let v = vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ];
        assert!(matches!(Basis::new(v), Err(Error::NotOrthonormal(_))));
    }
}

//! Validated states and observables.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c64, hermitian_eig, ComplexMatrix, Eigendecomposition};

/// Tolerance for Hermiticity, unit trace and positivity of states.
pub const STATE_TOL: f64 = 1e-10;

/// A density operator: Hermitian, positive semidefinite, unit trace.
///
/// Validation never clamps. A matrix with an eigenvalue below `-STATE_TOL`
/// is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState(format!(
                "matrix is {}x{}, expected square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() < 2 {
            return Err(Error::InvalidState("dimension must be at least 2".into()));
        }
        if matrix
            .as_slice()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NotFinite);
        }
        let deviation = matrix.hermiticity_defect();
        if deviation > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |M - M^dagger| = {deviation:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {:.12}{:+.3e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let eig = hermitian_eig(&matrix)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (smallest eigenvalue {min:e})"
            )));
        }
        Ok(Self { matrix })
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let nrm = crate::linalg::norm(psi);
        if (nrm - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("state vector has norm {nrm}")));
        }
        Self::new(ComplexMatrix::outer(psi))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eig(&self) -> Eigendecomposition {
        hermitian_eig(&self.matrix).expect("validated state is Hermitian")
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eig().values
    }

    /// `tr(S X)` for an operator of matching dimension; the real part only.
    pub(crate) fn expect_raw(&self, op: &ComplexMatrix) -> Complex64 {
        self.matrix.trace_product(op)
    }

    /// Convex mixture `sum_k w_k S_k`.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::InvalidState("empty mixture".into()));
        };
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, s) in parts {
            if s.dim() != first.dim() {
                return Err(Error::DimensionMismatch("mixture of unequal dimensions".into()));
            }
            acc = &acc + &s.matrix.scale_real(*w);
        }
        Self::new(acc)
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        DensityOperator {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// A Hermitian observable with its cached spectral decomposition.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: ComplexMatrix,
    eig: Eigendecomposition,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eig(&matrix)?;
        Ok(Self { matrix, eig })
    }

    /// The dichotomic qubit observable `v · (X, Y, Z)` for a unit 3-vector.
    pub fn from_bloch(v: [f64; 3]) -> Result<Self> {
        let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if len == 0.0 || !len.is_finite() {
            return Err(Error::InvalidOption("zero or non-finite Bloch direction".into()));
        }
        Self::new(crate::linalg::bloch_operator([
            v[0] / len,
            v[1] / len,
            v[2] / len,
        ]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eig.vectors
    }

    pub fn eigendecomposition(&self) -> &Eigendecomposition {
        &self.eig
    }

    /// Same eigenvectors, eigenvalues replaced by `f(value)`.
    pub fn map_spectrum(&self, mut f: impl FnMut(f64) -> f64) -> Observable {
        let values: Vec<f64> = self.eig.values.iter().map(|&x| f(x)).collect();
        let eig = Eigendecomposition {
            values,
            vectors: self.eig.vectors.clone(),
        };
        Observable {
            matrix: eig.reconstruct(),
            eig,
        }
    }
}

/// Which factor of a bipartite system an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

fn check_split(state: &DensityOperator, dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a * dim_b != state.dim() || dim_a == 0 || dim_b == 0 {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} does not factor as {dim_a} x {dim_b}",
            state.dim()
        )));
    }
    Ok(())
}

/// Traces out `traced` and returns the reduced state of the other factor.
pub fn partial_trace(
    state: &DensityOperator,
    dim_a: usize,
    dim_b: usize,
    traced: Subsystem,
) -> Result<DensityOperator> {
    check_split(state, dim_a, dim_b)?;
    let m = state.matrix();
    let out = match traced {
        Subsystem::B => ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Subsystem::A => ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
        }),
    };
    DensityOperator::new(out)
}

/// Partial transpose on subsystem B. The result is Hermitian with unit trace
/// but need not be positive, so it is returned as a bare matrix.
pub fn partial_transpose(state: &DensityOperator, dim_a: usize, dim_b: usize) -> Result<ComplexMatrix> {
    check_split(state, dim_a, dim_b)?;
    let m = state.matrix();
    Ok(ComplexMatrix::from_fn(state.dim(), state.dim(), |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        m[(i * dim_b + l, j * dim_b + k)]
    }))
}

/// Unitarity tolerance for local operations.
pub const UNITARY_TOL: f64 = 1e-10;

/// `(U ⊗ V) S (U ⊗ V)^dagger`.
pub fn apply_local_unitary(
    state: &DensityOperator,
    u: &ComplexMatrix,
    v: &ComplexMatrix,
) -> Result<DensityOperator> {
    for m in [u, v] {
        let deviation = m.unitarity_defect();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
    }
    check_split(state, u.rows(), v.rows())?;
    let w = u.kron(v);
    let out = &(&w * state.matrix()) * &w.adjoint();
    // Restore exact Hermiticity lost to rounding.
    let herm = ComplexMatrix::from_fn(out.rows(), out.cols(), |i, j| {
        0.5 * (out[(i, j)] + out[(j, i)].conj())
    });
    DensityOperator::new(herm)
}

/// `tr(S^2)`.
pub fn purity(state: &DensityOperator) -> f64 {
    let m = state.matrix();
    m.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Standard two-qubit basis vector `|ab>`.
pub fn basis_ket(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![c64(0.0, 0.0); dim];
    v[index] = c64(1.0, 0.0);
    v
}

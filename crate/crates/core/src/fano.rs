//! Fano (Bloch) decomposition of two-qubit states.
//!
//! The local operator basis is the Pauli triplet in the fixed order
//! (X, Y, Z) given by [`crate::linalg::pauli_basis`]. With this order the
//! Bell state `|Φ+>` has correlation tensor `diag(1, -1, 1)`.

use nalgebra::{Matrix3, Vector3};

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::linalg::{c64, pauli_basis, ComplexMatrix};

/// Coefficients with a larger imaginary part indicate an upstream bug.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Default threshold for counting a correlation coefficient as nonzero.
pub const CLASSICAL_TOL: f64 = 1e-8;

/// Local Bloch vectors `n`, `s` and correlation tensor `T` of a two-qubit
/// state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoDecomposition {
    pub n: Vector3<f64>,
    pub s: Vector3<f64>,
    pub t: Matrix3<f64>,
}

fn real_coefficient(z: num_complex::Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::NumericalInstability(format!(
            "{what} has imaginary residue {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

impl FanoDecomposition {
    pub fn zero() -> Self {
        Self {
            n: Vector3::zeros(),
            s: Vector3::zeros(),
            t: Matrix3::zeros(),
        }
    }

    /// `n_k = tr[S(Λ_k⊗I)]`, `s_l = tr[S(I⊗Λ_l)]`, `t_kl = tr[S(Λ_k⊗Λ_l)]`.
    pub fn decompose(state: &DensityOperator) -> Result<Self> {
        if state.dim() != 4 {
            return Err(Error::NotTwoQubit(state.dim()));
        }
        let paulis = pauli_basis();
        let id = ComplexMatrix::identity(2);
        let mut f = Self::zero();
        for k in 0..3 {
            f.n[k] = real_coefficient(state.expect_raw(&paulis[k].kron(&id)), "n")?;
            f.s[k] = real_coefficient(state.expect_raw(&id.kron(&paulis[k])), "s")?;
            for l in 0..3 {
                f.t[(k, l)] = real_coefficient(state.expect_raw(&paulis[k].kron(&paulis[l])), "t")?;
            }
        }
        Ok(f)
    }

    /// Evaluates `(I⊗I + Σ n_k Λ_k⊗I + Σ s_l I⊗Λ_l + Σ t_kl Λ_k⊗Λ_l)/4`.
    pub fn reconstruct(&self) -> Result<DensityOperator> {
        let paulis = pauli_basis();
        let id = ComplexMatrix::identity(2);
        let mut m = ComplexMatrix::identity(4);
        for k in 0..3 {
            m = &m + &paulis[k].kron(&id).scale_real(self.n[k]);
            m = &m + &id.kron(&paulis[k]).scale_real(self.s[k]);
            for l in 0..3 {
                m = &m + &paulis[k].kron(&paulis[l]).scale_real(self.t[(k, l)]);
            }
        }
        DensityOperator::new(m.scale(c64(0.25, 0.0))).map_err(|e| match e {
            Error::InvalidState(msg) => Error::NotPhysical(msg),
            other => other,
        })
    }

    /// `C = T - n s^T`.
    pub fn correlation_matrix(&self) -> Matrix3<f64> {
        self.t - self.n * self.s.transpose()
    }

    /// Both marginals maximally mixed within `tol`.
    pub fn has_mixed_marginals(&self, tol: f64) -> bool {
        self.n.norm() <= tol && self.s.norm() <= tol
    }

    /// Classicality test for a standard-form state: after rotating `T` to its
    /// singular-value form, exactly one coefficient exceeds `tol`.
    pub fn is_classical_standard_form(&self, tol: f64) -> Result<bool> {
        if !self.has_mixed_marginals(tol) {
            return Err(Error::NotStandardForm);
        }
        let sv = SortedSvd::new(&self.t);
        Ok(sv.values.iter().filter(|&&x| x > tol).count() == 1)
    }
}

/// Real 3x3 SVD with singular values sorted in descending order:
/// `M = U diag(values) V^T`.
#[derive(Debug, Clone, Copy)]
pub struct SortedSvd {
    pub u: Matrix3<f64>,
    pub values: [f64; 3],
    pub v: Matrix3<f64>,
}

impl SortedSvd {
    pub fn new(m: &Matrix3<f64>) -> Self {
        let svd = m.svd(true, true);
        let u = svd.u.expect("requested U");
        let v_t = svd.v_t.expect("requested V^T");
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
        let mut out = Self {
            u: Matrix3::zeros(),
            values: [0.0; 3],
            v: Matrix3::zeros(),
        };
        for (dst, &src) in order.iter().enumerate() {
            out.values[dst] = svd.singular_values[src];
            out.u.set_column(dst, &u.column(src));
            out.v.set_column(dst, &v_t.row(src).transpose());
        }
        out
    }

    pub fn spectral_norm(&self) -> f64 {
        self.values[0]
    }

    pub fn trace_norm(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn assert_mat_eq(a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) {
        assert!((a - b).abs().max() < tol, "{a} != {b}");
    }

    #[test]
    fn werner_coefficients() {
        for p in [0.0, 0.2, 1.0 / 3.0, 0.9] {
            let f = FanoDecomposition::decompose(&states::werner(p).unwrap()).unwrap();
            assert!(f.n.norm() < 1e-14 && f.s.norm() < 1e-14);
            assert_mat_eq(&f.t, &Matrix3::from_diagonal(&Vector3::new(p, -p, p)), 1e-14);
            assert_mat_eq(&f.correlation_matrix(), &f.t, 1e-14);
        }
    }

    #[test]
    fn maximally_mixed_is_zero() {
        let f = FanoDecomposition::decompose(&crate::density::DensityOperator::maximally_mixed(4)).unwrap();
        assert_eq!(f, FanoDecomposition::zero());
    }

    #[test]
    fn horodecki_coefficients() {
        let p = 0.3;
        let f = FanoDecomposition::decompose(&states::horodecki(p).unwrap()).unwrap();
        let q = 1.0 - p;
        assert!((f.n - Vector3::new(0.0, 0.0, q)).norm() < 1e-14);
        assert!((f.s - Vector3::new(0.0, 0.0, q)).norm() < 1e-14);
        assert_mat_eq(&f.t, &Matrix3::from_diagonal(&Vector3::new(p, -p, 1.0)), 1e-14);
        let c = Matrix3::from_diagonal(&Vector3::new(p, -p, 1.0 - q * q));
        assert_mat_eq(&f.correlation_matrix(), &c, 1e-14);
    }

    #[test]
    fn reconstruct_examples() {
        let zero = FanoDecomposition::zero().reconstruct().unwrap();
        assert!(
            zero.matrix()
                .max_abs_diff(crate::density::DensityOperator::maximally_mixed(4).matrix())
                < 1e-15
        );

        let phi = states::bell_phi();
        let back = FanoDecomposition::decompose(&phi).unwrap().reconstruct().unwrap();
        assert!(back.matrix().max_abs_diff(phi.matrix()) < 1e-14);

        let f = FanoDecomposition {
            n: Vector3::new(0.0, 0.0, 1.0),
            s: Vector3::new(0.0, 0.0, 1.0),
            t: Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, 1.0)),
        };
        let ket00 = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert!(f.reconstruct().unwrap().matrix().max_abs_diff(&ket00) < 1e-15);

        let bad = FanoDecomposition {
            t: Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, 1.0)),
            ..FanoDecomposition::zero()
        };
        assert!(matches!(bad.reconstruct(), Err(Error::NotPhysical(_))));
    }

    #[test]
    fn product_state_has_zero_c() {
        let mut rng = states::seeded_rng(2);
        for _ in 0..20 {
            let a = states::random_density(&mut rng, 2).unwrap();
            let b = states::random_density(&mut rng, 2).unwrap();
            let f = FanoDecomposition::decompose(&a.tensor(&b)).unwrap();
            assert!(f.correlation_matrix().abs().max() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_two_qubit() {
        let s = crate::density::DensityOperator::maximally_mixed(3);
        assert!(matches!(
            FanoDecomposition::decompose(&s),
            Err(Error::NotTwoQubit(3))
        ));
    }

    #[test]
    fn classical_standard_form_examples() {
        let w = FanoDecomposition::decompose(&states::werner(0.5).unwrap()).unwrap();
        assert!(!w.is_classical_standard_form(CLASSICAL_TOL).unwrap());
        let one =
            FanoDecomposition::decompose(&states::standard_form_state([0.7, 0.0, 0.0]).unwrap()).unwrap();
        assert!(one.is_classical_standard_form(CLASSICAL_TOL).unwrap());
        let mixed =
            FanoDecomposition::decompose(&crate::density::DensityOperator::maximally_mixed(4)).unwrap();
        assert!(!mixed.is_classical_standard_form(CLASSICAL_TOL).unwrap());
        let h = FanoDecomposition::decompose(&states::horodecki(0.5).unwrap()).unwrap();
        assert_eq!(
            h.is_classical_standard_form(CLASSICAL_TOL),
            Err(Error::NotStandardForm)
        );
    }

    #[test]
    fn sorted_svd_reconstructs() {
        let m = Matrix3::new(0.1, -0.4, 0.2, 0.3, 0.05, -0.7, 0.0, 0.2, 0.1);
        let svd = SortedSvd::new(&m);
        assert!(svd.values[0] >= svd.values[1] && svd.values[1] >= svd.values[2]);
        let back = svd.u * Matrix3::from_diagonal(&Vector3::from(svd.values)) * svd.v.transpose();
        assert_mat_eq(&back, &m, 1e-12);
        assert_abs_diff_eq!(svd.spectral_norm(), svd.values[0]);
    }
}

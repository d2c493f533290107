//! Moments of observables and the Pearson / Spearman correlation
//! coefficients of local observable pairs.
//!
//! Two independent routes compute the same PCC: [`pcc`] takes traces of
//! operators on the full Hilbert space, [`pcc_bloch`] uses the Bloch-vector
//! form `a^T C b / sqrt((1 - (a·n)^2)(1 - (b·s)^2))`.

use nalgebra::Vector3;

use crate::density::DensityOperator;
use crate::density::Observable;
use crate::error::{Error, Result};
use crate::fano::FanoDecomposition;
use crate::linalg::ComplexMatrix;

/// Variances at or below this make the PCC undefined.
pub const VARIANCE_EPS: f64 = 1e-12;
/// |PCC| in `(1, 1 + CLAMP_TOL]` is rounded to ±1; beyond that is an error.
pub const CLAMP_TOL: f64 = 1e-10;

fn check_dim(state: &DensityOperator, op: &ComplexMatrix) -> Result<()> {
    if op.rows() != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} on a state of dimension {}",
            op.rows(),
            state.dim()
        )));
    }
    Ok(())
}

fn real_trace(state: &DensityOperator, op: &ComplexMatrix) -> Result<f64> {
    check_dim(state, op)?;
    let z = state.expect_raw(op);
    if z.im.abs() > 1e-10 {
        return Err(Error::NumericalInstability(format!(
            "expectation has imaginary residue {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// `tr(S X)`.
pub fn expectation(state: &DensityOperator, x: &Observable) -> Result<f64> {
    real_trace(state, x.matrix())
}

/// `E(X^2) - E(X)^2`, with roundoff down to `-1e-12` clamped to zero.
pub fn variance(state: &DensityOperator, x: &Observable) -> Result<f64> {
    let m = x.matrix();
    let mean = real_trace(state, m)?;
    let second = real_trace(state, &(m * m))?;
    Ok(clamp_variance(second - mean * mean))
}

fn clamp_variance(v: f64) -> f64 {
    if (-1e-12..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn clamp_correlation(r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::NumericalInstability(format!(
            "correlation evaluated to {r}"
        )));
    }
    if r.abs() <= 1.0 {
        Ok(r)
    } else if r.abs() <= 1.0 + CLAMP_TOL {
        Ok(r.signum())
    } else {
        Err(Error::NumericalInstability(format!(
            "|correlation| = {} exceeds 1",
            r.abs()
        )))
    }
}

/// Covariance and both local variances of `A⊗I`, `I⊗B`.
pub fn local_moments(state: &DensityOperator, a: &Observable, b: &Observable) -> Result<(f64, f64, f64)> {
    let (da, db) = (a.dim(), b.dim());
    if da * db != state.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observables of dimensions {da} and {db} on a state of dimension {}",
            state.dim()
        )));
    }
    let ia = ComplexMatrix::identity(da);
    let ib = ComplexMatrix::identity(db);
    let am = a.matrix();
    let bm = b.matrix();
    let ea = real_trace(state, &am.kron(&ib))?;
    let eb = real_trace(state, &ia.kron(bm))?;
    let eab = real_trace(state, &am.kron(bm))?;
    let ea2 = real_trace(state, &(am * am).kron(&ib))?;
    let eb2 = real_trace(state, &ia.kron(&(bm * bm)))?;
    Ok((
        eab - ea * eb,
        clamp_variance(ea2 - ea * ea),
        clamp_variance(eb2 - eb * eb),
    ))
}

/// Pearson correlation coefficient of the local observables `A⊗I` and
/// `I⊗B` on a bipartite state.
pub fn pcc(state: &DensityOperator, a: &Observable, b: &Observable) -> Result<f64> {
    let (cov, var_a, var_b) = local_moments(state, a, b)?;
    if var_a <= VARIANCE_EPS || var_b <= VARIANCE_EPS {
        return Err(Error::UndefinedPcc(format!(
            "vanishing variance (V(A) = {var_a:e}, V(B) = {var_b:e})"
        )));
    }
    clamp_correlation(cov / (var_a * var_b).sqrt())
}

/// PCC of the dichotomic observables `a·Λ` and `b·Λ` from the Fano
/// coefficients. Directions are normalized internally.
pub fn pcc_bloch(f: &FanoDecomposition, a: &Vector3<f64>, b: &Vector3<f64>) -> Result<f64> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 || !na.is_finite() || !nb.is_finite() {
        return Err(Error::InvalidOption(
            "measurement direction must be a nonzero vector".into(),
        ));
    }
    let a = a / na;
    let b = b / nb;
    let c = f.correlation_matrix();
    let var_a = 1.0 - a.dot(&f.n).powi(2);
    let var_b = 1.0 - b.dot(&f.s).powi(2);
    if var_a <= VARIANCE_EPS || var_b <= VARIANCE_EPS {
        return Err(Error::UndefinedPcc(format!(
            "vanishing variance (V(A) = {var_a:e}, V(B) = {var_b:e})"
        )));
    }
    clamp_correlation(a.dot(&(c * b)) / (var_a * var_b).sqrt())
}

/// Ranks (1-based, ascending, ties averaged) of each value.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && (values[order[j]] - values[order[i]]).abs() < crate::linalg::DEGENERACY_GAP {
            j += 1;
        }
        // positions i..j share the average of ranks i+1..=j
        let avg = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

/// Spearman rank correlation: the PCC after replacing each observable's
/// eigenvalues by their ranks.
pub fn spearman(state: &DensityOperator, a: &Observable, b: &Observable) -> Result<f64> {
    let ra = rank_transform(a);
    let rb = rank_transform(b);
    pcc(state, &ra, &rb)
}

pub fn rank_transform(x: &Observable) -> Observable {
    let ranks = average_ranks(x.eigenvalues());
    let mut k = 0;
    x.map_spectrum(|_| {
        let r = ranks[k];
        k += 1;
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityOperator;
    use crate::linalg::{pauli_basis, pauli_x, pauli_z, ComplexMatrix};
    use crate::states;
    use approx::assert_abs_diff_eq;

    fn obs(m: ComplexMatrix) -> Observable {
        Observable::new(m).unwrap()
    }

    fn ket0() -> DensityOperator {
        DensityOperator::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap()
    }

    #[test]
    fn expectation_examples() {
        assert_abs_diff_eq!(expectation(&ket0(), &obs(pauli_z())).unwrap(), 1.0);
        let zz = obs(pauli_z().kron(&pauli_z()));
        assert_abs_diff_eq!(
            expectation(&states::bell_phi(), &zz).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        let mixed = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(expectation(&mixed, &obs(pauli_x())).unwrap(), 0.0);
        assert!(matches!(
            expectation(&states::bell_phi(), &obs(pauli_x())),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn variance_examples() {
        assert_abs_diff_eq!(variance(&ket0(), &obs(pauli_z())).unwrap(), 0.0);
        let mixed = DensityOperator::maximally_mixed(2);
        assert_abs_diff_eq!(variance(&mixed, &obs(pauli_z())).unwrap(), 1.0);
        assert_abs_diff_eq!(variance(&ket0(), &obs(pauli_x())).unwrap(), 1.0);
    }

    #[test]
    fn pcc_examples() {
        let z = obs(pauli_z());
        let perfect = states::classical_diag([[0.5, 0.0], [0.0, 0.5]]).unwrap();
        assert_abs_diff_eq!(pcc(&perfect, &z, &z).unwrap(), 1.0, epsilon = 1e-14);

        let h = states::horodecki(1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(pcc(&h, &z, &z).unwrap(), 1.0, epsilon = 1e-12);

        let w = states::werner(1.0 / 3.0).unwrap();
        let x = obs(pauli_x());
        assert_abs_diff_eq!(pcc(&w, &x, &x).unwrap(), 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn pcc_undefined_on_pure_product() {
        let z = obs(pauli_z());
        let s = states::horodecki(0.0).unwrap();
        assert!(matches!(pcc(&s, &z, &z), Err(Error::UndefinedPcc(_))));
        let f = FanoDecomposition::decompose(&s).unwrap();
        assert!(matches!(
            pcc_bloch(&f, &Vector3::z(), &Vector3::z()),
            Err(Error::UndefinedPcc(_))
        ));
    }

    #[test]
    fn pcc_bloch_examples() {
        let p = 0.42;
        let w = FanoDecomposition::decompose(&states::werner(p).unwrap()).unwrap();
        assert_abs_diff_eq!(
            pcc_bloch(&w, &Vector3::x(), &Vector3::x()).unwrap(),
            p,
            epsilon = 1e-14
        );
        let h = FanoDecomposition::decompose(&states::horodecki(p).unwrap()).unwrap();
        assert_abs_diff_eq!(
            pcc_bloch(&h, &Vector3::z(), &Vector3::z()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let prod = DensityOperator::maximally_mixed(2)
            .tensor(&DensityOperator::new(ComplexMatrix::from_real_diagonal(&[0.8, 0.2])).unwrap());
        let f = FanoDecomposition::decompose(&prod).unwrap();
        let a = Vector3::new(0.3, -0.2, 0.9);
        let b = Vector3::new(-0.5, 0.1, 0.4);
        assert_abs_diff_eq!(pcc_bloch(&f, &a, &b).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn spearman_examples() {
        let w = states::werner(0.6).unwrap();
        let [x, _, z] = pauli_basis().map(obs);
        assert_abs_diff_eq!(
            spearman(&w, &x, &z).unwrap(),
            pcc(&w, &x, &z).unwrap(),
            epsilon = 1e-12
        );
        // Eigenvalues (5, -1) rank to (2, 1): same ordering as Z.
        let skewed = obs(ComplexMatrix::from_real_diagonal(&[5.0, -1.0]));
        assert_abs_diff_eq!(
            spearman(&w, &skewed, &z).unwrap().abs(),
            pcc(&w, &z, &z).unwrap().abs(),
            epsilon = 1e-12
        );
        let mixed = DensityOperator::maximally_mixed(4);
        assert_abs_diff_eq!(spearman(&mixed, &z, &z).unwrap(), 0.0);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
        assert_eq!(average_ranks(&[1.0, 1.0, 0.0, 5.0]), vec![2.5, 2.5, 1.0, 4.0]);
    }

    #[test]
    fn pcc_on_qutrit_pair() {
        let s = DensityOperator::maximally_mixed(9);
        let a = obs(ComplexMatrix::from_real_diagonal(&[1.0, 0.0, -1.0]));
        assert_abs_diff_eq!(pcc(&s, &a, &a).unwrap(), 0.0);
    }
}

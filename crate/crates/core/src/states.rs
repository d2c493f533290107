//! Named two-qubit state families and seeded random generators.
//!
//! All randomness flows through a caller-owned [`StateRng`] (ChaCha8 seeded
//! from a `u64`), so every fixture is reproducible from its seed.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::density::{apply_local_unitary, DensityOperator};
use crate::error::{Error, Result};
use crate::linalg::{c64, modified_gram_schmidt, pauli_basis, ComplexMatrix};

/// The generator used for every random fixture in the crate.
pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::OutOfRange {
            name,
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// `|φ><φ|` with `|φ> = (|00> + |11>)/√2`.
pub fn bell_phi() -> DensityOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = [c64(h, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(h, 0.0)];
    DensityOperator::new(ComplexMatrix::outer(&psi)).expect("Bell state is valid")
}

/// `p Φ + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<DensityOperator> {
    check_probability("p", p)?;
    let phi = bell_phi();
    let m = &phi.matrix().scale_real(p) + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    DensityOperator::new(m)
}

/// `p Φ + (1 - p) |00><00|`.
pub fn horodecki(p: f64) -> Result<DensityOperator> {
    check_probability("p", p)?;
    let phi = bell_phi();
    let mut m = phi.matrix().scale_real(p);
    m[(0, 0)] += c64(1.0 - p, 0.0);
    DensityOperator::new(m)
}

/// `Σ p_kl |k><k| ⊗ |l><l|` in the computational basis.
pub fn classical_diag(table: [[f64; 2]; 2]) -> Result<DensityOperator> {
    let flat = [table[0][0], table[0][1], table[1][0], table[1][1]];
    if let Some(bad) = flat.iter().find(|&&x| !x.is_finite() || x < 0.0) {
        return Err(Error::NotAProbabilityTable(format!(
            "entry {bad} is negative or not finite"
        )));
    }
    let total: f64 = flat.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotAProbabilityTable(format!("entries sum to {total}")));
    }
    DensityOperator::new(ComplexMatrix::from_real_diagonal(&flat))
}

/// Bell-diagonal state `(I⊗I + Σ t_k Λ_k⊗Λ_k)/4`.
///
/// Positivity is checked by the eigensolver; a `t` outside the physical
/// tetrahedron is reported as `NotPhysical`.
pub fn standard_form_state(t: [f64; 3]) -> Result<DensityOperator> {
    let paulis = pauli_basis();
    let mut m = ComplexMatrix::identity(4);
    for (tk, p) in t.iter().zip(&paulis) {
        m = &m + &p.kron(p).scale_real(*tk);
    }
    DensityOperator::new(m.scale_real(0.25)).map_err(|e| match e {
        Error::InvalidState(msg) => Error::NotPhysical(format!("t = {t:?}: {msg}")),
        other => other,
    })
}

/// Weights of the four Bell projectors (Φ+, Φ-, Ψ+, Ψ-) in a Bell-diagonal
/// state with correlation coefficients `t`.
pub fn bell_diagonal_weights(t: [f64; 3]) -> [f64; 4] {
    let [t1, t2, t3] = t;
    [
        (1.0 + t1 - t2 + t3) / 4.0,
        (1.0 - t1 + t2 + t3) / 4.0,
        (1.0 + t1 + t2 - t3) / 4.0,
        (1.0 - t1 - t2 - t3) / 4.0,
    ]
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng))
}

/// `G G^dagger / tr(G G^dagger)` with an i.i.d. complex Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<DensityOperator> {
    if dim < 2 {
        return Err(Error::InvalidState("dimension must be at least 2".into()));
    }
    let g = ginibre(rng, dim);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let m = w.scale_real(1.0 / tr);
    let herm = ComplexMatrix::from_fn(dim, dim, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    DensityOperator::new(herm)
}

/// Haar-random unitary: QR of a Ginibre matrix with the diagonal of R made
/// positive (Gram-Schmidt produces that convention directly).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| g.column(j)).collect();
    modified_gram_schmidt(&mut cols);
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Dirichlet(1, ..., 1) weights.
pub fn uniform_simplex<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// `Σ p_i ρ_i ⊗ σ_i` with `k` random single-qubit factors.
pub fn random_separable<R: Rng + ?Sized>(rng: &mut R, terms: usize) -> Result<DensityOperator> {
    if terms == 0 {
        return Err(Error::InvalidOption(
            "a separable mixture needs at least one term".into(),
        ));
    }
    let weights = uniform_simplex(rng, terms);
    let mut acc = ComplexMatrix::zeros(4, 4);
    for w in weights {
        let rho = random_density(rng, 2)?;
        let sigma = random_density(rng, 2)?;
        acc = &acc + &rho.matrix().kron(sigma.matrix()).scale_real(w);
    }
    let herm = ComplexMatrix::from_fn(4, 4, |i, j| 0.5 * (acc[(i, j)] + acc[(j, i)].conj()));
    DensityOperator::new(herm)
}

/// A random probability table, Dirichlet-uniform over the four cells.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 2]; 2] {
    let w = uniform_simplex(rng, 4);
    [[w[0], w[1]], [w[2], w[3]]]
}

/// Classically correlated state: a random diagonal state conjugated by
/// independent Haar unitaries on each side.
pub fn random_classical<R: Rng + ?Sized>(rng: &mut R) -> Result<DensityOperator> {
    let table = random_table(rng);
    let core = classical_diag(table)?;
    let u = haar_unitary(rng, 2);
    let v = haar_unitary(rng, 2);
    apply_local_unitary(&core, &u, &v)
}

/// Random physical Bell-diagonal state with exactly `nonzero` non-vanishing
/// coefficients (chosen positions, uniform in the admissible region).
pub fn random_standard_form<R: Rng + ?Sized>(
    rng: &mut R,
    nonzero: usize,
) -> Result<([f64; 3], DensityOperator)> {
    if nonzero > 3 {
        return Err(Error::InvalidOption(format!(
            "{nonzero} nonzero coefficients requested"
        )));
    }
    let mut slots = [0usize, 1, 2];
    for i in (1..3).rev() {
        let j = rng.random_range(0..=i);
        slots.swap(i, j);
    }
    loop {
        let mut t = [0.0; 3];
        for &k in &slots[..nonzero] {
            t[k] = rng.random_range(-1.0..1.0);
        }
        if bell_diagonal_weights(t).iter().all(|&w| w >= 1e-9) {
            let state = standard_form_state(t)?;
            return Ok((t, state));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{partial_transpose, purity};
    use crate::linalg::hermitian_eigenvalues;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bell_entries() {
        let phi = bell_phi();
        assert_abs_diff_eq!(phi.matrix()[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.matrix()[(0, 3)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&phi), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn werner_endpoints_and_spectrum() {
        assert!(
            werner(0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(DensityOperator::maximally_mixed(4).matrix())
                < 1e-15
        );
        assert!(werner(1.0).unwrap().matrix().max_abs_diff(bell_phi().matrix()) < 1e-15);
        let vals = werner(1.0 / 3.0).unwrap().eigenvalues();
        let expected = [0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0];
        for (v, e) in vals.iter().zip(expected) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-12);
        }
        assert!(matches!(werner(1.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(werner(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn horodecki_endpoints() {
        assert!(horodecki(1.0).unwrap().matrix().max_abs_diff(bell_phi().matrix()) < 1e-15);
        let h0 = horodecki(0.0).unwrap();
        assert!(
            h0.matrix()
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]))
                < 1e-15
        );
        assert!(horodecki(2.0).is_err());
    }

    #[test]
    fn families_valid_on_grid() {
        for i in 0..=100 {
            let p = i as f64 / 100.0;
            werner(p).unwrap();
            horodecki(p).unwrap();
        }
    }

    #[test]
    fn classical_diag_examples() {
        let s = classical_diag([[0.5, 0.0], [0.0, 0.5]]).unwrap();
        assert_eq!(
            s.matrix(),
            &ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5])
        );
        let s = classical_diag([[0.25, 0.25], [0.25, 0.25]]).unwrap();
        assert!(
            s.matrix()
                .max_abs_diff(DensityOperator::maximally_mixed(4).matrix())
                < 1e-15
        );
        let s = classical_diag([[1.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(s.matrix()[(0, 0)].re, 1.0);
        assert!(matches!(
            classical_diag([[0.6, 0.6], [0.0, -0.2]]),
            Err(Error::NotAProbabilityTable(_))
        ));
        assert!(matches!(
            classical_diag([[0.6, 0.6], [0.0, 0.0]]),
            Err(Error::NotAProbabilityTable(_))
        ));
    }

    #[test]
    fn standard_form_examples() {
        let s = standard_form_state([0.0; 3]).unwrap();
        assert!(
            s.matrix()
                .max_abs_diff(DensityOperator::maximally_mixed(4).matrix())
                < 1e-15
        );
        let s = standard_form_state([1.0, -1.0, 1.0]).unwrap();
        assert!(s.matrix().max_abs_diff(bell_phi().matrix()) < 1e-12);
        assert!(matches!(
            standard_form_state([1.0, 1.0, 1.0]),
            Err(Error::NotPhysical(_))
        ));
    }

    #[test]
    fn bell_weights_match_eigensolver() {
        let t = [0.3, -0.2, 0.1];
        let mut w = bell_diagonal_weights(t).to_vec();
        w.sort_by(|a, b| b.total_cmp(a));
        let vals = standard_form_state(t).unwrap().eigenvalues();
        for (a, b) in w.iter().zip(&vals) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn random_density_is_deterministic() {
        let a = random_density(&mut seeded_rng(7), 4).unwrap();
        let b = random_density(&mut seeded_rng(7), 4).unwrap();
        assert_eq!(a, b);
        assert_abs_diff_eq!(a.matrix().trace().re, 1.0, epsilon = 1e-12);
        let c = random_density(&mut seeded_rng(8), 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = seeded_rng(3);
        for _ in 0..50 {
            let u = haar_unitary(&mut rng, 2);
            assert!(u.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn separable_and_classical_are_ppt() {
        let mut rng = seeded_rng(11);
        for k in 1..6 {
            let s = random_separable(&mut rng, k).unwrap();
            let pt = partial_transpose(&s, 2, 2).unwrap();
            assert!(*hermitian_eigenvalues(&pt).unwrap().last().unwrap() > -1e-10);
            let c = random_classical(&mut rng).unwrap();
            let pt = partial_transpose(&c, 2, 2).unwrap();
            assert!(*hermitian_eigenvalues(&pt).unwrap().last().unwrap() > -1e-10);
        }
    }

    #[test]
    fn simplex_weights_sum_to_one() {
        let w = uniform_simplex(&mut seeded_rng(1), 9);
        assert_abs_diff_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert!(w.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn random_standard_form_has_requested_support() {
        let mut rng = seeded_rng(5);
        for k in 0..=3 {
            for _ in 0..20 {
                let (t, _) = random_standard_form(&mut rng, k).unwrap();
                assert_eq!(t.iter().filter(|x| **x != 0.0).count(), k);
            }
        }
    }
}

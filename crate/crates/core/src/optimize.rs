//! Derivative-free local search (Nelder-Mead) and the rotation charts used
//! to run it over SO(3) x SO(3).

use nalgebra::{Matrix3, Rotation3, UnitQuaternion, Vector3, Vector4};
use rand::Rng;
use rand_distr::StandardNormal;

/// Outcome of a single Nelder-Mead run (minimization).
#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Settings for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Stop once the spread of objective values across the simplex is below this.
    pub f_tol: f64,
    /// ... and every vertex is within this distance of the best one.
    pub x_tol: f64,
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            f_tol: 1e-10,
            x_tol: 1e-7,
            initial_step: 0.3,
        }
    }
}

/// Minimizes `f` starting from `x0` with an axis-aligned initial simplex.
/// Standard coefficients: reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        // order vertices, best first
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        values = idx.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let size = simplex[1..]
            .iter()
            .map(|v| dist(v, &simplex[0]))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && size <= opts.x_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = along(2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let c = along(0.5);
            let fc = f(&c);
            (c, fc)
        } else {
            let c = along(-0.5);
            let fc = f(&c);
            (c, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        // shrink towards the best vertex
        let best = simplex[0].clone();
        for i in 1..=n {
            for (x, b) in simplex[i].iter_mut().zip(&best) {
                *x = b + 0.5 * (*x - b);
            }
            values[i] = f(&simplex[i]);
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Rotation `exp([ω]×)` for a rotation vector `ω`.
pub fn exp_so3(omega: &Vector3<f64>) -> Matrix3<f64> {
    Rotation3::new(*omega).into_inner()
}

/// Haar-random rotation from a normalized 4D Gaussian quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let q = Vector4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    UnitQuaternion::from_quaternion(nalgebra::Quaternion::from_vector(q))
        .to_rotation_matrix()
        .into_inner()
}

/// Flips the last row if needed so the matrix has determinant +1.
pub fn to_proper(mut m: Matrix3<f64>) -> Matrix3<f64> {
    if m.determinant() < 0.0 {
        let row = -m.row(2);
        m.set_row(2, &row);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::seeded_rng;
    use approx::assert_abs_diff_eq;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            max_iters: 5000,
            f_tol: 1e-14,
            x_tol: 1e-9,
            initial_step: 0.5,
        };
        let m = nelder_mead(f, &[-1.2, 1.0], &opts);
        assert!(m.converged);
        assert_abs_diff_eq!(m.x[0], 1.0, epsilon = 1e-5);
        assert_abs_diff_eq!(m.x[1], 1.0, epsilon = 1e-5);
    }

    #[test]
    fn minimizes_abs_kink() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 0.25).abs()).sum::<f64>();
        let m = nelder_mead(f, &[1.0, -1.0, 0.0], &NelderMeadOptions::default());
        assert!(m.value < 1e-6);
    }

    #[test]
    fn reports_non_convergence() {
        let f = |x: &[f64]| x[0];
        let opts = NelderMeadOptions {
            max_iters: 10,
            ..Default::default()
        };
        assert!(!nelder_mead(f, &[0.0], &opts).converged);
    }

    #[test]
    fn rotations_are_orthogonal() {
        let mut rng = seeded_rng(4);
        for _ in 0..20 {
            let r = random_rotation(&mut rng);
            assert!((r * r.transpose() - Matrix3::identity()).abs().max() < 1e-12);
            assert_abs_diff_eq!(r.determinant(), 1.0, epsilon = 1e-12);
            let e = exp_so3(&Vector3::new(0.1, -2.0, 0.4));
            assert_abs_diff_eq!(e.determinant(), 1.0, epsilon = 1e-12);
        }
        let flipped = to_proper(Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0)));
        assert_abs_diff_eq!(flipped.determinant(), 1.0);
    }
}

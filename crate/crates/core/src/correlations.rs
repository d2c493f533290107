//! Total correlations as the maximal sum of absolute Pearson coefficients
//! over locally complementary observable triplets, with the closed forms,
//! norm bounds and classification rules available for two qubits.
//!
//! A triplet of pairwise complementary dichotomic qubit observables is the
//! same thing as an orthonormal frame of Bloch directions, so the search
//! space is SO(3) x SO(3). The search is a multistart Nelder-Mead run in
//! local rotation-vector charts, seeded with the Pauli frame, the singular
//! frames of `C = T - n s^T` and Haar-random frames.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::density::{partial_transpose, purity, DensityOperator, Observable};
use crate::error::{Error, Result};
use crate::fano::{FanoDecomposition, SortedSvd, CLASSICAL_TOL};
use crate::linalg::hermitian_eigenvalues;
use crate::optimize::{exp_so3, nelder_mead, random_rotation, to_proper, NelderMeadOptions};
use crate::statistics::{pcc, pcc_bloch, VARIANCE_EPS};

/// Number of pairwise complementary observables per qubit (a complete set
/// of mutually unbiased bases in dimension 2).
pub const QUBIT_MUB_COUNT: usize = 3;

/// Frames must be orthogonal to this tolerance.
pub const FRAME_TOL: f64 = 1e-10;

/// Pure-product detection threshold on purity, negativity and `C`.
const PURE_PRODUCT_TOL: f64 = 1e-10;

/// Extra Nelder-Mead rounds re-centred on the incumbent.
const POLISH_ROUNDS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerOptions {
    /// Random starts in addition to the Pauli and singular-vector seeds.
    pub restarts: usize,
    pub max_iters: usize,
    pub simplex_tol: f64,
    pub seed: u64,
    /// Tolerance on r-value comparisons during classification.
    pub tol: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 2000,
            simplex_tol: 1e-10,
            seed: 42,
            tol: 1e-6,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidOption("max_iters must be positive".into()));
        }
        if self.simplex_tol.is_nan() || self.simplex_tol <= 0.0 || self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidOption("tolerances must be positive".into()));
        }
        Ok(())
    }

    fn nelder_mead(&self, step: f64) -> NelderMeadOptions {
        NelderMeadOptions {
            max_iters: self.max_iters,
            f_tol: self.simplex_tol,
            x_tol: self.simplex_tol.sqrt(),
            initial_step: step,
        }
    }
}

/// Two orthonormal frames of Bloch directions. Row `i` of `a` (resp. `b`)
/// is the direction of the `i`-th observable on side A (resp. B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementFrame {
    a: Matrix3<f64>,
    b: Matrix3<f64>,
}

impl MeasurementFrame {
    pub fn new(a: Matrix3<f64>, b: Matrix3<f64>) -> Result<Self> {
        for (side, m) in [("A", &a), ("B", &b)] {
            let defect = (m * m.transpose() - Matrix3::identity()).abs().max();
            if defect > FRAME_TOL {
                return Err(Error::NotOrthonormal(format!(
                    "frame {side} deviates from orthogonality by {defect:e}"
                )));
            }
        }
        Ok(Self { a, b })
    }

    /// Pauli observables on both sides.
    pub fn pauli() -> Self {
        Self {
            a: Matrix3::identity(),
            b: Matrix3::identity(),
        }
    }

    pub fn side_a(&self) -> &Matrix3<f64> {
        &self.a
    }

    pub fn side_b(&self) -> &Matrix3<f64> {
        &self.b
    }

    pub fn direction_a(&self, i: usize) -> Vector3<f64> {
        self.a.row(i).transpose()
    }

    pub fn direction_b(&self, i: usize) -> Vector3<f64> {
        self.b.row(i).transpose()
    }

    /// The dichotomic observables `a_i·Λ` and `b_i·Λ`.
    pub fn observables(&self) -> ([Observable; 3], [Observable; 3]) {
        let obs = |v: Vector3<f64>| Observable::from_bloch([v.x, v.y, v.z]).expect("unit direction");
        (
            [0, 1, 2].map(|i| obs(self.direction_a(i))),
            [0, 1, 2].map(|i| obs(self.direction_b(i))),
        )
    }
}

/// Signed PCC of each observable pair of `frame`, from operator traces.
pub fn pair_pccs(state: &DensityOperator, frame: &MeasurementFrame) -> Result<[f64; 3]> {
    let (a, b) = frame.observables();
    Ok([
        pcc(state, &a[0], &b[0])?,
        pcc(state, &a[1], &b[1])?,
        pcc(state, &a[2], &b[2])?,
    ])
}

/// Signed PCC of each observable pair of `frame`, from the Bloch form.
pub fn pair_pccs_bloch(f: &FanoDecomposition, frame: &MeasurementFrame) -> Result<[f64; 3]> {
    let one = |i: usize| pcc_bloch(f, &frame.direction_a(i), &frame.direction_b(i));
    Ok([one(0)?, one(1)?, one(2)?])
}

/// `Σ_i |Cor(A_i, B_i)|` over the three pairs of `frame`.
pub fn pair_sum(state: &DensityOperator, frame: &MeasurementFrame) -> Result<f64> {
    Ok(pair_pccs(state, frame)?.iter().map(|r| r.abs()).sum())
}

/// PCC landscape of one state in Bloch form. All variances are known to be
/// positive, so evaluation needs no error handling.
#[derive(Debug, Clone, Copy)]
struct Landscape {
    n: Vector3<f64>,
    s: Vector3<f64>,
    c: Matrix3<f64>,
}

impl Landscape {
    fn new(f: &FanoDecomposition) -> Self {
        Self {
            n: f.n,
            s: f.s,
            c: f.correlation_matrix(),
        }
    }

    /// PCC of unit directions `a`, `b`.
    fn pair(&self, a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
        let var_a = (1.0 - a.dot(&self.n).powi(2)).max(VARIANCE_EPS);
        let var_b = (1.0 - b.dot(&self.s).powi(2)).max(VARIANCE_EPS);
        a.dot(&(self.c * b)) / (var_a * var_b).sqrt()
    }

    fn frame_sum(&self, fa: &Matrix3<f64>, fb: &Matrix3<f64>) -> f64 {
        (0..3)
            .map(|i| self.pair(&fa.row(i).transpose(), &fb.row(i).transpose()).abs())
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
struct FrameOptimum {
    value: f64,
    a: Matrix3<f64>,
    b: Matrix3<f64>,
    converged: bool,
}

fn rotate_frame(frame: &Matrix3<f64>, omega: &[f64]) -> Matrix3<f64> {
    frame * exp_so3(&Vector3::new(omega[0], omega[1], omega[2])).transpose()
}

/// Local maximization of the pair sum from one starting frame.
fn climb_frames(
    land: &Landscape,
    a0: Matrix3<f64>,
    b0: Matrix3<f64>,
    opts: &OptimizerOptions,
) -> FrameOptimum {
    let mut best = FrameOptimum {
        value: land.frame_sum(&a0, &b0),
        a: a0,
        b: b0,
        converged: false,
    };
    let mut step = 0.4;
    for _ in 0..=POLISH_ROUNDS {
        let (ba, bb) = (best.a, best.b);
        let objective = |x: &[f64]| -land.frame_sum(&rotate_frame(&ba, &x[..3]), &rotate_frame(&bb, &x[3..]));
        let m = nelder_mead(objective, &[0.0; 6], &opts.nelder_mead(step));
        let value = -m.value;
        let gain = value - best.value;
        if gain > 0.0 {
            best.value = value;
            best.a = rotate_frame(&ba, &m.x[..3]);
            best.b = rotate_frame(&bb, &m.x[3..]);
        }
        best.converged |= m.converged;
        if m.converged && gain <= opts.simplex_tol {
            break;
        }
        step = 0.05;
    }
    best
}

fn frame_starts(land: &Landscape, opts: &OptimizerOptions) -> Vec<(Matrix3<f64>, Matrix3<f64>)> {
    let svd = SortedSvd::new(&land.c);
    let mut starts = vec![
        (Matrix3::identity(), Matrix3::identity()),
        (to_proper(svd.u.transpose()), to_proper(svd.v.transpose())),
    ];
    let mut rng = crate::states::seeded_rng(opts.seed);
    for _ in 0..opts.restarts {
        let a = random_rotation(&mut rng);
        let b = random_rotation(&mut rng);
        starts.push((a, b));
    }
    starts
}

/// Best of all starts; ties go to the earliest start.
fn maximize_frames(land: &Landscape, opts: &OptimizerOptions) -> Result<FrameOptimum> {
    let mut best: Option<FrameOptimum> = None;
    let mut any_converged = false;
    for (a, b) in frame_starts(land, opts) {
        let cand = climb_frames(land, a, b, opts);
        any_converged |= cand.converged;
        if best.is_none_or(|b| cand.value > b.value) {
            best = Some(cand);
        }
    }
    if !any_converged {
        return Err(Error::NonConvergence {
            max_iters: opts.max_iters,
        });
    }
    Ok(best.expect("at least two starts"))
}

fn unit(x: &[f64]) -> Vector3<f64> {
    let v = Vector3::new(x[0], x[1], x[2]);
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        Vector3::z()
    }
}

/// Local maximization of a single |PCC| over two directions.
fn climb_pair(land: &Landscape, a0: Vector3<f64>, b0: Vector3<f64>, opts: &OptimizerOptions) -> (f64, bool) {
    let mut best = (land.pair(&a0, &b0).abs(), a0, b0);
    let mut converged = false;
    let mut step = 0.4;
    for _ in 0..=POLISH_ROUNDS {
        let x0 = [best.1.x, best.1.y, best.1.z, best.2.x, best.2.y, best.2.z];
        let objective = |x: &[f64]| -land.pair(&unit(&x[..3]), &unit(&x[3..])).abs();
        let m = nelder_mead(objective, &x0, &opts.nelder_mead(step));
        let gain = -m.value - best.0;
        if gain > 0.0 {
            best = (-m.value, unit(&m.x[..3]), unit(&m.x[3..]));
        }
        converged |= m.converged;
        if m.converged && gain <= opts.simplex_tol {
            break;
        }
        step = 0.05;
    }
    (best.0, converged)
}

fn maximize_pair(land: &Landscape, opts: &OptimizerOptions) -> Result<f64> {
    let svd = SortedSvd::new(&land.c);
    let mut starts: Vec<(Vector3<f64>, Vector3<f64>)> = (0..3)
        .map(|i| (svd.u.column(i).into_owned(), svd.v.column(i).into_owned()))
        .collect();
    let mut rng = crate::states::seeded_rng(opts.seed);
    for _ in 0..opts.restarts {
        let a = random_rotation(&mut rng);
        let b = random_rotation(&mut rng);
        starts.push((a.column(2).into_owned(), b.column(2).into_owned()));
    }
    let mut best = f64::NEG_INFINITY;
    let mut any_converged = false;
    for (a, b) in starts {
        let (v, conv) = climb_pair(land, a, b, opts);
        any_converged |= conv;
        best = best.max(v);
    }
    if !any_converged {
        return Err(Error::NonConvergence {
            max_iters: opts.max_iters,
        });
    }
    Ok(best)
}

/// `Σ max(0, -λ)` over the spectrum of the partial transpose.
pub fn negativity(state: &DensityOperator) -> Result<f64> {
    if state.dim() != 4 {
        return Err(Error::NotTwoQubit(state.dim()));
    }
    let pt = partial_transpose(state, 2, 2)?;
    Ok(hermitian_eigenvalues(&pt)?
        .into_iter()
        .filter(|&l| l < 0.0)
        .map(|l| -l)
        .sum())
}

/// Pure (rank one) and uncorrelated: the PCC of every pair is 0/0.
pub fn is_pure_product(state: &DensityOperator) -> Result<bool> {
    let f = FanoDecomposition::decompose(state)?;
    Ok(purity(state) > 1.0 - PURE_PRODUCT_TOL
        && negativity(state)? < PURE_PRODUCT_TOL
        && f.correlation_matrix().abs().max() < PURE_PRODUCT_TOL)
}

fn check_defined(state: &DensityOperator, f: &FanoDecomposition) -> Result<()> {
    if is_pure_product(state)? {
        return Err(Error::UndefinedPcc(
            "pure product state: every local observable has a deterministic outcome on at least one side"
                .into(),
        ));
    }
    let limit = 1.0 - PURE_PRODUCT_TOL;
    if f.n.norm() >= limit || f.s.norm() >= limit {
        return Err(Error::UndefinedPcc(format!(
            "pure marginal (|n| = {}, |s| = {}); some local observables have zero variance",
            f.n.norm(),
            f.s.norm()
        )));
    }
    Ok(())
}

/// Largest |PCC| over all single pairs of dichotomic observables.
pub fn max_single_pair(state: &DensityOperator, opts: &OptimizerOptions) -> Result<f64> {
    opts.validate()?;
    let f = FanoDecomposition::decompose(state)?;
    check_defined(state, &f)?;
    maximize_pair(&Landscape::new(&f), opts)
}

/// Closed-form total correlations of a classically correlated state, read off
/// in the frame that diagonalizes it: `|t33 - n3 s3| / sqrt((1 - n3^2)(1 - s3^2))`.
pub fn classical_r_closed_form(f: &FanoDecomposition) -> Result<f64> {
    let c = f.correlation_matrix();
    let svd = SortedSvd::new(&c);
    if svd.values[0] <= CLASSICAL_TOL {
        return Ok(0.0);
    }
    if svd.values[1] > CLASSICAL_TOL {
        return Err(Error::NotClassicalForm(format!(
            "correlation matrix has rank above one (singular values {:?})",
            svd.values
        )));
    }
    let u = svd.u.column(0).into_owned();
    let v = svd.v.column(0).into_owned();
    let n3 = u.dot(&f.n);
    let s3 = v.dot(&f.s);
    let off_axis = (f.n - u * n3).norm().max((f.s - v * s3).norm());
    if off_axis > CLASSICAL_TOL {
        return Err(Error::NotClassicalForm(format!(
            "local Bloch vectors are not aligned with the correlation axis (residual {off_axis:e})"
        )));
    }
    let denom = (1.0 - n3 * n3) * (1.0 - s3 * s3);
    if denom <= VARIANCE_EPS {
        return Err(Error::SingularMarginal {
            n_norm: f.n.norm(),
            s_norm: f.s.norm(),
        });
    }
    Ok(svd.values[0] / denom.sqrt())
}

/// Upper bounds from the singular values of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    /// `||C||_2 / sqrt((1 - |n|^2)(1 - |s|^2))`; bounds every single-pair |PCC|.
    pub spectral: f64,
    /// `||C||_tr / sqrt((1 - |n|^2)(1 - |s|^2))`; bounds the total for separable states.
    pub trace: f64,
}

pub fn bounds(f: &FanoDecomposition) -> Result<Bounds> {
    let limit = 1.0 - 1e-10;
    let (nn, ns) = (f.n.norm(), f.s.norm());
    if nn >= limit || ns >= limit {
        return Err(Error::SingularMarginal {
            n_norm: nn,
            s_norm: ns,
        });
    }
    let denom = ((1.0 - nn * nn) * (1.0 - ns * ns)).sqrt();
    let svd = SortedSvd::new(&f.correlation_matrix());
    Ok(Bounds {
        spectral: svd.spectral_norm() / denom,
        trace: svd.trace_norm() / denom,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Uncorrelated,
    ClassicalCompatible,
    QuantumCertified,
    Inconclusive,
    /// Pure product state: correlations are not defined.
    NotApplicable,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Uncorrelated => "uncorrelated",
            Classification::ClassicalCompatible => "classical-compatible",
            Classification::QuantumCertified => "quantum-certified",
            Classification::Inconclusive => "inconclusive",
            Classification::NotApplicable => "not-applicable",
        }
    }
}

/// Which rule produced a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// r below tolerance on a mixed state.
    NoCorrelations,
    /// r exceeds one: no classical state can do that.
    TotalAboveOne,
    /// Standard form with two or more nonzero coefficients.
    StandardFormSpread,
    /// Standard form with exactly one nonzero coefficient.
    StandardFormSingle,
    /// r equals the best single pair (necessary condition for classicality).
    Concentrated,
    NoRuleApplies,
    PureProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evidence {
    pub rule: Rule,
    pub r_value: Option<f64>,
    pub max_single_pair: Option<f64>,
    pub standard_form: bool,
    /// Nonzero singular values of `T`, counted only for standard-form states.
    pub nonzero_coefficients: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    /// Signed PCC of each pair in `frame`, from operator traces.
    pub per_pair: [f64; 3],
    pub sum_abs: f64,
    /// Best pair sum found by the search (a certified lower bound).
    pub r_value: f64,
    pub max_single_pair: f64,
    pub spectral_bound: f64,
    pub trace_bound: f64,
    pub frame: MeasurementFrame,
    pub classification: Classification,
    pub evidence: Evidence,
    pub fano: FanoDecomposition,
}

fn decide(
    r: f64,
    msp: f64,
    f: &FanoDecomposition,
    state_purity: f64,
    tol: f64,
) -> (Classification, Evidence) {
    let standard_form = f.has_mixed_marginals(CLASSICAL_TOL);
    let nonzero = standard_form.then(|| {
        SortedSvd::new(&f.t)
            .values
            .iter()
            .filter(|&&x| x > CLASSICAL_TOL)
            .count()
    });
    let rule = if r < tol && state_purity < 1.0 - PURE_PRODUCT_TOL {
        Rule::NoCorrelations
    } else if r > 1.0 + tol {
        Rule::TotalAboveOne
    } else if nonzero.is_some_and(|k| k >= 2) {
        Rule::StandardFormSpread
    } else if nonzero == Some(1) {
        Rule::StandardFormSingle
    } else if (r - msp).abs() <= tol {
        Rule::Concentrated
    } else {
        Rule::NoRuleApplies
    };
    let class = match rule {
        Rule::NoCorrelations => Classification::Uncorrelated,
        Rule::TotalAboveOne | Rule::StandardFormSpread => Classification::QuantumCertified,
        Rule::StandardFormSingle | Rule::Concentrated => Classification::ClassicalCompatible,
        Rule::NoRuleApplies => Classification::Inconclusive,
        Rule::PureProduct => Classification::NotApplicable,
    };
    (
        class,
        Evidence {
            rule,
            r_value: Some(r),
            max_single_pair: Some(msp),
            standard_form,
            nonzero_coefficients: nonzero,
        },
    )
}

/// Maximizes the pair sum over all locally complementary triplets and
/// collects the bounds and classification for the state.
pub fn total_correlations(state: &DensityOperator, opts: &OptimizerOptions) -> Result<CorrelationReport> {
    opts.validate()?;
    let f = FanoDecomposition::decompose(state)?;
    check_defined(state, &f)?;
    let land = Landscape::new(&f);

    let best = maximize_frames(&land, opts)?;
    let frame = MeasurementFrame::new(best.a, best.b)?;
    let per_pair = pair_pccs(state, &frame)?;
    let sum_abs = per_pair.iter().map(|r| r.abs()).sum();
    let msp = maximize_pair(&land, opts)?;
    let b = bounds(&f)?;
    let (classification, evidence) = decide(best.value, msp, &f, purity(state), opts.tol);

    Ok(CorrelationReport {
        per_pair,
        sum_abs,
        r_value: best.value,
        max_single_pair: msp,
        spectral_bound: b.spectral,
        trace_bound: b.trace,
        frame,
        classification,
        evidence,
        fano: f,
    })
}

/// Classification with its supporting evidence. Pure product states are
/// reported as [`Classification::NotApplicable`] rather than an error.
pub fn classify(state: &DensityOperator, opts: &OptimizerOptions) -> Result<(Classification, Evidence)> {
    let f = FanoDecomposition::decompose(state)?;
    if is_pure_product(state)? {
        return Ok((
            Classification::NotApplicable,
            Evidence {
                rule: Rule::PureProduct,
                r_value: None,
                max_single_pair: None,
                standard_form: f.has_mixed_marginals(CLASSICAL_TOL),
                nonzero_coefficients: None,
            },
        ));
    }
    let report = total_correlations(state, opts)?;
    Ok((report.classification, report.evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::apply_local_unitary;
    use crate::states::{self, haar_unitary, seeded_rng};
    use approx::assert_abs_diff_eq;

    fn quick() -> OptimizerOptions {
        OptimizerOptions {
            restarts: 8,
            ..Default::default()
        }
    }

    #[test]
    fn pauli_pair_sums() {
        let w = states::werner(1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(
            pair_sum(&w, &MeasurementFrame::pauli()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let h = states::horodecki(1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(
            pair_sum(&h, &MeasurementFrame::pauli()).unwrap(),
            5.0 / 3.0,
            epsilon = 1e-12
        );
        let mm = DensityOperator::maximally_mixed(4);
        let frame = MeasurementFrame::new(
            crate::optimize::random_rotation(&mut seeded_rng(1)),
            Matrix3::identity(),
        )
        .unwrap();
        assert_abs_diff_eq!(pair_sum(&mm, &frame).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn frame_rejects_non_orthogonal() {
        let bad = Matrix3::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert!(MeasurementFrame::new(bad, Matrix3::identity()).is_err());
    }

    #[test]
    fn frame_observables_are_pairwise_complementary() {
        use crate::complementarity::{is_mub, Basis, MUB_TOL};
        let r = crate::optimize::random_rotation(&mut seeded_rng(9));
        let frame = MeasurementFrame::new(r, Matrix3::identity()).unwrap();
        let (a, _) = frame.observables();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(is_mub(&Basis::eigenbasis(&a[i]), &Basis::eigenbasis(&a[j]), MUB_TOL).unwrap());
            }
        }
    }

    #[test]
    fn werner_closed_form() {
        for p in [0.1, 1.0 / 3.0, 0.75, 1.0] {
            let r = total_correlations(&states::werner(p).unwrap(), &quick()).unwrap();
            assert_abs_diff_eq!(r.r_value, 3.0 * p, epsilon = 1e-6);
            assert_abs_diff_eq!(r.max_single_pair, p, epsilon = 1e-6);
            assert!(r.sum_abs <= r.r_value + 1e-6);
        }
    }

    #[test]
    fn perfect_classical_concentrates_in_one_pair() {
        let s = states::classical_diag([[0.5, 0.0], [0.0, 0.5]]).unwrap();
        let r = total_correlations(&s, &quick()).unwrap();
        assert_abs_diff_eq!(r.r_value, 1.0, epsilon = 1e-6);
        // the optimum is degenerate; the Pauli frame reaches it with a single pair
        let pauli = pair_pccs(&s, &MeasurementFrame::pauli()).unwrap();
        assert_abs_diff_eq!(pauli[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pauli[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pauli[2], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.max_single_pair, 1.0, epsilon = 1e-6);
        assert_eq!(r.classification, Classification::ClassicalCompatible);
    }

    #[test]
    fn max_single_pair_examples() {
        let w = states::werner(0.6).unwrap();
        assert_abs_diff_eq!(max_single_pair(&w, &quick()).unwrap(), 0.6, epsilon = 1e-6);
        let mm = DensityOperator::maximally_mixed(4);
        assert_abs_diff_eq!(max_single_pair(&mm, &quick()).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let f = |n3: f64, s3: f64, t33: f64| FanoDecomposition {
            n: Vector3::new(0.0, 0.0, n3),
            s: Vector3::new(0.0, 0.0, s3),
            t: Matrix3::from_diagonal(&Vector3::new(0.0, 0.0, t33)),
        };
        assert_abs_diff_eq!(
            classical_r_closed_form(&f(0.0, 0.0, 1.0)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let fc = f(0.5, 0.5, 0.5);
        assert_abs_diff_eq!(classical_r_closed_form(&fc).unwrap(), 1.0 / 3.0, epsilon = 1e-12);
        // same value found by the search on the corresponding state
        let state = fc.reconstruct().unwrap();
        let r = total_correlations(&state, &quick()).unwrap();
        assert_abs_diff_eq!(r.r_value, 1.0 / 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(classical_r_closed_form(&f(0.4, -0.3, -0.12)).unwrap(), 0.0);

        let w = FanoDecomposition::decompose(&states::werner(0.5).unwrap()).unwrap();
        assert!(matches!(
            classical_r_closed_form(&w),
            Err(Error::NotClassicalForm(_))
        ));
    }

    #[test]
    fn bounds_examples() {
        let p = 0.4;
        let w = FanoDecomposition::decompose(&states::werner(p).unwrap()).unwrap();
        let b = bounds(&w).unwrap();
        assert_abs_diff_eq!(b.spectral, p, epsilon = 1e-12);
        assert_abs_diff_eq!(b.trace, 3.0 * p, epsilon = 1e-12);

        let h = FanoDecomposition::decompose(&states::horodecki(1.0 / 3.0).unwrap()).unwrap();
        let b = bounds(&h).unwrap();
        assert_abs_diff_eq!(b.trace, 2.2, epsilon = 1e-12);
        assert_abs_diff_eq!(b.spectral, 1.0, epsilon = 1e-12);

        let prod = DensityOperator::maximally_mixed(2).tensor(&DensityOperator::maximally_mixed(2));
        let b = bounds(&FanoDecomposition::decompose(&prod).unwrap()).unwrap();
        assert_eq!((b.spectral, b.trace), (0.0, 0.0));

        let pure = FanoDecomposition::decompose(&states::horodecki(0.0).unwrap()).unwrap();
        assert!(matches!(bounds(&pure), Err(Error::SingularMarginal { .. })));
    }

    #[test]
    fn classification_examples() {
        let opts = quick();
        let (c, e) = classify(&states::werner(0.5).unwrap(), &opts).unwrap();
        assert_eq!(c, Classification::QuantumCertified);
        assert_eq!(e.rule, Rule::TotalAboveOne);

        let (c, _) = classify(&states::classical_diag([[0.5, 0.0], [0.0, 0.5]]).unwrap(), &opts).unwrap();
        assert_eq!(c, Classification::ClassicalCompatible);

        let (c, e) = classify(&states::werner(0.2).unwrap(), &opts).unwrap();
        assert_eq!(c, Classification::QuantumCertified);
        assert_eq!(e.rule, Rule::StandardFormSpread);
        assert_eq!(e.nonzero_coefficients, Some(3));

        let (c, _) = classify(&DensityOperator::maximally_mixed(4), &opts).unwrap();
        assert_eq!(c, Classification::Uncorrelated);

        let (c, e) = classify(&states::horodecki(0.0).unwrap(), &opts).unwrap();
        assert_eq!(c, Classification::NotApplicable);
        assert_eq!(e.rule, Rule::PureProduct);
    }

    #[test]
    fn pure_product_is_undefined() {
        let err = total_correlations(&states::horodecki(0.0).unwrap(), &quick()).unwrap_err();
        assert!(matches!(err, Error::UndefinedPcc(_)));
    }

    #[test]
    fn negativity_examples() {
        assert_abs_diff_eq!(negativity(&states::bell_phi()).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            negativity(&states::werner(1.0 / 3.0).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-10
        );
        assert!(negativity(&states::horodecki(0.1).unwrap()).unwrap() > 0.0);
    }

    #[test]
    fn local_unitary_invariance_sample() {
        let mut rng = seeded_rng(77);
        let opts = quick();
        for _ in 0..5 {
            let s = states::random_density(&mut rng, 4).unwrap();
            let u = haar_unitary(&mut rng, 2);
            let v = haar_unitary(&mut rng, 2);
            let s2 = apply_local_unitary(&s, &u, &v).unwrap();
            let r1 = total_correlations(&s, &opts).unwrap().r_value;
            let r2 = total_correlations(&s2, &opts).unwrap().r_value;
            assert_abs_diff_eq!(r1, r2, epsilon = 1e-5);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let s = states::random_density(&mut seeded_rng(3), 4).unwrap();
        let a = total_correlations(&s, &quick()).unwrap();
        let b = total_correlations(&s, &quick()).unwrap();
        assert_eq!(a.r_value.to_bits(), b.r_value.to_bits());
        assert_eq!(a.frame, b.frame);
    }
}

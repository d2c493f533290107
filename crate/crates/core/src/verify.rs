//! Seeded property suites that check the closed forms, the uncertainty
//! relation and the norm bounds on random instances.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::complementarity::{pauli_triplet, random_basis, uncertainty_check, Basis};
use crate::correlations::{
    bounds, classical_r_closed_form, pair_pccs, total_correlations, Classification, MeasurementFrame,
    OptimizerOptions,
};
use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::fano::CLASSICAL_TOL;
use crate::linalg::{c64, ComplexMatrix};
use crate::state_spec::StateSpec;
use crate::states::{self, seeded_rng};

/// Agreement required between the optimizer and a classical closed form.
pub const CLASSICAL_AGREEMENT_TOL: f64 = 1e-5;
/// Agreement required for standard-form closed forms and for the bounds.
pub const CLOSED_FORM_TOL: f64 = 1e-6;
/// Allowed violation of the entropic uncertainty relation.
pub const UNCERTAINTY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Uncertainty,
    Bounds,
    All,
}

impl Suite {
    pub fn default_n(&self) -> usize {
        match self {
            Suite::Theorem1 | Suite::Theorem2 | Suite::Bounds => 500,
            Suite::Uncertainty => 10_000,
            Suite::All => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Uncertainty => "uncertainty",
            Suite::Bounds => "bounds",
            Suite::All => "all",
        }
    }

    fn members(&self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Theorem1,
                Suite::Theorem2,
                Suite::Uncertainty,
                Suite::Bounds,
            ],
            s => vec![*s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem1" => Ok(Suite::Theorem1),
            "theorem2" => Ok(Suite::Theorem2),
            "uncertainty" => Ok(Suite::Uncertainty),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidOption(format!(
                "unknown suite {other:?} (expected theorem1, theorem2, uncertainty, bounds or all)"
            ))),
        }
    }
}

/// Tally of one property over all instances of a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Largest residual seen, whether or not it failed.
    pub worst_residual: f64,
    /// First failing state.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<StateSpec>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            passed: 0,
            failed: 0,
            worst_residual: 0.0,
            counterexample: None,
        }
    }

    /// Records `residual` against `limit`; NaN counts as a failure.
    fn record(&mut self, residual: f64, limit: f64, state: &DensityOperator) {
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        self.worst_residual = self.worst_residual.max(residual);
        if residual <= limit {
            self.passed += 1;
        } else {
            self.fail(state);
        }
    }

    fn record_bool(&mut self, ok: bool, state: &DensityOperator) {
        if ok {
            self.passed += 1;
        } else {
            self.fail(state);
        }
    }

    fn fail(&mut self, state: &DensityOperator) {
        self.failed += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(StateSpec::explicit(state));
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (n = {}, seed = {})",
            self.suite.name(),
            self.n,
            self.seed
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<4} {:<36} passed {:>6}  failed {:>6}  worst residual {:.3e}",
                if c.ok() { "PASS" } else { "FAIL" },
                c.name,
                c.passed,
                c.failed,
                c.worst_residual
            )?;
            if let Some(spec) = &c.counterexample {
                writeln!(f, "       counterexample: {}", spec.to_json())?;
            }
        }
        Ok(())
    }
}

/// Runs `suite` on `n` instances (`None` for each suite's default).
/// [`Suite::All`] runs every suite with its own default size unless `n` is given.
pub fn run(suite: Suite, n: Option<usize>, seed: u64, opts: &OptimizerOptions) -> Result<Vec<SuiteReport>> {
    if n == Some(0) {
        return Err(Error::InvalidOption("n must be at least 1".into()));
    }
    opts.validate()?;
    suite
        .members()
        .into_iter()
        .map(|s| {
            let n = n.unwrap_or(s.default_n());
            let checks = match s {
                Suite::Theorem1 => theorem1(n, seed, opts)?,
                Suite::Theorem2 => theorem2(n, seed, opts)?,
                Suite::Uncertainty => uncertainty(n, seed)?,
                Suite::Bounds => bound_checks(n, seed, opts)?,
                Suite::All => unreachable!("expanded by members()"),
            };
            Ok(SuiteReport {
                suite: s,
                n,
                seed,
                checks,
            })
        })
        .collect()
}

/// Random classically correlated states: the optimum equals the closed form
/// and is reached by a single pair, and never exceeds one.
pub fn theorem1(n: usize, seed: u64, opts: &OptimizerOptions) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(seed);
    let mut r_vs_closed = CheckResult::new("r_value = closed form");
    let mut msp_vs_closed = CheckResult::new("max_single_pair = closed form");
    let mut r_vs_msp = CheckResult::new("r_value = max_single_pair");
    let mut at_most_one = CheckResult::new("r_value <= 1");
    for _ in 0..n {
        let state = states::random_classical(&mut rng)?;
        let report = total_correlations(&state, opts)?;
        let closed = classical_r_closed_form(&report.fano)?;
        r_vs_closed.record((report.r_value - closed).abs(), CLASSICAL_AGREEMENT_TOL, &state);
        msp_vs_closed.record(
            (report.max_single_pair - closed).abs(),
            CLASSICAL_AGREEMENT_TOL,
            &state,
        );
        r_vs_msp.record(
            (report.r_value - report.max_single_pair).abs(),
            CLASSICAL_AGREEMENT_TOL,
            &state,
        );
        at_most_one.record((report.r_value - 1.0).max(0.0), CLOSED_FORM_TOL, &state);
    }
    Ok(vec![r_vs_closed, msp_vs_closed, r_vs_msp, at_most_one])
}

/// Random standard-form states, cycling through 0..=3 nonzero coefficients.
pub fn theorem2(n: usize, seed: u64, opts: &OptimizerOptions) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(seed);
    let mut r_vs_sum = CheckResult::new("r_value = sum |t_i|");
    let mut pauli = CheckResult::new("Pauli frame attains sum |t_i|");
    let mut msp = CheckResult::new("max_single_pair = max |t_i|");
    let mut class = CheckResult::new("classical-compatible iff one t_i");
    let frame = MeasurementFrame::pauli();
    for i in 0..n {
        let (t, state) = states::random_standard_form(&mut rng, i % 4)?;
        let sum: f64 = t.iter().map(|x| x.abs()).sum();
        let max = t.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let report = total_correlations(&state, opts)?;
        r_vs_sum.record((report.r_value - sum).abs(), CLOSED_FORM_TOL, &state);
        let on_pauli: f64 = pair_pccs(&state, &frame)?.iter().map(|x| x.abs()).sum();
        pauli.record((on_pauli - sum).abs(), CLOSED_FORM_TOL, &state);
        msp.record((report.max_single_pair - max).abs(), CLOSED_FORM_TOL, &state);
        let single = t.iter().filter(|x| x.abs() > CLASSICAL_TOL).count() == 1;
        class.record_bool(
            (report.classification == Classification::ClassicalCompatible) == single,
            &state,
        );
    }
    Ok(vec![r_vs_sum, pauli, msp, class])
}

fn hadamard() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_vec(2, 2, vec![c64(h, 0.0), c64(h, 0.0), c64(h, 0.0), c64(-h, 0.0)])
        .expect("2x2 data")
}

/// Entropic uncertainty on random qubit states and bases, plus the equality
/// case: an eigenstate of one basis of a randomly rotated unbiased pair.
pub fn uncertainty(n: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(seed);
    let mut holds = CheckResult::new("H(B1) + H(B2) >= bound");
    let mut equality = CheckResult::new("equality on unbiased eigenstate");
    let mut paulis = CheckResult::new("Pauli eigenbases unbiased");
    let [x, y, z] = pauli_triplet().map(|o| Basis::eigenbasis(&o));
    for _ in 0..n {
        let state = states::random_density(&mut rng, 2)?;
        let b1 = random_basis(&mut rng, 2);
        let b2 = random_basis(&mut rng, 2);
        let check = uncertainty_check(&state, &b1, &b2)?;
        holds.record((-check.slack()).max(0.0), UNCERTAINTY_TOL, &state);

        let u = states::haar_unitary(&mut rng, 2);
        let c1 = Basis::from_unitary(&u)?;
        let c2 = Basis::from_unitary(&(&u * &hadamard()))?;
        let eigenstate = DensityOperator::pure(&c1.vectors()[0])?;
        let check = uncertainty_check(&eigenstate, &c1, &c2)?;
        equality.record(check.slack().abs(), UNCERTAINTY_TOL, &eigenstate);
    }
    let mixed = DensityOperator::maximally_mixed(2);
    for (a, b) in [(&x, &y), (&y, &z), (&z, &x)] {
        let check = uncertainty_check(&mixed, a, b)?;
        paulis.record((check.rhs - 1.0).abs(), UNCERTAINTY_TOL, &mixed);
    }
    Ok(vec![holds, equality, paulis])
}

/// Random separable states with one to four product terms.
pub fn bound_checks(n: usize, seed: u64, opts: &OptimizerOptions) -> Result<Vec<CheckResult>> {
    let mut rng = seeded_rng(seed);
    let mut trace = CheckResult::new("r_value <= trace bound");
    let mut spectral = CheckResult::new("max_single_pair <= spectral bound");
    let mut ordering = CheckResult::new("max_single_pair <= r_value");
    for i in 0..n {
        let state = states::random_separable(&mut rng, 1 + i % 4)?;
        let report = total_correlations(&state, opts)?;
        let b = bounds(&report.fano)?;
        trace.record((report.r_value - b.trace).max(0.0), CLOSED_FORM_TOL, &state);
        spectral.record(
            (report.max_single_pair - b.spectral).max(0.0),
            CLOSED_FORM_TOL,
            &state,
        );
        ordering.record(
            (report.max_single_pair - report.r_value).max(0.0),
            CLOSED_FORM_TOL,
            &state,
        );
    }
    Ok(vec![trace, spectral, ordering])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OptimizerOptions {
        OptimizerOptions {
            restarts: 8,
            ..Default::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Theorem1,
            Suite::Theorem2,
            Suite::Uncertainty,
            Suite::Bounds,
        ] {
            let reports = run(suite, Some(12), 7, &quick()).unwrap();
            assert_eq!(reports.len(), 1);
            assert!(reports[0].ok(), "{}", reports[0]);
        }
    }

    #[test]
    fn counterexample_is_recorded_once() {
        let mut c = CheckResult::new("x");
        let s = DensityOperator::maximally_mixed(2);
        c.record(1.0, 0.5, &s);
        c.record(2.0, 0.5, &s);
        c.record(f64::NAN, 0.5, &s);
        assert_eq!(c.failed, 3);
        assert_eq!(c.worst_residual, f64::INFINITY);
        assert!(c.counterexample.is_some());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Theorem1,
            Suite::Theorem2,
            Suite::Uncertainty,
            Suite::Bounds,
            Suite::All,
        ] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(run(Suite::Theorem1, Some(0), 1, &quick()).is_err());
    }
}

//! Single-state analysis and its versioned JSON rendering.

use nalgebra::{Matrix3, Vector3};
use serde_json::{json, Value};

use crate::correlations::{negativity, total_correlations, CorrelationReport, OptimizerOptions};
use crate::density::{purity, DensityOperator};
use crate::entropy::mutual_information;
use crate::error::Result;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits kept for every number in reports and CSV output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, in plain
/// decimal notation for moderate exponents and trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        let out = trim_zeros(&fixed);
        if out == "-0" {
            "0".into()
        } else {
            out
        }
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig(x))
    } else {
        Value::Null
    }
}

fn vec3(v: &Vector3<f64>) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

fn mat3(m: &Matrix3<f64>) -> Value {
    Value::Array(
        (0..3)
            .map(|i| Value::Array((0..3).map(|j| num(m[(i, j)])).collect()))
            .collect(),
    )
}

/// Everything reported for one state.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub correlations: CorrelationReport,
    pub mutual_information: f64,
    pub negativity: f64,
    pub purity: f64,
}

pub fn analyze(state: &DensityOperator, opts: &OptimizerOptions) -> Result<Analysis> {
    let correlations = total_correlations(state, opts)?;
    Ok(Analysis {
        correlations,
        mutual_information: mutual_information(state)?,
        negativity: negativity(state)?,
        purity: purity(state),
    })
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        let r = &self.correlations;
        let e = &r.evidence;
        json!({
            "schema": SCHEMA_VERSION,
            "r_value": num(r.r_value),
            "sum_abs": num(r.sum_abs),
            "per_pair": r.per_pair.iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "max_single_pair": num(r.max_single_pair),
            "spectral_bound": num(r.spectral_bound),
            "trace_bound": num(r.trace_bound),
            "frame": {
                "a": mat3(r.frame.side_a()),
                "b": mat3(r.frame.side_b()),
            },
            "classification": r.classification.as_str(),
            "evidence": {
                "rule": serde_json::to_value(e.rule).expect("rule serializes"),
                "standard_form": e.standard_form,
                "nonzero_coefficients": e.nonzero_coefficients,
            },
            "mutual_information": num(self.mutual_information),
            "negativity": num(self.negativity),
            "purity": num(self.purity),
            "fano": {
                "n": vec3(&r.fano.n),
                "s": vec3(&r.fano.s),
                "t": mat3(&r.fano.t),
                "c": mat3(&r.fano.correlation_matrix()),
            },
        })
    }
}

//! Browser bindings: a family sweep, a single-state report and a frame
//! explorer. Everything crosses the boundary as JSON text.

use nalgebra::Vector3;
use serde_json::json;
use wasm_bindgen::prelude::*;

use qcorr::correlations::{pair_pccs, MeasurementFrame};
use qcorr::optimize::exp_so3;
use qcorr::report::{analyze, round_sig};
use qcorr::state_spec::StateSpec;
use qcorr::sweep::{self, Family};
use qcorr::OptimizerOptions;

/// Fewer restarts than the CLI so the page stays responsive.
const DEMO_RESTARTS: usize = 8;

fn options() -> OptimizerOptions {
    OptimizerOptions {
        restarts: DEMO_RESTARTS,
        ..Default::default()
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Sweep rows for `family` ("werner" or "horodecki") as a JSON array.
#[wasm_bindgen]
pub fn sweep_family(family: &str, p_min: f64, p_max: f64, steps: usize) -> Result<String, String> {
    let family: Family = family.parse().map_err(err)?;
    let rows = sweep::sweep(family, p_min, p_max, steps, &options()).map_err(err)?;
    serde_json::to_string(&rows).map_err(err)
}

/// Full report for a StateSpec JSON document.
#[wasm_bindgen]
pub fn analyze_state(spec: &str) -> Result<String, String> {
    let state = StateSpec::from_json(spec)
        .and_then(|s| s.to_state())
        .map_err(err)?;
    let report = analyze(&state, &options()).map_err(err)?;
    Ok(report.to_json().to_string())
}

/// Pair PCCs in a frame given by two rotation vectors (`angles[0..3]` for
/// side A, `angles[3..6]` for side B) applied to the Pauli frame.
#[wasm_bindgen]
pub fn frame_pccs(spec: &str, angles: &[f64]) -> Result<String, String> {
    if angles.len() != 6 {
        return Err(format!("expected 6 rotation components, got {}", angles.len()));
    }
    let state = StateSpec::from_json(spec)
        .and_then(|s| s.to_state())
        .map_err(err)?;
    let a = exp_so3(&Vector3::new(angles[0], angles[1], angles[2])).transpose();
    let b = exp_so3(&Vector3::new(angles[3], angles[4], angles[5])).transpose();
    let frame = MeasurementFrame::new(a, b).map_err(err)?;
    let per_pair = pair_pccs(&state, &frame).map_err(err)?;
    let sum: f64 = per_pair.iter().map(|x| x.abs()).sum();
    let dirs = |m: &nalgebra::Matrix3<f64>| -> Vec<[f64; 3]> {
        (0..3)
            .map(|i| [round_sig(m[(i, 0)]), round_sig(m[(i, 1)]), round_sig(m[(i, 2)])])
            .collect()
    };
    Ok(json!({
        "per_pair": per_pair.map(round_sig),
        "sum_abs": round_sig(sum),
        "a": dirs(frame.side_a()),
        "b": dirs(frame.side_b()),
    })
    .to_string())
}

//! JSON description of a two-qubit (or general) state.
//!
//! Either a named family:
//!
//! ```json
//! {"family": "werner", "p": 0.3333333333}
//! {"family": "horodecki", "p": 0.5}
//! {"family": "bell"}
//! {"family": "classical_diag", "table": [[0.5, 0.0], [0.0, 0.5]]}
//! {"family": "standard_form", "t": [0.2, -0.2, 0.2]}
//! ```
//!
//! or an explicit matrix whose entries are `[re, im]` pairs:
//!
//! ```json
//! {"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};
use crate::states;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NamedState {
    Werner { p: f64 },
    Horodecki { p: f64 },
    Bell,
    ClassicalDiag { table: [[f64; 2]; 2] },
    StandardForm { t: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitState {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Named(NamedState),
    Explicit(ExplicitState),
}

impl StateSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("not valid JSON: {e}")))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let Some(obj) = value.as_object() else {
            return Err(Error::InvalidSpec("expected a JSON object".into()));
        };
        if obj.contains_key("family") {
            serde_json::from_value(value)
                .map(StateSpec::Named)
                .map_err(|e| Error::InvalidSpec(format!("named state: {e}")))
        } else if obj.contains_key("matrix") {
            serde_json::from_value(value)
                .map(StateSpec::Explicit)
                .map_err(|e| Error::InvalidSpec(format!("explicit state: {e}")))
        } else {
            Err(Error::InvalidSpec(
                "expected either a \"family\" or a \"matrix\" field".into(),
            ))
        }
    }

    /// Explicit form of an existing state, e.g. to print a counterexample.
    pub fn explicit(state: &DensityOperator) -> Self {
        let m = state.matrix();
        StateSpec::Explicit(ExplicitState {
            dim: state.dim(),
            matrix: (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        })
    }

    pub fn to_state(&self) -> Result<DensityOperator> {
        match self {
            StateSpec::Named(named) => match named {
                NamedState::Werner { p } => states::werner(*p),
                NamedState::Horodecki { p } => states::horodecki(*p),
                NamedState::Bell => Ok(states::bell_phi()),
                NamedState::ClassicalDiag { table } => states::classical_diag(*table),
                NamedState::StandardForm { t } => states::standard_form_state(*t),
            },
            StateSpec::Explicit(ex) => {
                if ex.matrix.len() != ex.dim || ex.matrix.iter().any(|r| r.len() != ex.dim) {
                    return Err(Error::InvalidSpec(format!(
                        "matrix must be {0}x{0} to match dim = {0}",
                        ex.dim
                    )));
                }
                let data = ex
                    .matrix
                    .iter()
                    .flat_map(|row| row.iter().map(|[re, im]| c64(*re, *im)))
                    .collect();
                DensityOperator::new(ComplexMatrix::from_vec(ex.dim, ex.dim, data)?)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state spec serializes")
    }
}

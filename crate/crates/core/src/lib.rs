//! Total correlations of two-qubit states measured by the Pearson
//! correlation coefficient, maximized over locally complementary triplets
//! of observables, next to the mutual-information baseline.
//!
//! ```
//! use qcorr::{correlations, states};
//!
//! let werner = states::werner(1.0 / 3.0).unwrap();
//! let report = correlations::total_correlations(&werner, &Default::default()).unwrap();
//! assert!((report.r_value - 1.0).abs() < 1e-6);
//! ```

pub mod complementarity;
pub mod correlations;
pub mod density;
pub mod entropy;
pub mod error;
pub mod fano;
pub mod linalg;
pub mod optimize;
pub mod report;
pub mod state_spec;
pub mod states;
pub mod statistics;
pub mod sweep;
pub mod verify;

pub use correlations::{
    classify, total_correlations, Classification, CorrelationReport, MeasurementFrame, OptimizerOptions,
};
pub use density::{DensityOperator, Observable};
pub use error::{Error, Result};
pub use fano::FanoDecomposition;
pub use linalg::ComplexMatrix;

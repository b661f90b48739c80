//! Exact verification of Frobenius monoidal functor structure in matrix
//! categories over ℚ.

pub mod convolution;
pub mod dsl;
pub mod duality;
pub mod error;
pub mod frob_tensor;
pub mod functor;
pub mod linalg;
pub mod monoidal;
pub mod report;

pub use error::{FrobError, Result};
pub use linalg::{RatMatrix, Rational};
pub use monoidal::{CategoryInstance, FiniteBase, MonObject, Morphism};
pub use report::{format_report, Report, ReportEntry, ReportMode, Status};

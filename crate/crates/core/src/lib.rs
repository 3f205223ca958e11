//! Exact rational computer algebra for 2-orthogonal eigenpolynomials of
//! differential operators `J = sum a_nu D^nu / nu!` and their
//! Hahn-classical structure.
//!
//! Polynomials and moment functionals are exact over `Q`; every identity is
//! checked moment by moment up to an explicit horizon.

pub mod closed_forms;
pub mod diffop;
pub mod eigen;
pub mod error;
pub mod forms;
pub mod hahn;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod sample;
pub mod two_orth;

pub use diffop::{DiffOperator, LoweringClass};
pub use eigen::{eigen_mps, operator_matrix, verify_eigen, OperatorMatrix};
pub use error::{Error, Result, TwoOrthFailure};
pub use forms::MomentForm;
pub use hahn::{ClassicalSystem, HahnVerdict, Intermediates};
pub use poly::{format_rational, parse_rational, Polynomial, Rational};
pub use report::CheckLine;
pub use two_orth::{DualPair, Eabf, Mps, RecurrenceCoeffs};
pub use pipeline::{run_theorem4, run_theorem5, Outcome, PipelineConfig};

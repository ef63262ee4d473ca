//! Exact symbolic engine for weak quantized enveloping algebras attached to
//! Borcherds-Cartan data.

pub mod cartan;
pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod presentation;
pub mod qscalar;
pub mod report;
pub mod repr;
pub mod weakhopf;

pub use cartan::{validate_datum, BorcherdsCartanDatum, DatumViolation};
pub use error::{Error, Result};
pub use presentation::{AlgebraElement, GenType, Letter, Presentation, TypeTable, Word};
pub use qscalar::QScalar;

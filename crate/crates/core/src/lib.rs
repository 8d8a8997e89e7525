pub mod error;
pub mod factory;
pub mod field;
pub mod graded;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod poly;

pub use error::{AtlasError, Result};
pub use factory::{MultiLineCurve, Provenance, QPType, Support, TripleData};
pub use field::{PrimeField, Scalar};
pub use graded::{Frame, GradedIdeal, LineModule, SplittingType};
pub use invariants::{CdlCriteria, CurveReport, FamilySpec};
pub use monomial::Monomial;
pub use poly::HomogeneousPolynomial;

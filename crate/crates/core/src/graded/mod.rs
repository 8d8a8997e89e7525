//! Degreewise ideals and modules over the line ring.

pub mod frame;
pub mod ideal;
pub mod module;

pub use frame::{DegreeColumns, Frame};
pub use ideal::{GradedIdeal, SaturationCertificate};

pub use module::{LineModule, SplittingCertificate, SplittingMethod, SplittingType};

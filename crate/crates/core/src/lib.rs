//! Exact computation of the gonality sequence and the higher Clifford indices
//! of smooth projective curves.

pub mod bounds;
pub mod clifford;
pub mod constructions;
pub mod curve;
pub mod error;
pub mod gonality;
pub mod mercat;
pub mod numerics;
pub mod oracle;

pub use curve::{Curve, CurveInvariants, CurveSpec, CustomCurve};
pub use error::{Error, Result};
pub use gonality::{GonalityEntry, GonalitySequence, IntInterval};
pub use numerics::{floor_div, rat, Rational};

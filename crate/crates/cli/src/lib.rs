//! Report documents and renderers behind the `cliffordix` binary.

pub mod render;
pub mod report;

pub use report::{CurveDoc, MercatDoc, OracleDoc, Report, ValidateDoc};

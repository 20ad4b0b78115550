use thiserror::Error;

use crate::curve::CurveError;
use crate::gonality::SequenceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error("stated gamma_1 = {stated} lies outside the interval [{lo}, {hi}] derived from the gonality sequence")]
    Gamma1Mismatch { stated: i64, lo: i64, hi: i64 },
    #[error("inconsistent bounds for rank {n} ({which}): lower {lower} from {lower_source} exceeds upper {upper} from {upper_source}")]
    EmptyInterval {
        n: i64,
        which: &'static str,
        lower: String,
        lower_source: String,
        upper: String,
        upper_source: String,
    },
    #[error("serre dual of {0} would have negative h0")]
    NegativeDualSections(String),
    #[error("{0} is not in the first range of the conjectured bounds")]
    NotInRangeOne(String),
    #[error("oracle bound {oracle} exceeds the upper value {upper} of gamma_{n}")]
    OracleAboveUpper {
        n: i64,
        oracle: String,
        upper: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

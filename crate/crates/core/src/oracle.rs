//! Brute-force lower bounds for `gamma_n` and `gamma_n'` from the `h0` rule
//! catalog, used to cross-check the closed-form dispatch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{gamma_of, BundleClass, RankFacts};
use crate::clifford::{CliffordEngine, CliffordResult};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::numerics::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    /// `h0 >= n + 1`, the `gamma_n` condition.
    Plain,
    /// `h0 >= 2n`, the `gamma_n'` condition.
    Prime,
}

impl Threshold {
    pub fn sections(&self, n: i64) -> i64 {
        match self {
            Threshold::Plain => n + 1,
            Threshold::Prime => 2 * n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub n: i64,
    pub threshold: i64,
    /// `None` when no degree admits enough sections.
    pub min_gamma: Option<Rational>,
    pub argmin: Option<BundleClass>,
    /// Set when some rule was skipped for lack of exact data.
    pub weakened: bool,
}

/// Every degree `1 <= d <= n(g-1)` whose catalog bound meets the threshold.
pub fn feasible_points(curve: &Curve, n: i64, threshold: Threshold) -> Vec<BundleClass> {
    let facts = RankFacts::new(curve, n);
    let t = threshold.sections(n);
    (1..=n * (curve.genus() - 1))
        .filter_map(|d| {
            let h0 = facts.bound(d);
            (h0 >= t).then(|| BundleClass::new(n, d, h0))
        })
        .collect()
}

pub fn oracle_min_gamma(curve: &Curve, n: i64, threshold: Threshold) -> OracleOutcome {
    assert!(n >= 1, "rank must be positive");
    let facts = RankFacts::new(curve, n);
    let t = threshold.sections(n);
    let best = (1..n * (curve.genus() - 1) + 1)
        .into_par_iter()
        .filter_map(|d| {
            let h0 = facts.bound(d);
            (h0 >= t).then(|| BundleClass::new(n, d, h0))
        })
        .min_by(|a, b| gamma_of(a).cmp(&gamma_of(b)).then(a.d.cmp(&b.d)));
    OracleOutcome {
        n,
        threshold: t,
        min_gamma: best.as_ref().map(gamma_of),
        argmin: best,
        weakened: !facts.certified,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// The oracle reproduces the exact value.
    Equal,
    /// The oracle lies strictly below the lower end.
    StrictGap,
    /// The oracle lies inside a non-degenerate interval.
    WithinInterval,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub oracle: OracleOutcome,
    pub result: CliffordResult,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub n: i64,
    pub gamma_n: Comparison,
    pub gamma_n_prime: Comparison,
}

fn compare(oracle: OracleOutcome, result: CliffordResult) -> Result<Comparison> {
    let status = match oracle.min_gamma {
        None => CheckStatus::Infeasible,
        Some(v) if v > result.hi => {
            return Err(Error::OracleAboveUpper {
                n: result.n,
                oracle: v.to_string(),
                upper: result.hi.to_string(),
            })
        }
        Some(v) if v < result.lo => CheckStatus::StrictGap,
        Some(v) if result.is_exact() && v == result.lo => CheckStatus::Equal,
        Some(_) => CheckStatus::WithinInterval,
    };
    Ok(Comparison {
        oracle,
        result,
        status,
    })
}

/// Compares the oracle with the dispatch at rank `n`; an oracle value above
/// the upper end is an error.
pub fn oracle_cross_check(engine: &CliffordEngine<'_>, n: i64) -> Result<CrossCheck> {
    let curve = engine.curve();
    Ok(CrossCheck {
        n,
        gamma_n: compare(
            oracle_min_gamma(curve, n, Threshold::Plain),
            engine.gamma_n(n)?,
        )?,
        gamma_n_prime: compare(
            oracle_min_gamma(curve, n, Threshold::Prime),
            engine.gamma_n_prime(n)?,
        )?,
    })
}

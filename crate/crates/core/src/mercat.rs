//! Pointwise evaluation of Mercat's conjectured `h0` bounds.

use serde::{Deserialize, Serialize};

use crate::bounds::{gamma_of, BundleClass, RankFacts};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::numerics::{floor_div, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    RangeI,
    RangeII,
    OutOfRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MercatVerdict {
    pub regime: Regime,
    pub conjectured_h0_bound: Option<i64>,
    pub status: Status,
}

/// `gamma_1 + 2 <= mu <= 2g - 4 - gamma_1`.
pub fn in_range_one(genus: i64, gamma1: i64, b: &BundleClass) -> bool {
    (gamma1 + 2) * b.n <= b.d && b.d <= (2 * genus - 4 - gamma1) * b.n
}

fn range_one_bound(gamma1: i64, b: &BundleClass) -> i64 {
    floor_div(b.d - gamma1 * b.n, 2) + b.n
}

fn range_two_bound(gamma1: i64, b: &BundleClass) -> i64 {
    floor_div(b.d - b.n, gamma1 + 1) + b.n
}

pub fn mercat_check(genus: i64, gamma1: i64, b: &BundleClass) -> MercatVerdict {
    let boundary = (gamma1 + 2) * b.n;
    let (regime, bound) = if in_range_one(genus, gamma1, b) {
        let mut bound = range_one_bound(gamma1, b);
        if b.d == boundary {
            bound = bound.max(range_two_bound(gamma1, b));
        }
        (Regime::RangeI, Some(bound))
    } else if b.n <= b.d && b.d < boundary {
        (Regime::RangeII, Some(range_two_bound(gamma1, b)))
    } else {
        (Regime::OutOfRange, None)
    };
    let status = match bound {
        Some(x) if b.h0 <= x => Status::Holds,
        Some(_) => Status::Violated,
        None => Status::NotApplicable,
    };
    MercatVerdict {
        regime,
        conjectured_h0_bound: bound,
        status,
    }
}

/// `(h0 form holds, gamma(E) >= gamma_1)` for a point in the first range.
pub fn gamma_form_equiv(genus: i64, gamma1: i64, b: &BundleClass) -> Result<(bool, bool)> {
    if !in_range_one(genus, gamma1, b) {
        return Err(Error::NotInRangeOne(b.to_string()));
    }
    let h0_form = b.h0 <= range_one_bound(gamma1, b);
    let gamma_form = gamma_of(b) >= Rational::from_int(gamma1);
    Ok((h0_form, gamma_form))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorReport {
    pub n: i64,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checked: usize,
    pub counterexamples: Vec<BundleClass>,
}

impl CorReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.counterexamples.is_empty()
    }
}

/// Checks every `(n, d, h0)` with `d <= d_n` and `h0` up to the catalog
/// bound against the conjecture.
pub fn verify_cor_d_le_dn(curve: &Curve, n: i64) -> CorReport {
    let not_applicable = |reason: &str| CorReport {
        n,
        applicable: false,
        reason: Some(reason.to_string()),
        checked: 0,
        counterexamples: Vec::new(),
    };
    let Some(gamma1) = curve.gamma1().as_exact() else {
        return not_applicable("gamma_1 is not known exactly");
    };
    match curve.sequence.chain_holds(n) {
        None => return not_applicable("gonality entries up to d_n are not exact"),
        Some(false) => return not_applicable("chain hypothesis d_p/p >= d_{p+1}/(p+1) fails"),
        Some(true) => {}
    }
    let dn = curve.d(n).expect("chain hypothesis certifies d_n");
    let facts = RankFacts::new(curve, n);
    let g = curve.genus();
    let mut checked = 0;
    let mut counterexamples = Vec::new();
    for d in 1..=dn {
        for h0 in 0..=facts.bound(d) {
            let b = BundleClass::new(n, d, h0);
            checked += 1;
            if mercat_check(g, gamma1, &b).status == Status::Violated {
                counterexamples.push(b);
            }
        }
    }
    CorReport {
        n,
        applicable: true,
        reason: None,
        checked,
        counterexamples,
    }
}

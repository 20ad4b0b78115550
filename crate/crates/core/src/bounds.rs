//! Numerical bundle classes `(n, d, h0)`, Serre duality, and the catalog of
//! necessary upper bounds on `h0` of a semistable bundle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::numerics::{floor_div, rat, Rational};

/// Rank, degree and section count of a hypothetical semistable bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleClass {
    pub n: i64,
    pub d: i64,
    pub h0: i64,
}

impl BundleClass {
    pub fn new(n: i64, d: i64, h0: i64) -> BundleClass {
        assert!(n >= 1, "rank must be positive");
        BundleClass { n, d, h0 }
    }

    pub fn slope(&self) -> Rational {
        rat(self.d, self.n)
    }

    pub fn gamma(&self) -> Rational {
        gamma_of(self)
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, d={}, h0={})", self.n, self.d, self.h0)
    }
}

/// `(d - 2(h0 - n)) / n`.
pub fn gamma_of(b: &BundleClass) -> Rational {
    rat(b.d - 2 * (b.h0 - b.n), b.n)
}

/// `K ⊗ E*`, whose sections are `h1(E)` by Riemann-Roch.
pub fn serre_dual(b: &BundleClass, genus: i64) -> Result<BundleClass> {
    let h0 = b.h0 - b.d - b.n * (1 - genus);
    if h0 < 0 {
        return Err(Error::NegativeDualSections(b.to_string()));
    }
    Ok(BundleClass {
        n: b.n,
        d: b.n * (2 * genus - 2) - b.d,
        h0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R_CLIFF")]
    Cliff,
    #[serde(rename = "R_RR")]
    RiemannRoch,
    #[serde(rename = "R_NEG")]
    Neg,
    #[serde(rename = "R_SMALL")]
    Small,
    #[serde(rename = "R_RE")]
    Re,
    #[serde(rename = "R_M1")]
    M1,
    #[serde(rename = "R_M2")]
    M2,
    #[serde(rename = "R_M3")]
    M3,
    #[serde(rename = "R_M4")]
    M4,
    #[serde(rename = "R_LT_DN")]
    LtDn,
    #[serde(rename = "R_PROP413")]
    Prop413,
    #[serde(rename = "R_AT_DN")]
    AtDn,
    #[serde(rename = "R_RK2_HI")]
    Rk2Hi,
    #[serde(rename = "R_RK2_LO")]
    Rk2Lo,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::Cliff,
        RuleId::RiemannRoch,
        RuleId::Neg,
        RuleId::Small,
        RuleId::Re,
        RuleId::M1,
        RuleId::M2,
        RuleId::M3,
        RuleId::M4,
        RuleId::LtDn,
        RuleId::Prop413,
        RuleId::AtDn,
        RuleId::Rk2Hi,
        RuleId::Rk2Lo,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            RuleId::Cliff => "R_CLIFF",
            RuleId::RiemannRoch => "R_RR",
            RuleId::Neg => "R_NEG",
            RuleId::Small => "R_SMALL",
            RuleId::Re => "R_RE",
            RuleId::M1 => "R_M1",
            RuleId::M2 => "R_M2",
            RuleId::M3 => "R_M3",
            RuleId::M4 => "R_M4",
            RuleId::LtDn => "R_LT_DN",
            RuleId::Prop413 => "R_PROP413",
            RuleId::AtDn => "R_AT_DN",
            RuleId::Rk2Hi => "R_RK2_HI",
            RuleId::Rk2Lo => "R_RK2_LO",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One rule's verdict; `bound` is `None` when the rule does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleOutcome {
    pub rule: RuleId,
    pub bound: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Bound {
    pub bound: i64,
    /// Rules attaining the bound.
    pub provenance: Vec<RuleId>,
    /// Every rule in the catalog with its verdict.
    pub outcomes: Vec<RuleOutcome>,
}

/// Rank-dependent facts about the gonality sequence, computed once per rank.
#[derive(Debug, Clone)]
pub struct RankFacts {
    pub n: i64,
    pub genus: i64,
    gamma1_lo: i64,
    gamma1_exact: Option<i64>,
    d1: Option<i64>,
    dn: Option<i64>,
    ratio: Option<bool>,
    chain: Option<bool>,
    /// `min_{p <= n} d_p / p` when all entries are exact.
    min_ratio: Option<Rational>,
    /// Whether every rule could be evaluated with certified data.
    pub certified: bool,
}

impl RankFacts {
    pub fn new(curve: &Curve, n: i64) -> RankFacts {
        assert!(n >= 1, "rank must be positive");
        let seq = &curve.sequence;
        let min_ratio = (1..=n)
            .map(|p| seq.exact(p).map(|dp| rat(dp, p)))
            .collect::<Option<Vec<_>>>()
            .and_then(|v| v.into_iter().min());
        let gamma1 = curve.gamma1();
        RankFacts {
            n,
            genus: curve.genus(),
            gamma1_lo: gamma1.lo,
            gamma1_exact: gamma1.as_exact(),
            d1: seq.exact(1),
            dn: seq.exact(n),
            ratio: seq.ratio_dominates(n),
            chain: seq.chain_holds(n),
            min_ratio,
            certified: gamma1.is_exact() && (1..=n).all(|p| seq.exact(p).is_some()),
        }
    }

    /// Evaluates every rule at degree `d`, reporting each verdict to `visit`.
    fn evaluate(&self, d: i64, mut visit: impl FnMut(RuleId, Option<i64>)) {
        let n = self.n;
        let g = self.genus;
        let top = n * (2 * g - 2);

        visit(
            RuleId::Cliff,
            (0..=top).contains(&d).then(|| floor_div(d, 2) + n),
        );
        visit(RuleId::RiemannRoch, (d > top).then(|| d + n * (1 - g)));
        visit(
            RuleId::Neg,
            match d {
                d if d < 0 => Some(0),
                0 => Some(n),
                _ => None,
            },
        );
        visit(RuleId::Small, (0 < d && d < n).then_some(n - 1));
        visit(
            RuleId::Re,
            (self.gamma1_lo >= 1 && n <= d && d <= n * (g - 1)).then(|| floor_div(d + n, 2)),
        );

        let mukai = self.gamma1_lo >= 2 && g >= 5;
        visit(
            RuleId::M1,
            (mukai && n < d && d < 2 * n).then(|| n + floor_div(d - n, g)),
        );
        visit(
            RuleId::M2,
            (mukai && d == 2 * n).then(|| n + floor_div(n, g - 1)),
        );
        visit(
            RuleId::M3,
            (mukai && d > 2 * n && (g - 4) * (d - 2 * n) < 2 * n)
                .then(|| n + floor_div(d - n, g - 2)),
        );
        // the upper limit mirrors the region under Serre duality
        visit(
            RuleId::M4,
            (mukai && (g - 4) * (d - 2 * n) >= 2 * n && (g - 4) * (n * (2 * g - 4) - d) >= 2 * n)
                .then(|| floor_div(d, 2)),
        );

        visit(
            RuleId::LtDn,
            match (self.ratio, self.dn) {
                (Some(true), Some(dn)) if d < dn => Some(n),
                _ => None,
            },
        );
        visit(
            RuleId::Prop413,
            match self.min_ratio {
                Some(m) if rat(d, n) < m => Some(n),
                _ => None,
            },
        );
        visit(
            RuleId::AtDn,
            match (self.chain, self.dn, self.d1) {
                (Some(true), Some(dn), Some(d1)) if d == dn => {
                    Some(if dn == n * d1 { 2 * n } else { n + 1 })
                }
                _ => None,
            },
        );

        let rank2 = match self.gamma1_exact {
            Some(c) if n == 2 && c >= 3 => Some(c),
            _ => None,
        };
        visit(
            RuleId::Rk2Hi,
            rank2
                .filter(|&c| 3 * c - 1 <= d && d <= 2 * g - 2)
                .map(|c| floor_div(d - 2 * c, 2) + 2),
        );
        visit(
            RuleId::Rk2Lo,
            rank2
                .filter(|&c| 0 <= d && d <= 3 * c - 2)
                .map(|c| (floor_div(d - c, 4) + 2).max(2)),
        );
    }

    /// The catalog minimum at degree `d` without bookkeeping.
    pub fn bound(&self, d: i64) -> i64 {
        let mut best = i64::MAX;
        self.evaluate(d, |_, b| {
            if let Some(b) = b {
                best = best.min(b);
            }
        });
        best
    }

    pub fn h0_upper(&self, d: i64) -> H0Bound {
        let mut outcomes = Vec::with_capacity(RuleId::ALL.len());
        self.evaluate(d, |rule, bound| outcomes.push(RuleOutcome { rule, bound }));
        let bound = outcomes
            .iter()
            .filter_map(|o| o.bound)
            .min()
            .expect("R_CLIFF, R_RR and R_NEG cover every degree");
        let provenance = outcomes
            .iter()
            .filter(|o| o.bound == Some(bound))
            .map(|o| o.rule)
            .collect();
        H0Bound {
            bound,
            provenance,
            outcomes,
        }
    }
}

/// Upper bound on `h0` of a semistable bundle of rank `n` and degree `d`.
pub fn h0_upper(curve: &Curve, n: i64, d: i64) -> H0Bound {
    RankFacts::new(curve, n).h0_upper(d)
}

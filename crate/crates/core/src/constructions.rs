//! Bundle classes known to exist, each certified from exact gonality data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::BundleClass;
use crate::curve::{Curve, CurveSpec};
use crate::gonality::brill_noether;
use crate::numerics::floor_div;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionId {
    #[serde(rename = "C_BN")]
    BrillNoether,
    #[serde(rename = "C_DUALSPAN")]
    DualSpan,
    #[serde(rename = "C_SUM")]
    DirectSum,
    #[serde(rename = "C_PENCIL")]
    Pencil,
    #[serde(rename = "C_BIELL")]
    Bielliptic,
    #[serde(rename = "C_HIGH")]
    HighRank,
    #[serde(rename = "C_RK5A")]
    Rank5Split,
    #[serde(rename = "C_RK5B")]
    Rank5Pair,
}

impl ConstructionId {
    pub fn tag(&self) -> &'static str {
        match self {
            ConstructionId::BrillNoether => "C_BN",
            ConstructionId::DualSpan => "C_DUALSPAN",
            ConstructionId::DirectSum => "C_SUM",
            ConstructionId::Pencil => "C_PENCIL",
            ConstructionId::Bielliptic => "C_BIELL",
            ConstructionId::HighRank => "C_HIGH",
            ConstructionId::Rank5Split => "C_RK5A",
            ConstructionId::Rank5Pair => "C_RK5B",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionEntry {
    pub bundle: BundleClass,
    pub source: ConstructionId,
    pub hypothesis: String,
}

/// Every certified bundle class of rank `n` with slope at most `g - 1`.
pub fn achievable_points(curve: &Curve, n: i64) -> Vec<ConstructionEntry> {
    assert!(n >= 1, "rank must be positive");
    let g = curve.genus();
    let seq = &curve.sequence;
    let gamma1_lo = curve.gamma1().lo;
    let mut out = Vec::new();
    let mut push = |n, d, h0, source, hypothesis: String| {
        out.push(ConstructionEntry {
            bundle: BundleClass::new(n, d, h0),
            source,
            hypothesis,
        })
    };

    push(
        n,
        brill_noether(g, n),
        n + 1,
        ConstructionId::BrillNoether,
        "any curve".into(),
    );

    if let (Some(true), Some(dn)) = (seq.ratio_dominates(n), seq.exact(n)) {
        push(
            n,
            dn,
            n + 1,
            ConstructionId::DualSpan,
            format!("d_p/p >= d_{n}/{n} for p < {n}"),
        );
    }

    for p in (1..n).filter(|p| n % p == 0) {
        if let (Some(true), Some(dp)) = (seq.ratio_dominates(p), seq.exact(p)) {
            let copies = n / p;
            push(
                n,
                copies * dp,
                copies * (p + 1),
                ConstructionId::DirectSum,
                format!("{copies} copies of rank {p}; d_q/q >= d_{p}/{p} for q < {p}"),
            );
        }
    }

    if let (Some(d1), Some(dn)) = (seq.exact(1), seq.exact(n)) {
        if dn == n * d1 {
            push(
                n,
                n * d1,
                2 * n,
                ConstructionId::Pencil,
                format!("d_{n} = {n} d_1"),
            );
        }
    }

    if let CurveSpec::Bielliptic { .. } = curve.spec {
        for d in 2..=n * (g - 1) {
            push(
                n,
                d,
                floor_div(d, 2),
                ConstructionId::Bielliptic,
                "bielliptic curve".into(),
            );
        }
    }

    if n > g {
        push(n, n + g, n + 1, ConstructionId::HighRank, "n > g".into());
    }
    if gamma1_lo >= 2 {
        if n >= g - 1 {
            push(
                n,
                2 * n,
                n + floor_div(n, g - 1),
                ConstructionId::HighRank,
                "gamma_1 >= 2, n >= g - 1".into(),
            );
        }
        if n == g - 2 {
            push(
                n,
                2 * g - 3,
                g - 1,
                ConstructionId::HighRank,
                "gamma_1 >= 2, n = g - 2".into(),
            );
        }
    }

    if n == 5 {
        if let (Some(true), Some(d2)) = (seq.ratio_dominates(2), seq.exact(2)) {
            if d2 % 2 == 0 {
                push(
                    5,
                    5 * d2 / 2,
                    7,
                    ConstructionId::Rank5Split,
                    "d_2 even, d_1 >= d_2/2".into(),
                );
            }
        }
        if let (Some(true), Some(true), Some(d2), Some(d3)) = (
            seq.ratio_dominates(2),
            seq.ratio_dominates(3),
            seq.exact(2),
            seq.exact(3),
        ) {
            if 3 * d2 == 2 * d3 {
                push(
                    5,
                    d2 + d3,
                    7,
                    ConstructionId::Rank5Pair,
                    "d_2/2 = d_3/3 dominated by d_1".into(),
                );
            }
        }
    }

    out.retain(|e| e.bundle.d <= e.bundle.n * (g - 1));
    out
}

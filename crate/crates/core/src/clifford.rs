//! The higher Clifford indices `gamma_n` and `gamma_n'` as exact values or
//! certified intervals, each bound tagged with the result it comes from.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::gamma_of;
use crate::constructions::achievable_points;
use crate::curve::{Curve, CurveSpec};
use crate::error::{Error, Result};
use crate::gonality::brill_noether;
use crate::numerics::{floor_div, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Interval,
}

/// Stable identifiers for the results a bound is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem {
    Classical,
    Nonnegative,
    UniversalUpper,
    LowClifford,
    AtLeastOne,
    BelowGenus,
    PrimeAtLeastTwo,
    Rank2PrimeClifford,
    Rank2PrimeGonality,
    CliffordTwoTable,
    HighRank,
    NearGenus,
    Rank2,
    Rank3,
    Rank4,
    GeneralRank5,
    Rank5Lower,
    PlaneRank2,
    PlaneRank3,
    PlaneRank4,
    PlaneRank5,
    DivisorSum,
    Divisibility,
    PrimeDominates,
    Construction,
    PencilEquality,
}

impl Theorem {
    pub fn tag(&self) -> &'static str {
        match self {
            Theorem::Classical => "CLASSICAL",
            Theorem::Nonnegative => "NONNEGATIVE",
            Theorem::UniversalUpper => "UNIVERSAL_UPPER",
            Theorem::LowClifford => "LOW_CLIFFORD",
            Theorem::AtLeastOne => "AT_LEAST_ONE",
            Theorem::BelowGenus => "BELOW_GENUS",
            Theorem::PrimeAtLeastTwo => "PRIME_AT_LEAST_TWO",
            Theorem::Rank2PrimeClifford => "RANK2_PRIME_CLIFFORD",
            Theorem::Rank2PrimeGonality => "RANK2_PRIME_GONALITY",
            Theorem::CliffordTwoTable => "CLIFFORD_TWO_TABLE",
            Theorem::HighRank => "HIGH_RANK",
            Theorem::NearGenus => "NEAR_GENUS",
            Theorem::Rank2 => "RANK2",
            Theorem::Rank3 => "RANK3",
            Theorem::Rank4 => "RANK4",
            Theorem::GeneralRank5 => "GENERAL_RANK5",
            Theorem::Rank5Lower => "RANK5_LOWER",
            Theorem::PlaneRank2 => "PLANE_RANK2",
            Theorem::PlaneRank3 => "PLANE_RANK3",
            Theorem::PlaneRank4 => "PLANE_RANK4",
            Theorem::PlaneRank5 => "PLANE_RANK5",
            Theorem::DivisorSum => "DIVISOR_SUM",
            Theorem::Divisibility => "DIVISIBILITY",
            Theorem::PrimeDominates => "PRIME_DOMINATES",
            Theorem::Construction => "CONSTRUCTION",
            Theorem::PencilEquality => "PENCIL_EQUALITY",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Source {
    pub side: Side,
    pub tag: Theorem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordResult {
    pub n: i64,
    pub kind: Kind,
    pub lo: Rational,
    pub hi: Rational,
    pub sources: Vec<Source>,
    pub mercat_conditional: Option<Rational>,
}

impl CliffordResult {
    pub fn is_exact(&self) -> bool {
        self.kind == Kind::Exact
    }

    pub fn exact(&self) -> Option<Rational> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: Rational) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for CliffordResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Exact => write!(f, "{}", self.lo),
            Kind::Interval => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// One bound: lower end, upper end, or both.
#[derive(Debug, Clone, Copy)]
struct Entry {
    lo: Option<Rational>,
    hi: Option<Rational>,
    tag: Theorem,
}

#[derive(Debug, Default)]
struct Bounds {
    entries: Vec<Entry>,
}

impl Bounds {
    fn lower(&mut self, v: Rational, tag: Theorem) {
        self.entries.push(Entry {
            lo: Some(v),
            hi: None,
            tag,
        });
    }

    fn upper(&mut self, v: Rational, tag: Theorem) {
        self.entries.push(Entry {
            lo: None,
            hi: Some(v),
            tag,
        });
    }

    fn range(&mut self, lo: Rational, hi: Rational, tag: Theorem) {
        self.entries.push(Entry {
            lo: Some(lo),
            hi: Some(hi),
            tag,
        });
    }

    fn exact(&mut self, v: Rational, tag: Theorem) {
        self.range(v, v, tag);
    }

    fn extend(&mut self, other: Bounds) {
        self.entries.extend(other.entries);
    }

    /// Values some rule pins down exactly.
    fn exact_claims(&self) -> Vec<(Rational, Theorem)> {
        self.entries
            .iter()
            .filter_map(|e| match (e.lo, e.hi) {
                (Some(a), Some(b)) if a == b => Some((a, e.tag)),
                _ => None,
            })
            .collect()
    }

    fn envelope(&self, n: i64, which: &'static str) -> Result<(Rational, Rational)> {
        let lower = self
            .entries
            .iter()
            .filter_map(|e| e.lo.map(|v| (v, e.tag)))
            .max_by_key(|&(v, _)| v)
            .expect("every index has a lower bound");
        let upper = self
            .entries
            .iter()
            .filter_map(|e| e.hi.map(|v| (v, e.tag)))
            .min_by_key(|&(v, _)| v)
            .expect("every index has an upper bound");
        if lower.0 > upper.0 {
            return Err(Error::EmptyInterval {
                n,
                which,
                lower: lower.0.to_string(),
                lower_source: lower.1.to_string(),
                upper: upper.0.to_string(),
                upper_source: upper.1.to_string(),
            });
        }
        Ok((lower.0, upper.0))
    }

    fn finish(
        self,
        n: i64,
        which: &'static str,
        mercat_conditional: Option<Rational>,
    ) -> Result<CliffordResult> {
        let (lo, hi) = self.envelope(n, which)?;
        let mut sources: Vec<Source> = Vec::new();
        let mut add = |side, tag| {
            let s = Source { side, tag };
            if !sources.contains(&s) {
                sources.push(s);
            }
        };
        for e in &self.entries {
            match (e.lo, e.hi) {
                (Some(a), Some(b)) if a == b => {
                    if a == lo && b == hi {
                        add(Side::Exact, e.tag);
                    }
                }
                _ => {
                    if e.lo == Some(lo) {
                        add(Side::Lower, e.tag);
                    }
                    if e.hi == Some(hi) {
                        add(Side::Upper, e.tag);
                    }
                }
            }
        }
        Ok(CliffordResult {
            n,
            kind: if lo == hi {
                Kind::Exact
            } else {
                Kind::Interval
            },
            lo,
            hi,
            sources,
            mercat_conditional,
        })
    }
}

/// `(g - [g/(n+1)] + n - 2) / n`, valid for every curve.
pub fn universal_upper(genus: i64, n: i64) -> Rational {
    rat(brill_noether(genus, n) - 2, n)
}

/// Exact `gamma_n` for `gamma_1 >= 2` and `n >= g - 3`.
pub fn high_rank_value(genus: i64, n: i64) -> Option<(Rational, Theorem)> {
    let g = genus;
    Some(match n - g {
        m if m > 0 => (rat(n + g - 2, n), Theorem::HighRank),
        0 => (rat(2 * g - 2, g), Theorem::NearGenus),
        -1 => (rat(2 * g - 4, g - 1), Theorem::HighRank),
        -2 => (rat(2 * g - 5, g - 2), Theorem::NearGenus),
        -3 => (Rational::from_int(2), Theorem::NearGenus),
        _ => return None,
    })
}

/// The full `gamma_n` table of a curve with `gamma_1 = 2`.
pub fn clifford_two_table(genus: i64, n: i64) -> Rational {
    high_rank_value(genus, n).map_or(Rational::from_int(2), |(v, _)| v)
}

/// The numerical terms of the rank-5 lower bound for `d_1..=d_5`, in order.
/// Plane curves swap the fifth term for one using `d_2`.
pub fn rank5_terms(d: [i64; 5], plane: bool) -> [Rational; 7] {
    let [d1, d2, d3, d4, d5] = d;
    let fifth = if plane {
        rat(4 * d1 + 3 * d2 - 12, 10)
    } else {
        rat(2 * d1 + d3 - 6, 5)
    };
    [
        rat(d2 - 2, 2),
        rat(d5 - 2, 5),
        rat(d1 + 2 * d2 - 6, 5),
        rat(d1 + d4 - 4, 5),
        fifth,
        rat(3 * d1 + d2 - 8, 5),
        rat(d2 + d3 - 5, 5),
    ]
}

/// `gamma_5` form for a general curve: `(g - [g/6] + 3) / 5`.
pub fn general_rank5_term(genus: i64) -> Rational {
    rat(genus - floor_div(genus, 6) + 3, 5)
}

/// A min-expression `min{gamma_n', c}` produced by one of the rank-specific
/// results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinForm {
    pub term: Rational,
    pub tag: Theorem,
}

/// Per-curve evaluator; memoizes ranks so divisor recursion stays cheap.
pub struct CliffordEngine<'a> {
    curve: &'a Curve,
    plain: RefCell<BTreeMap<i64, CliffordResult>>,
    prime: RefCell<BTreeMap<i64, CliffordResult>>,
}

fn r(v: i64) -> Rational {
    Rational::from_int(v)
}

impl<'a> CliffordEngine<'a> {
    pub fn new(curve: &'a Curve) -> CliffordEngine<'a> {
        CliffordEngine {
            curve,
            plain: RefCell::new(BTreeMap::new()),
            prime: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn curve(&self) -> &Curve {
        self.curve
    }

    fn classical(&self, b: &mut Bounds) {
        let g1 = self.curve.gamma1();
        b.range(r(g1.lo), r(g1.hi), Theorem::Classical);
    }

    /// Bounds that hold for every curve with `gamma_1` possibly at most one.
    fn low_clifford(&self, b: &mut Bounds) {
        let g1 = self.curve.gamma1();
        if g1.hi <= 1 {
            b.range(r(g1.lo), r(g1.hi), Theorem::LowClifford);
        } else if g1.lo <= 1 {
            b.lower(r(g1.lo), Theorem::LowClifford);
        }
    }

    pub fn gamma_n_prime(&self, n: i64) -> Result<CliffordResult> {
        assert!(n >= 1, "rank must be positive");
        if let Some(hit) = self.prime.borrow().get(&n) {
            return Ok(hit.clone());
        }
        let result = self.compute_prime(n)?;
        self.prime.borrow_mut().insert(n, result.clone());
        Ok(result)
    }

    fn compute_prime(&self, n: i64) -> Result<CliffordResult> {
        let curve = self.curve;
        let g1 = curve.gamma1();
        let mut b = Bounds::default();
        if n == 1 {
            self.classical(&mut b);
            return b.finish(n, "gamma_n'", None);
        }
        b.lower(Rational::ZERO, Theorem::Nonnegative);
        self.low_clifford(&mut b);
        if g1.lo >= 2 {
            b.lower(r(2), Theorem::PrimeAtLeastTwo);
        }
        if n == 2 {
            if g1.lo >= 3 {
                let c = r(g1.lo);
                b.lower(c.min(c / 2 + 2), Theorem::Rank2PrimeClifford);
            }
            if let Some(d4) = curve.sequence.get(4) {
                b.lower(r(g1.lo).min(rat(d4.lo, 2) - 2), Theorem::Rank2PrimeGonality);
            }
            if let CurveSpec::SmoothPlane { degree } = curve.spec {
                b.exact(r(degree - 4), Theorem::PlaneRank2);
            }
        }
        b.upper(r(g1.hi), Theorem::Divisibility);
        for p in (2..n).filter(|p| n % p == 0) {
            b.upper(self.gamma_n_prime(p)?.hi, Theorem::Divisibility);
        }
        let g = curve.genus();
        for e in achievable_points(curve, n) {
            let x = e.bundle;
            if x.h0 >= 2 * n && x.d <= n * (g - 1) {
                b.upper(gamma_of(&x), Theorem::Construction);
            }
        }
        b.finish(n, "gamma_n'", None)
    }

    pub fn gamma_n(&self, n: i64) -> Result<CliffordResult> {
        assert!(n >= 1, "rank must be positive");
        if let Some(hit) = self.plain.borrow().get(&n) {
            return Ok(hit.clone());
        }
        let result = self.compute_plain(n)?;
        self.plain.borrow_mut().insert(n, result.clone());
        Ok(result)
    }

    fn compute_plain(&self, n: i64) -> Result<CliffordResult> {
        let (mut b, form) = self.dispatch(n)?;
        b.extend(self.generic(n)?);
        let conditional = match (form, self.curve.gamma1().as_exact()) {
            (Some(f), Some(c)) => Some(r(c).min(f.term)),
            _ => None,
        };
        b.finish(n, "gamma_n", conditional)
    }

    /// The rank-specific min-expression `min{gamma_n', c}` that applies, if
    /// any.
    pub fn min_form(&self, n: i64) -> Option<MinForm> {
        let curve = self.curve;
        let seq = &curve.sequence;
        let plane = match curve.spec {
            CurveSpec::SmoothPlane { degree } => Some(degree),
            _ => None,
        };
        let form = |term, tag| Some(MinForm { term, tag });
        match n {
            3 => {
                if let Some(delta) = plane {
                    return form(rat(floor_div(3 * delta + 1, 2) - 2, 3), Theorem::PlaneRank3);
                }
                let (d2, d3) = (seq.exact(2)?, seq.exact(3)?);
                (3 * d2 >= 2 * d3).then_some(())?;
                form(rat(d3 - 2, 3), Theorem::Rank3)
            }
            4 => {
                if let Some(delta) = plane {
                    return form(rat(delta, 2) - 1, Theorem::PlaneRank4);
                }
                let (d2, d3, d4) = (seq.exact(2)?, seq.exact(3)?, seq.exact(4)?);
                (4 * d3 >= 3 * d4).then_some(())?;
                form(rat(d4 - 2, 4).min(rat(d2 - 2, 2)), Theorem::Rank4)
            }
            5 => {
                if let Some(delta) = plane {
                    return form(rat(2 * (delta - 1), 5), Theorem::PlaneRank5);
                }
                if let CurveSpec::General { genus } = curve.spec {
                    return form(general_rank5_term(genus), Theorem::GeneralRank5);
                }
                None
            }
            _ => None,
        }
    }

    /// Minimum of the numerical rank-5 terms when the chain hypothesis holds
    /// (or the curve is a smooth plane curve, using the modified list).
    pub fn rank5_lower_term(&self) -> Option<Rational> {
        let seq = &self.curve.sequence;
        let plane = matches!(self.curve.spec, CurveSpec::SmoothPlane { .. });
        if !plane && seq.chain_holds(5) != Some(true) {
            return None;
        }
        let d = [
            seq.exact(1)?,
            seq.exact(2)?,
            seq.exact(3)?,
            seq.exact(4)?,
            seq.exact(5)?,
        ];
        rank5_terms(d, plane).into_iter().min()
    }

    /// Rank-specific rules: everything but the generic interval.
    fn dispatch(&self, n: i64) -> Result<(Bounds, Option<MinForm>)> {
        let curve = self.curve;
        let g = curve.genus();
        let g1 = curve.gamma1();
        let seq = &curve.sequence;
        let mut b = Bounds::default();
        if n == 1 {
            self.classical(&mut b);
            return Ok((b, None));
        }
        self.low_clifford(&mut b);
        if g1.as_exact() == Some(2) {
            b.exact(clifford_two_table(g, n), Theorem::CliffordTwoTable);
        }
        if g1.lo >= 2 {
            if let Some((v, tag)) = high_rank_value(g, n) {
                b.exact(v, tag);
            }
        }
        if n == 2 {
            if let Some(d2) = seq.get(2) {
                b.range(
                    r(g1.lo).min(rat(d2.lo, 2) - 1),
                    r(g1.hi).min(rat(d2.hi, 2) - 1),
                    Theorem::Rank2,
                );
            }
            if let CurveSpec::SmoothPlane { degree } = curve.spec {
                let v = if degree == 5 {
                    r(1)
                } else {
                    rat(degree, 2) - 1
                };
                b.exact(v, Theorem::PlaneRank2);
            }
        }
        let form = self.min_form(n);
        if let Some(f) = form {
            let prime = self.gamma_n_prime(n)?;
            b.range(prime.lo.min(f.term), prime.hi.min(f.term), f.tag);
        }
        if n == 5 {
            if let Some(t) = self.rank5_lower_term() {
                let prime = self.gamma_n_prime(5)?;
                let tag = if matches!(curve.spec, CurveSpec::SmoothPlane { .. }) {
                    Theorem::PlaneRank5
                } else {
                    Theorem::Rank5Lower
                };
                b.lower(prime.lo.min(t), tag);
            }
        }
        if let (Some(d1), Some(dn)) = (seq.exact(1), seq.exact(n)) {
            if dn == n * d1 {
                let prime = self.gamma_n_prime(n)?;
                b.range(prime.lo, prime.hi, Theorem::PencilEquality);
            }
        }
        Ok((b, form))
    }

    /// Generic bounds valid for every rank.
    fn generic(&self, n: i64) -> Result<Bounds> {
        let curve = self.curve;
        let g = curve.genus();
        let g1 = curve.gamma1();
        let seq = &curve.sequence;
        let mut b = Bounds::default();
        b.lower(Rational::ZERO, Theorem::Nonnegative);
        if g1.lo >= 2 {
            b.lower(r(1), Theorem::AtLeastOne);
            if n <= g - 4 {
                b.lower(r(2), Theorem::BelowGenus);
            }
        }
        b.upper(universal_upper(g, n), Theorem::UniversalUpper);
        for p in (1..=n).filter(|p| n % p == 0) {
            if let (Some(true), Some(dp)) = (seq.ratio_dominates(p), seq.exact(p)) {
                b.upper(rat(dp - 2, p), Theorem::DivisorSum);
            }
            if p < n {
                b.upper(self.gamma_n(p)?.hi, Theorem::Divisibility);
            }
        }
        b.upper(self.gamma_n_prime(n)?.hi, Theorem::PrimeDominates);
        for e in achievable_points(curve, n) {
            let x = e.bundle;
            if x.h0 > n && x.d <= n * (g - 1) {
                b.upper(gamma_of(&x), Theorem::Construction);
            }
        }
        Ok(b)
    }

    /// The interval from the generic bounds alone.
    pub fn generic_interval(&self, n: i64) -> Result<(Rational, Rational)> {
        self.generic(n)?.envelope(n, "generic gamma_n")
    }

    /// Values that some rank-specific rule states exactly.
    pub fn exact_claims(&self, n: i64) -> Result<Vec<(Rational, Theorem)>> {
        Ok(self.dispatch(n)?.0.exact_claims())
    }
}

pub fn gamma_n(curve: &Curve, n: i64) -> Result<CliffordResult> {
    CliffordEngine::new(curve).gamma_n(n)
}

pub fn gamma_n_prime(curve: &Curve, n: i64) -> Result<CliffordResult> {
    CliffordEngine::new(curve).gamma_n_prime(n)
}

//! The gonality sequence `d_r`: closed forms per family, certified interval
//! propagation for the unknown entries, and axiom checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::CurveSpec;
use crate::numerics::floor_div;

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn new(lo: i64, hi: i64) -> IntInterval {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        IntInterval { lo, hi }
    }

    pub fn exact(v: i64) -> IntInterval {
        IntInterval { lo: v, hi: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_exact(&self) -> Option<i64> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// A single `d_r`; exact entries have `lo == hi`.
pub type GonalityEntry = IntInterval;

/// Constraints on the gonality sequence, used to name the culprit when data
/// is inconsistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceLemma {
    StrictMonotone,
    Subadditive,
    CliffordBound,
    CanonicalDegree,
    RiemannRoch,
    LinearUpper,
    BrillNoether,
    CliffordIndexLower,
    PencilMultiple,
    Asserted,
}

impl fmt::Display for SequenceLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceLemma::StrictMonotone => "strict monotonicity d_r < d_{r+1}",
            SequenceLemma::Subadditive => "subadditivity d_{r+s} <= d_r + d_s",
            SequenceLemma::CliffordBound => "Clifford bound 2r <= d_r",
            SequenceLemma::CanonicalDegree => "canonical degree d_{g-1} = 2g-2",
            SequenceLemma::RiemannRoch => "Riemann-Roch d_r = r+g for r >= g",
            SequenceLemma::LinearUpper => "linear bound d_r <= r(g-1)",
            SequenceLemma::BrillNoether => "Brill-Noether bound d_r <= g - [g/(r+1)] + r",
            SequenceLemma::CliffordIndexLower => "lower bound d_r >= min(gamma_1 + 2r, g + r - 1)",
            SequenceLemma::PencilMultiple => "d_r + d_s = d_{r+s} forces d_m = m d_1",
            SequenceLemma::Asserted => "asserted value",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("inconsistent gonality data at d_{r}: lower bound {lo} ({lower_by}) exceeds upper bound {hi} ({upper_by})")]
    Inconsistent {
        r: i64,
        lo: i64,
        hi: i64,
        lower_by: SequenceLemma,
        upper_by: SequenceLemma,
    },
    #[error("interval propagation did not settle within {0} sweeps")]
    NoFixpoint(i64),
    #[error("no index r satisfies d_r <= g + r - 2, so gamma_1 is undefined")]
    NoEligibleIndex,
    #[error("r_max must be at least 1")]
    EmptyRange,
}

/// `d_1, ..., d_{r_max}` of a curve of fixed genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GonalitySequence {
    genus: i64,
    entries: Vec<GonalityEntry>,
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    r: i64,
    lo: i64,
    hi: i64,
}

impl GonalitySequence {
    /// Wraps raw entries, `entries[0]` being `d_1`.
    pub fn from_entries(genus: i64, entries: Vec<GonalityEntry>) -> GonalitySequence {
        GonalitySequence { genus, entries }
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn r_max(&self) -> i64 {
        self.entries.len() as i64
    }

    pub fn get(&self, r: i64) -> Option<GonalityEntry> {
        if r < 1 {
            return None;
        }
        self.entries.get((r - 1) as usize).copied()
    }

    pub fn exact(&self, r: i64) -> Option<i64> {
        self.get(r).and_then(|e| e.as_exact())
    }

    pub fn is_fully_exact(&self) -> bool {
        self.entries.iter().all(IntInterval::is_exact)
    }

    /// Whether `d_q/q >= d_p/p` for every `q < p`; `None` unless all of
    /// `d_1..=d_p` are exact.
    pub fn ratio_dominates(&self, p: i64) -> Option<bool> {
        let dp = self.exact(p)?;
        let mut holds = true;
        for q in 1..p {
            holds &= self.exact(q)? * p >= dp * q;
        }
        Some(holds)
    }

    /// Whether `d_q/q >= d_{q+1}/(q+1)` for every `q < n`; `None` unless all
    /// of `d_1..=d_n` are exact.
    pub fn chain_holds(&self, n: i64) -> Option<bool> {
        let mut holds = true;
        let mut prev = self.exact(1)?;
        for q in 1..n {
            let next = self.exact(q + 1)?;
            holds &= prev * (q + 1) >= next * q;
            prev = next;
        }
        Some(holds)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, GonalityEntry)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| (i as i64 + 1, *e))
    }
}

impl Serialize for GonalitySequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|(r, e)| EntryRecord {
            r,
            lo: e.lo,
            hi: e.hi,
        }))
    }
}

/// `(alpha, beta)` with `r = alpha(alpha+3)/2 - beta` and `0 <= beta <= alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoetherIndex {
    pub r: i64,
    pub alpha: i64,
    pub beta: i64,
}

pub fn noether_decompose(r: i64) -> NoetherIndex {
    assert!(r >= 1, "noether_decompose requires r >= 1");
    let mut alpha = 1;
    while alpha * (alpha + 3) / 2 < r {
        alpha += 1;
    }
    NoetherIndex {
        r,
        alpha,
        beta: alpha * (alpha + 3) / 2 - r,
    }
}

/// Brill-Noether upper bound, attained on a general curve.
pub fn brill_noether(genus: i64, r: i64) -> i64 {
    genus - floor_div(genus, r + 1) + r
}

/// Closed-form values for the family; `None` where no formula is known.
fn closed_form(spec: &CurveSpec, r_max: i64) -> Vec<Option<i64>> {
    let g = spec.genus();
    (1..=r_max)
        .map(|r| {
            if r >= g {
                return Some(r + g);
            }
            match *spec {
                CurveSpec::General { .. } => Some(brill_noether(g, r)),
                CurveSpec::Hyperelliptic { .. } => Some(2 * r),
                CurveSpec::Trigonal { .. } => Some(if r <= floor_div(g - 1, 3) {
                    3 * r
                } else {
                    r + g - 1 - floor_div(g - r - 1, 2)
                }),
                CurveSpec::GeneralKGonal { k: 4, .. } => Some(if g % 4 == 0 && r == g / 4 {
                    g - 1
                } else if r <= floor_div(g - 1, 4) {
                    4 * r
                } else {
                    r + g - 1 - floor_div(g - r - 1, 3)
                }),
                CurveSpec::GeneralKGonal { k, .. } => {
                    if r == 1 || r <= floor_div(floor_div(g - 4, 2), k - 2) {
                        Some(k * r)
                    } else {
                        None
                    }
                }
                CurveSpec::Bielliptic { .. } => Some(if r <= g - 3 {
                    2 * r + 2
                } else if r == g - 2 {
                    2 * g - 3
                } else {
                    2 * g - 2
                }),
                CurveSpec::SmoothPlane { degree } => {
                    let ni = noether_decompose(r);
                    Some(ni.alpha * degree - ni.beta)
                }
                CurveSpec::GeneralNodalPlane { degree, .. } => match r {
                    1 => Some(degree - 2),
                    2 => Some(degree),
                    _ => None,
                },
                CurveSpec::Custom(_) => None,
            }
        })
        .collect()
}

/// Computes the sequence for `r = 1..=r_max`, extending `r_max` to cover any
/// custom assertion.
pub fn gonality_sequence(spec: &CurveSpec, r_max: i64) -> Result<GonalitySequence, SequenceError> {
    if r_max < 1 {
        return Err(SequenceError::EmptyRange);
    }
    let g = spec.genus();
    let mut r_max = r_max;
    if let CurveSpec::Custom(c) = spec {
        r_max = c.assertions.iter().map(|&(r, _)| r).fold(r_max, i64::max);
    }
    let closed = closed_form(spec, r_max);
    let mut state = Propagator::new(g, r_max as usize);
    for (i, value) in closed.iter().enumerate() {
        if let Some(v) = *value {
            state.pin(i, v, SequenceLemma::Asserted)?;
        }
    }
    if let CurveSpec::Custom(c) = spec {
        for &(r, v) in &c.assertions {
            state.pin((r - 1) as usize, v, SequenceLemma::Asserted)?;
        }
    }
    let gamma1 = if spec.gamma1_is_certain() {
        spec.stated_gamma1()
    } else {
        None
    };
    let seq = state.run(gamma1)?;
    if closed.iter().all(Option::is_some) {
        check_pencil_multiples(&seq)?;
    }
    Ok(seq)
}

/// Tightens every entry to the fixpoint of the sequence axioms.
///
/// `gamma1` enables the lower bound `d_r >= min(gamma1 + 2r, g + r - 1)`.
pub fn propagate_intervals(
    seq: &GonalitySequence,
    gamma1: Option<i64>,
) -> Result<GonalitySequence, SequenceError> {
    let mut state = Propagator::new(seq.genus, seq.entries.len());
    for (i, e) in seq.entries.iter().enumerate() {
        state.raise(i, e.lo, SequenceLemma::Asserted)?;
        state.lower(i, e.hi, SequenceLemma::Asserted)?;
    }
    state.run(gamma1)
}

struct Propagator {
    genus: i64,
    lo: Vec<i64>,
    hi: Vec<i64>,
    lo_by: Vec<SequenceLemma>,
    hi_by: Vec<SequenceLemma>,
    changed: bool,
}

impl Propagator {
    fn new(genus: i64, len: usize) -> Propagator {
        let mut p = Propagator {
            genus,
            lo: vec![1; len],
            hi: Vec::with_capacity(len),
            lo_by: vec![SequenceLemma::StrictMonotone; len],
            hi_by: vec![SequenceLemma::BrillNoether; len],
            changed: false,
        };
        for i in 0..len {
            p.hi.push(brill_noether(genus, i as i64 + 1));
        }
        p
    }

    fn conflict(&self, i: usize) -> Result<(), SequenceError> {
        if self.lo[i] > self.hi[i] {
            return Err(SequenceError::Inconsistent {
                r: i as i64 + 1,
                lo: self.lo[i],
                hi: self.hi[i],
                lower_by: self.lo_by[i],
                upper_by: self.hi_by[i],
            });
        }
        Ok(())
    }

    fn raise(&mut self, i: usize, v: i64, why: SequenceLemma) -> Result<(), SequenceError> {
        if v > self.lo[i] {
            self.lo[i] = v;
            self.lo_by[i] = why;
            self.changed = true;
            self.conflict(i)?;
        }
        Ok(())
    }

    fn lower(&mut self, i: usize, v: i64, why: SequenceLemma) -> Result<(), SequenceError> {
        if v < self.hi[i] {
            self.hi[i] = v;
            self.hi_by[i] = why;
            self.changed = true;
            self.conflict(i)?;
        }
        Ok(())
    }

    fn pin(&mut self, i: usize, v: i64, why: SequenceLemma) -> Result<(), SequenceError> {
        self.raise(i, v, why)?;
        self.lower(i, v, why)
    }

    fn run(mut self, gamma1: Option<i64>) -> Result<GonalitySequence, SequenceError> {
        let g = self.genus;
        let len = self.lo.len();
        for i in 0..len {
            let r = i as i64 + 1;
            if r < g {
                self.raise(i, 2 * r, SequenceLemma::CliffordBound)?;
            }
            if r == g - 1 {
                self.pin(i, 2 * g - 2, SequenceLemma::CanonicalDegree)?;
            }
            if r >= g {
                self.pin(i, r + g, SequenceLemma::RiemannRoch)?;
            }
            self.lower(i, r * (g - 1), SequenceLemma::LinearUpper)?;
            if let Some(c) = gamma1 {
                self.raise(
                    i,
                    (c + 2 * r).min(g + r - 1),
                    SequenceLemma::CliffordIndexLower,
                )?;
            }
        }
        let cap = 10 * len as i64;
        let mut sweeps = 0;
        loop {
            self.changed = false;
            for i in 1..len {
                self.raise(i, self.lo[i - 1] + 1, SequenceLemma::StrictMonotone)?;
            }
            for i in (0..len.saturating_sub(1)).rev() {
                self.lower(i, self.hi[i + 1] - 1, SequenceLemma::StrictMonotone)?;
            }
            // index i holds d_{i+1}; d_{a+b} sits at a + b + 1 for indices a, b
            for a in 0..len {
                for b in a..len {
                    let sum = a + b + 1;
                    if sum >= len {
                        break;
                    }
                    self.lower(sum, self.hi[a] + self.hi[b], SequenceLemma::Subadditive)?;
                    self.raise(a, self.lo[sum] - self.hi[b], SequenceLemma::Subadditive)?;
                    self.raise(b, self.lo[sum] - self.hi[a], SequenceLemma::Subadditive)?;
                }
            }
            if !self.changed {
                break;
            }
            sweeps += 1;
            if sweeps > cap {
                return Err(SequenceError::NoFixpoint(cap));
            }
        }
        Ok(GonalitySequence {
            genus: g,
            entries: self
                .lo
                .iter()
                .zip(&self.hi)
                .map(|(&lo, &hi)| IntInterval { lo, hi })
                .collect(),
        })
    }
}

fn check_pencil_multiples(seq: &GonalitySequence) -> Result<(), SequenceError> {
    let Some(d1) = seq.exact(1) else {
        return Ok(());
    };
    let len = seq.r_max();
    for r in 1..=len {
        for s in r..=len - r {
            let (Some(dr), Some(ds), Some(drs)) = (seq.exact(r), seq.exact(s), seq.exact(r + s))
            else {
                continue;
            };
            if dr + ds != drs {
                continue;
            }
            for m in 1..=r + s {
                if let Some(dm) = seq.exact(m) {
                    if dm != m * d1 {
                        return Err(SequenceError::Inconsistent {
                            r: m,
                            lo: dm,
                            hi: m * d1,
                            lower_by: SequenceLemma::PencilMultiple,
                            upper_by: SequenceLemma::PencilMultiple,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A violated axiom on the exact entries of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub r: i64,
    pub lemma: SequenceLemma,
}

/// Checks the six sequence axioms on exact entries only.
pub fn check_axioms(seq: &GonalitySequence) -> Vec<AxiomViolation> {
    let g = seq.genus;
    let len = seq.r_max();
    let mut out = Vec::new();
    let mut flag = |r, lemma| out.push(AxiomViolation { r, lemma });
    for r in 1..=len {
        let Some(d) = seq.exact(r) else { continue };
        if let Some(next) = seq.exact(r + 1) {
            if next <= d {
                flag(r, SequenceLemma::StrictMonotone);
            }
        }
        if r >= g && d != r + g {
            flag(r, SequenceLemma::RiemannRoch);
        }
        if r < g && d < 2 * r {
            flag(r, SequenceLemma::CliffordBound);
        }
        if r == g - 1 && d != 2 * g - 2 {
            flag(r, SequenceLemma::CanonicalDegree);
        }
        if d > brill_noether(g, r) {
            flag(r, SequenceLemma::BrillNoether);
        }
        if d > r * (g - 1) {
            flag(r, SequenceLemma::LinearUpper);
        }
        for s in 1..=r.min(len - r) {
            if let (Some(ds), Some(drs)) = (seq.exact(s), seq.exact(r + s)) {
                if drs > d + ds {
                    flag(r + s, SequenceLemma::Subadditive);
                }
            }
        }
    }
    out
}

/// `gamma_1` as the minimum of `d_r - 2r` over indices with `d_r <= g + r - 2`.
pub fn gamma1_from_sequence(seq: &GonalitySequence) -> Result<IntInterval, SequenceError> {
    let g = seq.genus;
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for (r, e) in seq.iter() {
        let bound = g + r - 2;
        if e.lo <= bound {
            let v = e.lo - 2 * r;
            lo = Some(lo.map_or(v, |x| x.min(v)));
        }
        if e.hi <= bound {
            let v = e.hi - 2 * r;
            hi = Some(hi.map_or(v, |x| x.min(v)));
        }
    }
    let lo = lo.ok_or(SequenceError::NoEligibleIndex)?;
    let hi = hi.unwrap_or(floor_div(g - 1, 2)).min(floor_div(g - 1, 2));
    let lo = lo.max(0);
    if lo > hi {
        return Err(SequenceError::NoEligibleIndex);
    }
    Ok(IntInterval { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CustomCurve;

    fn values(spec: CurveSpec, n: i64) -> Vec<i64> {
        let seq = gonality_sequence(&spec, 3 * spec.genus()).unwrap();
        (1..=n).map(|r| seq.exact(r).unwrap()).collect()
    }

    #[test]
    fn noether_indices() {
        let ni = |r| {
            let x = noether_decompose(r);
            (x.alpha, x.beta)
        };
        assert_eq!(ni(1), (1, 1));
        assert_eq!(ni(3), (2, 2));
        assert_eq!(ni(5), (2, 0));
        assert_eq!(ni(2), (1, 0));
        assert_eq!(ni(6), (3, 3));
    }

    #[test]
    fn noether_uniqueness_by_search() {
        for r in 1..200 {
            let found: Vec<_> = (1..30)
                .flat_map(|a| (0..=a).map(move |b| (a, b)))
                .filter(|&(a, b)| a * (a + 3) / 2 - b == r)
                .collect();
            let ni = noether_decompose(r);
            assert_eq!(found, vec![(ni.alpha, ni.beta)], "r = {r}");
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            values(CurveSpec::General { genus: 10 }, 5),
            [6, 9, 11, 12, 14]
        );
        assert_eq!(
            values(CurveSpec::Hyperelliptic { genus: 5 }, 6),
            [2, 4, 6, 8, 10, 11]
        );
        assert_eq!(
            values(CurveSpec::SmoothPlane { degree: 7 }, 5),
            [6, 7, 12, 13, 14]
        );
        assert_eq!(
            values(CurveSpec::Trigonal { genus: 10 }, 9),
            [3, 6, 9, 11, 12, 14, 15, 17, 18]
        );
        assert_eq!(
            values(CurveSpec::Bielliptic { genus: 7 }, 6),
            [4, 6, 8, 10, 11, 12]
        );
    }

    #[test]
    fn quadrigonal_exception() {
        let seq = values(CurveSpec::GeneralKGonal { genus: 12, k: 4 }, 11);
        assert_eq!(seq[2], 11);
        assert_eq!(seq[0..2], [4, 8]);
    }

    #[test]
    fn pentagonal_has_intervals() {
        let spec = CurveSpec::GeneralKGonal { genus: 20, k: 5 };
        let seq = gonality_sequence(&spec, 60).unwrap();
        assert_eq!(seq.exact(1), Some(5));
        assert_eq!(seq.exact(2), Some(10));
        assert!(!seq.get(3).unwrap().is_exact());
        assert_eq!(seq.exact(20), Some(40));
    }

    #[test]
    fn hyperelliptic_from_single_assertion() {
        let spec = CurveSpec::Custom(CustomCurve {
            genus: 6,
            gamma1: None,
            assertions: vec![(1, 2)],
        });
        let seq = gonality_sequence(&spec, 18).unwrap();
        for r in 1..=5 {
            assert_eq!(seq.exact(r), Some(2 * r));
        }
    }

    #[test]
    fn clifford_bound_violation_is_named() {
        let spec = CurveSpec::Custom(CustomCurve {
            genus: 10,
            gamma1: None,
            assertions: vec![(2, 3)],
        });
        let err = gonality_sequence(&spec, 30).unwrap_err();
        match &err {
            SequenceError::Inconsistent { r, lower_by, .. } => {
                assert_eq!(*r, 2);
                assert_eq!(*lower_by, SequenceLemma::CliffordBound);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("Clifford bound 2r <= d_r"));
    }

    #[test]
    fn propagation_is_idempotent_on_exact_data() {
        let seq = gonality_sequence(&CurveSpec::General { genus: 11 }, 33).unwrap();
        assert_eq!(propagate_intervals(&seq, Some(5)).unwrap(), seq);
    }

    #[test]
    fn gamma1_examples() {
        let g1 = |spec: CurveSpec| {
            let seq = gonality_sequence(&spec, 3 * spec.genus()).unwrap();
            gamma1_from_sequence(&seq).unwrap()
        };
        assert_eq!(g1(CurveSpec::General { genus: 10 }), IntInterval::exact(4));
        assert_eq!(
            g1(CurveSpec::SmoothPlane { degree: 7 }),
            IntInterval::exact(3)
        );
        assert_eq!(
            g1(CurveSpec::Hyperelliptic { genus: 8 }),
            IntInterval::exact(0)
        );
    }

    #[test]
    fn sequence_serializes_as_records() {
        let seq = gonality_sequence(&CurveSpec::Hyperelliptic { genus: 4 }, 2).unwrap();
        let json = serde_json::to_string(&seq).unwrap();
        assert_eq!(json, r#"[{"r":1,"lo":2,"hi":2},{"r":2,"lo":4,"hi":4}]"#);
    }
}

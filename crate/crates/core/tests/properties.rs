mod common;

use proptest::prelude::*;

use cliffordix::bounds::{gamma_of, h0_upper, BundleClass, RankFacts, RuleId};
use cliffordix::clifford::{universal_upper, CliffordEngine};
use cliffordix::constructions::achievable_points;
use cliffordix::gonality::{check_axioms, propagate_intervals, GonalitySequence, IntInterval};
use cliffordix::mercat::{mercat_check, Regime, Status};
use cliffordix::oracle::{feasible_points, oracle_min_gamma, Threshold};
use cliffordix::{floor_div, rat, Curve, CurveSpec, Rational};

fn family() -> impl Strategy<Value = CurveSpec> {
    prop_oneof![
        (4i64..=40).prop_map(|genus| CurveSpec::General { genus }),
        (4i64..=40).prop_map(|genus| CurveSpec::Hyperelliptic { genus }),
        (4i64..=40).prop_map(|genus| CurveSpec::Trigonal { genus }),
        (5i64..=40).prop_map(|genus| CurveSpec::Bielliptic { genus }),
        (5i64..=40, 4i64..=7).prop_filter_map("gonality too large", |(genus, k)| {
            (k <= floor_div(genus + 3, 2)).then_some(CurveSpec::GeneralKGonal { genus, k })
        }),
        (5i64..=10).prop_map(|degree| CurveSpec::SmoothPlane { degree }),
        (7i64..=10, 1i64..=10).prop_filter_map("too many nodes", |(degree, nodes)| {
            (nodes <= cliffordix::curve::max_nodes(degree)
                && degree * degree - 3 * degree + 2 - 2 * nodes >= 8)
                .then_some(CurveSpec::GeneralNodalPlane { degree, nodes })
        }),
    ]
}

fn curve(spec: &CurveSpec) -> Curve {
    Curve::new(spec.clone()).unwrap()
}

fn within(inner: IntInterval, outer: IntInterval) -> bool {
    outer.lo <= inner.lo && inner.hi <= outer.hi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn propagation_is_idempotent(spec in family()) {
        let c = curve(&spec);
        let gamma1 = c.gamma1().as_exact();
        for hint in [None, gamma1] {
            let once = propagate_intervals(&c.sequence, hint).unwrap();
            prop_assert_eq!(&propagate_intervals(&once, hint).unwrap(), &once);
            for (r, e) in once.iter() {
                prop_assert!(within(e, c.sequence.get(r).unwrap()));
            }
        }
        prop_assert_eq!(&propagate_intervals(&c.sequence, None).unwrap(), &c.sequence);
        prop_assert!(check_axioms(&c.sequence).is_empty());
    }

    #[test]
    fn propagation_never_widens(genus in 4i64..=30, seed in prop::collection::vec((0i64..60, 0i64..4), 1..6)) {
        // tighten a few upper ends of the unconstrained fixpoint
        let len = 3 * genus;
        let entries: Vec<IntInterval> = (1..=len)
            .map(|_| IntInterval::new(1, 10 * len))
            .collect();
        let base = propagate_intervals(&GonalitySequence::from_entries(genus, entries), None).unwrap();
        let mut entries: Vec<IntInterval> = base.iter().map(|(_, e)| e).collect();
        for (idx, cut) in seed {
            let i = (idx % len) as usize;
            let e = entries[i];
            let hi = (e.hi - cut).max(e.lo);
            entries[i] = IntInterval::new(e.lo, hi);
        }
        let seq = GonalitySequence::from_entries(genus, entries.clone());
        if let Ok(out) = propagate_intervals(&seq, None) {
            for (r, e) in out.iter() {
                prop_assert!(within(e, entries[(r - 1) as usize]), "r={} {} vs {}", r, e, entries[(r - 1) as usize]);
                prop_assert!(within(e, base.get(r).unwrap()));
            }
        }
    }

    #[test]
    fn h0_upper_respects_clifford(spec in family(), n in 1i64..=8, frac in 0.0f64..1.0) {
        let c = curve(&spec);
        let g = c.genus();
        let d = (frac * (n * (2 * g - 2)) as f64) as i64;
        let b = h0_upper(&c, n, d);
        prop_assert!(b.bound <= floor_div(d, 2) + n);
        prop_assert!(b.bound >= 0);
        prop_assert_eq!(RankFacts::new(&c, n).bound(d), b.bound);
        prop_assert!(!b.provenance.is_empty());
        for rule in &b.provenance {
            let hit = b.outcomes.iter().find(|o| o.rule == *rule).unwrap();
            prop_assert_eq!(hit.bound, Some(b.bound));
        }
    }

    #[test]
    fn m4_region_has_gamma_at_least_two(spec in family(), n in 1i64..=8, frac in 0.0f64..1.0) {
        let c = curve(&spec);
        let g = c.genus();
        let d = (frac * (n * (2 * g - 2)) as f64) as i64;
        let b = h0_upper(&c, n, d);
        let m4 = b.outcomes.iter().find(|o| o.rule == RuleId::M4).and_then(|o| o.bound);
        if let Some(h0) = m4 {
            prop_assert!(gamma_of(&BundleClass::new(n, d, h0)) >= Rational::from_int(2));
        }
    }

    #[test]
    fn h0_upper_monotone_per_rule(spec in family(), n in 1i64..=6) {
        let c = curve(&spec);
        let g = c.genus();
        let facts = RankFacts::new(&c, n);
        let mut last: Vec<Option<i64>> = vec![None; RuleId::ALL.len()];
        for d in 0..=n * (2 * g - 2) {
            let b = facts.h0_upper(d);
            for (slot, o) in last.iter_mut().zip(&b.outcomes) {
                if let (Some(prev), Some(cur)) = (*slot, o.bound) {
                    prop_assert!(cur >= prev, "{:?} drops at d={}", o.rule, d);
                }
                *slot = o.bound;
            }
        }
    }

    #[test]
    fn constructions_respect_bounds(spec in family(), n in 1i64..=10) {
        let c = curve(&spec);
        let facts = RankFacts::new(&c, n);
        let points = achievable_points(&c, n);
        prop_assert!(points.iter().any(|e| e.source == cliffordix::constructions::ConstructionId::BrillNoether
            && e.bundle.h0 == n + 1));
        for e in points {
            prop_assert!(e.bundle.h0 <= facts.bound(e.bundle.d), "{:?}", e);
        }
    }

    #[test]
    fn pencil_multiples_reach_two_n(spec in family(), n in 1i64..=10) {
        let c = curve(&spec);
        if let (Some(d1), Some(dn)) = (c.d(1), c.d(n)) {
            if dn == n * d1 {
                let b = h0_upper(&c, n, dn);
                prop_assert!(b.bound >= 2 * n);
                let at = b.outcomes.iter().find(|o| o.rule == RuleId::AtDn).and_then(|o| o.bound);
                if let Some(v) = at {
                    prop_assert!(v > n);
                }
            }
        }
    }

    #[test]
    fn divisibility_is_monotone(spec in family(), p in 1i64..=6, m in 2i64..=4) {
        let c = curve(&spec);
        let e = CliffordEngine::new(&c);
        let n = p * m;
        prop_assert!(e.gamma_n(n).unwrap().hi <= e.gamma_n(p).unwrap().hi);
        prop_assert!(e.gamma_n_prime(n).unwrap().hi <= e.gamma_n_prime(p).unwrap().hi);
    }

    #[test]
    fn results_within_universal_bounds(spec in family(), n in 1i64..=50) {
        let c = curve(&spec);
        let e = CliffordEngine::new(&c);
        let res = e.gamma_n(n).unwrap();
        prop_assert!(res.lo >= Rational::ZERO);
        prop_assert!(res.lo <= res.hi);
        prop_assert!(res.hi <= universal_upper(c.genus(), n));
        prop_assert!(res.hi <= e.gamma_n_prime(n).unwrap().hi);
    }

    #[test]
    fn high_rank_decreases_to_one(spec in family(), m in 1i64..=30) {
        let c = curve(&spec);
        prop_assume!(c.gamma1().lo >= 2);
        let g = c.genus();
        let e = CliffordEngine::new(&c);
        let (a, b) = (e.gamma_n(g + m).unwrap(), e.gamma_n(g + m + 1).unwrap());
        prop_assert!(b.hi < a.hi);
        prop_assert!(b.hi > Rational::from_int(1));
        prop_assert_eq!(a.exact(), Some(rat(1, 1) + rat(g - 2, g + m)));
    }

    #[test]
    fn general_curves_below_gamma1(g in 7i64..=60, n in 3i64..=40) {
        let c = curve(&CurveSpec::General { genus: g });
        let res = CliffordEngine::new(&c).gamma_n(n).unwrap();
        prop_assert!(res.hi < Rational::from_int(floor_div(g - 1, 2)));
    }

    #[test]
    fn oracle_argmin_above_genus(spec in family(), m in 1i64..=6) {
        let c = curve(&spec);
        prop_assume!(c.gamma1().lo >= 2 && c.sequence.is_fully_exact());
        let n = c.genus() + m;
        let o = oracle_min_gamma(&c, n, Threshold::Plain);
        prop_assert_eq!(o.argmin.map(|b| b.d), Some(n + c.genus()));
    }

    #[test]
    fn oracle_is_deterministic(spec in family(), n in 1i64..=12, prime in any::<bool>()) {
        let c = curve(&spec);
        let t = if prime { Threshold::Prime } else { Threshold::Plain };
        let a = oracle_min_gamma(&c, n, t);
        prop_assert_eq!(&a, &oracle_min_gamma(&c, n, t));
        let serial = feasible_points(&c, n, t)
            .into_iter()
            .min_by(|x, y| gamma_of(x).cmp(&gamma_of(y)).then(x.d.cmp(&y.d)));
        prop_assert_eq!(a.argmin, serial);
    }

    #[test]
    fn range_two_never_contributes(g in 5i64..=60, n in 1i64..=12, frac in 0.0f64..1.0, extra in 0i64..40) {
        let gamma1 = floor_div(g - 1, 2).min(((frac * 7.0) as i64).max(0));
        let span = (gamma1 + 2) * n - n;
        let d = n + ((frac * span as f64) as i64).min(span - 1).max(0);
        prop_assume!(d < (gamma1 + 2) * n);
        let b = BundleClass::new(n, d, extra);
        let v = mercat_check(g, gamma1, &b);
        prop_assert_eq!(v.regime, Regime::RangeII);
        if v.status == Status::Holds {
            prop_assert!(b.h0 < 2 * n);
        }
    }
}

/// Holds on every prime-feasible point forces the prime minimum to be at least
/// `gamma_1`; an exact `gamma_n' = gamma_1` makes every admissible point hold.
#[test]
fn mercat_equivalences_by_enumeration() {
    for spec in common::all_curves_up_to(16) {
        let c = curve(&spec);
        let Some(gamma1) = c.gamma1().as_exact() else {
            continue;
        };
        let g = c.genus();
        let e = CliffordEngine::new(&c);
        for n in 2..=6 {
            let points: Vec<BundleClass> = feasible_points(&c, n, Threshold::Prime);
            let holds = points
                .iter()
                .all(|b| mercat_check(g, gamma1, b).status != Status::Violated);
            if holds {
                if let Some(min) = points.iter().map(gamma_of).min() {
                    assert!(min >= Rational::from_int(gamma1), "{spec} n={n}: {min}");
                }
            }
            if e.gamma_n_prime(n).unwrap().exact() == Some(Rational::from_int(gamma1)) {
                for d in n..=n * (g - 1) {
                    for h0 in 2 * n..=d + n {
                        let b = BundleClass::new(n, d, h0);
                        let v = mercat_check(g, gamma1, &b);
                        if v.regime == Regime::RangeI && gamma_of(&b) >= Rational::from_int(gamma1)
                        {
                            assert_eq!(v.status, Status::Holds, "{spec} {b}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn built_in_axioms_hold() {
    for spec in common::all_curves_up_to(60) {
        let c = curve(&spec);
        assert!(check_axioms(&c.sequence).is_empty(), "{spec}");
    }
}

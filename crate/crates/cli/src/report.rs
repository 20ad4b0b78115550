//! Report documents and the per-curve computations behind each subcommand.

use serde::{Deserialize, Serialize};

use cliffordix::bounds::RankFacts;
use cliffordix::clifford::{CliffordEngine, CliffordResult};
use cliffordix::constructions::achievable_points;
use cliffordix::curve::known_gamma1;
use cliffordix::gonality::{check_axioms, gamma1_from_sequence};
use cliffordix::mercat::{verify_cor_d_le_dn, CorReport};
use cliffordix::oracle::{oracle_cross_check, CrossCheck};
use cliffordix::{Curve, CurveSpec, Error, IntInterval, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GonalityRow {
    pub r: i64,
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub n: i64,
    /// `None` past the computed sequence length.
    pub d_n: Option<IntInterval>,
    pub gamma_n: CliffordResult,
    pub gamma_n_prime: CliffordResult,
    pub mercat_conditional: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub curve: CurveSpec,
    pub genus: i64,
    pub gamma1: IntInterval,
    pub gonality: Vec<GonalityRow>,
    #[serde(default)]
    pub results: Vec<RankRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateDoc {
    pub curve: CurveSpec,
    pub genus: i64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub curve: CurveSpec,
    pub genus: i64,
    pub gamma1: IntInterval,
    pub checks: Vec<CrossCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MercatRow {
    pub gamma_n_prime: CliffordResult,
    pub corollary: CorReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MercatDoc {
    pub curve: CurveSpec,
    pub genus: i64,
    pub gamma1: IntInterval,
    pub ranks: Vec<MercatRow>,
}

/// Any report a subcommand can emit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Curve(CurveDoc),
    Validate(ValidateDoc),
    Oracle(OracleDoc),
    Mercat(MercatDoc),
}

impl Report {
    pub fn genus(&self) -> i64 {
        match self {
            Report::Curve(d) => d.genus,
            Report::Validate(d) => d.genus,
            Report::Oracle(d) => d.genus,
            Report::Mercat(d) => d.genus,
        }
    }

    /// Whether the report records a failed check.
    pub fn failed(&self) -> bool {
        match self {
            Report::Validate(d) => !d.passed,
            Report::Mercat(d) => d
                .ranks
                .iter()
                .any(|r| !r.corollary.counterexamples.is_empty()),
            Report::Curve(_) | Report::Oracle(_) => false,
        }
    }
}

fn gonality_rows(curve: &Curve) -> Vec<GonalityRow> {
    curve
        .sequence
        .iter()
        .map(|(r, e)| GonalityRow {
            r,
            lo: e.lo,
            hi: e.hi,
        })
        .collect()
}

/// The sequence and invariants only.
pub fn gonality_doc(curve: &Curve) -> CurveDoc {
    CurveDoc {
        curve: curve.spec.clone(),
        genus: curve.genus(),
        gamma1: curve.gamma1(),
        gonality: gonality_rows(curve),
        results: Vec::new(),
    }
}

pub fn compute_doc(curve: &Curve, ranks: &[i64]) -> Result<CurveDoc, Error> {
    let engine = CliffordEngine::new(curve);
    let results = ranks
        .iter()
        .map(|&n| {
            let gamma_n = engine.gamma_n(n)?;
            Ok(RankRow {
                n,
                d_n: curve.sequence.get(n),
                mercat_conditional: gamma_n.mercat_conditional,
                gamma_n,
                gamma_n_prime: engine.gamma_n_prime(n)?,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(CurveDoc {
        results,
        ..gonality_doc(curve)
    })
}

pub fn oracle_doc(curve: &Curve, ranks: &[i64]) -> Result<OracleDoc, Error> {
    let engine = CliffordEngine::new(curve);
    let checks = ranks
        .iter()
        .map(|&n| oracle_cross_check(&engine, n))
        .collect::<Result<_, Error>>()?;
    Ok(OracleDoc {
        curve: curve.spec.clone(),
        genus: curve.genus(),
        gamma1: curve.gamma1(),
        checks,
    })
}

pub fn mercat_doc(curve: &Curve, ranks: &[i64]) -> Result<MercatDoc, Error> {
    let engine = CliffordEngine::new(curve);
    let ranks = ranks
        .iter()
        .map(|&n| {
            Ok(MercatRow {
                gamma_n_prime: engine.gamma_n_prime(n)?,
                corollary: verify_cor_d_le_dn(curve, n),
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(MercatDoc {
        curve: curve.spec.clone(),
        genus: curve.genus(),
        gamma1: curve.gamma1(),
        ranks,
    })
}

fn check(name: &str, failures: Vec<String>) -> Check {
    Check {
        name: name.into(),
        passed: failures.is_empty(),
        failures,
    }
}

/// Runs every consistency suite that applies to the curve. A curve whose data
/// is inconsistent yields a single failed check naming the violated lemma.
pub fn validate_doc(spec: &CurveSpec, r_max: i64, ranks: &[i64]) -> ValidateDoc {
    let mut checks = Vec::new();
    match Curve::with_r_max(spec.clone(), r_max) {
        Err(e) => checks.push(check("gonality sequence", vec![e.to_string()])),
        Ok(curve) => {
            checks.push(check("gonality sequence", Vec::new()));
            checks.extend(curve_checks(&curve, ranks));
        }
    }
    ValidateDoc {
        curve: spec.clone(),
        genus: spec.genus(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn curve_checks(curve: &Curve, ranks: &[i64]) -> Vec<Check> {
    let seq = &curve.sequence;
    let mut out = Vec::new();

    let axioms = check_axioms(seq)
        .into_iter()
        .map(|v| format!("d_{}: {}", v.r, v.lemma))
        .collect();
    out.push(check("sequence axioms", axioms));

    let mut gamma1 = Vec::new();
    match (gamma1_from_sequence(seq), known_gamma1(&curve.spec)) {
        (Ok(derived), Ok(known)) => {
            if known.lo < derived.lo || known.hi > derived.hi {
                gamma1.push(format!("gamma_1 {known} outside derived {derived}"));
            }
        }
        (Err(e), _) => gamma1.push(e.to_string()),
        (_, Err(e)) => gamma1.push(e.to_string()),
    }
    out.push(check("gamma_1", gamma1));

    let mut constructions = Vec::new();
    for &n in ranks {
        let facts = RankFacts::new(curve, n);
        for e in achievable_points(curve, n) {
            let bound = facts.bound(e.bundle.d);
            if e.bundle.h0 > bound {
                constructions.push(format!(
                    "{} {} exceeds h0 bound {bound} ({})",
                    e.source,
                    e.bundle,
                    facts
                        .h0_upper(e.bundle.d)
                        .provenance
                        .iter()
                        .map(|r| r.tag())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
        }
    }
    out.push(check("constructions within h0 bounds", constructions));

    let engine = CliffordEngine::new(curve);
    let mut dispatch = Vec::new();
    let mut oracle = Vec::new();
    for &n in ranks {
        let claims = engine
            .generic_interval(n)
            .and_then(|(lo, hi)| Ok((lo, hi, engine.exact_claims(n)?)));
        match claims {
            Ok((lo, hi, claims)) => {
                for (v, tag) in claims {
                    if v < lo || v > hi {
                        dispatch.push(format!("n={n}: {tag} value {v} outside [{lo}, {hi}]"));
                    }
                }
            }
            Err(e) => dispatch.push(format!("n={n}: {e}")),
        }
        if let Err(e) = oracle_cross_check(&engine, n) {
            oracle.push(format!("n={n}: {e}"));
        }
    }
    out.push(check("exact values within generic bounds", dispatch));
    out.push(check("oracle soundness", oracle));

    let mut divisibility = Vec::new();
    for &n in ranks {
        for p in (1..n).filter(|p| n % p == 0) {
            let pairs = [
                ("gamma", engine.gamma_n(n), engine.gamma_n(p)),
                ("gamma'", engine.gamma_n_prime(n), engine.gamma_n_prime(p)),
            ];
            for (which, a, b) in pairs {
                if let (Ok(a), Ok(b)) = (a, b) {
                    if a.hi > b.hi {
                        divisibility.push(format!(
                            "{which}_{n} upper {} above {which}_{p} upper {}",
                            a.hi, b.hi
                        ));
                    }
                }
            }
        }
    }
    out.push(check("divisibility", divisibility));
    out
}

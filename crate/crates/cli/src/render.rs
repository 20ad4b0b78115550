//! Text, JSON and CSV rendering of reports.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

use cliffordix::clifford::CliffordResult;
use cliffordix::oracle::CheckStatus;
use cliffordix::IntInterval;

use crate::report::{CurveDoc, MercatDoc, OracleDoc, Report, ValidateDoc};

/// A single report renders as an object, a batch as an array.
pub fn json(reports: &[Report], batch: bool) -> Result<String> {
    let mut out = if batch {
        serde_json::to_string_pretty(reports)?
    } else {
        serde_json::to_string_pretty(&reports[0])?
    };
    out.push('\n');
    Ok(out)
}

fn interval(e: Option<IntInterval>) -> String {
    match e {
        Some(e) if e.is_exact() => e.lo.to_string(),
        Some(e) => format!("[{}, {}]", e.lo, e.hi),
        None => "-".into(),
    }
}

fn sources(res: &CliffordResult) -> String {
    let mut tags: Vec<&str> = Vec::new();
    for s in &res.sources {
        if !tags.contains(&s.tag.tag()) {
            tags.push(s.tag.tag());
        }
    }
    tags.join(" ")
}

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Equal => "equal",
        CheckStatus::StrictGap => "strict_gap",
        CheckStatus::WithinInterval => "within_interval",
        CheckStatus::Infeasible => "infeasible",
    }
}

fn header(out: &mut String, curve: &impl std::fmt::Display, genus: i64, gamma1: IntInterval) {
    let _ = writeln!(
        out,
        "{curve}: genus {genus}, gamma_1 = {}",
        interval(Some(gamma1))
    );
}

fn curve_table(out: &mut String, doc: &CurveDoc) {
    header(out, &doc.curve, doc.genus, doc.gamma1);
    if doc.results.is_empty() {
        let _ = writeln!(out, "{:>4}  {:>10}", "r", "d_r");
        for row in &doc.gonality {
            let _ = writeln!(
                out,
                "{:>4}  {:>10}",
                row.r,
                interval(Some(IntInterval::new(row.lo, row.hi)))
            );
        }
        return;
    }
    let _ = writeln!(
        out,
        "{:>4}  {:>10}  {:>14}  {:>14}  {:>11}  sources",
        "n", "d_n", "gamma_n", "gamma_n'", "conditional"
    );
    for row in &doc.results {
        let cond = row.mercat_conditional.map_or("-".into(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{:>4}  {:>10}  {:>14}  {:>14}  {:>11}  {}",
            row.n,
            interval(row.d_n),
            row.gamma_n.to_string(),
            row.gamma_n_prime.to_string(),
            cond,
            sources(&row.gamma_n)
        );
    }
}

fn validate_table(out: &mut String, doc: &ValidateDoc) {
    let verdict = if doc.passed { "pass" } else { "FAIL" };
    let _ = writeln!(out, "{}: genus {}, {verdict}", doc.curve, doc.genus);
    for c in &doc.checks {
        let _ = writeln!(
            out,
            "  [{}] {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name
        );
        for f in &c.failures {
            let _ = writeln!(out, "        {f}");
        }
    }
}

fn oracle_table(out: &mut String, doc: &OracleDoc) {
    header(out, &doc.curve, doc.genus, doc.gamma1);
    let _ = writeln!(
        out,
        "{:>4}  {:>14}  {:>10}  {:>15}  {:>14}  {:>10}  {:>15}",
        "n", "gamma_n", "oracle", "status", "gamma_n'", "oracle'", "status'"
    );
    for c in &doc.checks {
        let oracle = |v: Option<cliffordix::Rational>| v.map_or("-".into(), |v| v.to_string());
        let _ = writeln!(
            out,
            "{:>4}  {:>14}  {:>10}  {:>15}  {:>14}  {:>10}  {:>15}",
            c.n,
            c.gamma_n.result.to_string(),
            oracle(c.gamma_n.oracle.min_gamma),
            status(c.gamma_n.status),
            c.gamma_n_prime.result.to_string(),
            oracle(c.gamma_n_prime.oracle.min_gamma),
            status(c.gamma_n_prime.status),
        );
    }
}

fn mercat_table(out: &mut String, doc: &MercatDoc) {
    header(out, &doc.curve, doc.genus, doc.gamma1);
    let _ = writeln!(
        out,
        "{:>4}  {:>14}  {:>8}  {:>8}  note",
        "n", "gamma_n'", "checked", "failing"
    );
    for row in &doc.ranks {
        let c = &row.corollary;
        let note = match (&c.reason, c.counterexamples.first()) {
            (Some(reason), _) => reason.clone(),
            (None, Some(b)) => format!("first counterexample {b}"),
            (None, None) => "conjectured bounds hold for d <= d_n".into(),
        };
        let _ = writeln!(
            out,
            "{:>4}  {:>14}  {:>8}  {:>8}  {note}",
            c.n,
            row.gamma_n_prime.to_string(),
            c.checked,
            c.counterexamples.len()
        );
    }
}

pub fn table(reports: &[Report]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match r {
            Report::Curve(d) => curve_table(&mut out, d),
            Report::Validate(d) => validate_table(&mut out, d),
            Report::Oracle(d) => oracle_table(&mut out, d),
            Report::Mercat(d) => mercat_table(&mut out, d),
        }
    }
    out
}

#[derive(Serialize)]
struct ResultRecord<'a> {
    family: &'a str,
    genus: i64,
    n: i64,
    d_n_lo: Option<i64>,
    d_n_hi: Option<i64>,
    gamma_n_kind: &'static str,
    gamma_n_lo: String,
    gamma_n_hi: String,
    gamma_n_prime_kind: &'static str,
    gamma_n_prime_lo: String,
    gamma_n_prime_hi: String,
    mercat_conditional: Option<String>,
    sources: String,
}

#[derive(Serialize)]
struct GonalityRecord<'a> {
    family: &'a str,
    genus: i64,
    r: i64,
    lo: i64,
    hi: i64,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    family: &'a str,
    genus: i64,
    check: &'a str,
    passed: bool,
    failures: String,
}

#[derive(Serialize)]
struct OracleRecord<'a> {
    family: &'a str,
    genus: i64,
    n: i64,
    threshold: i64,
    lo: String,
    hi: String,
    oracle: Option<String>,
    argmin_d: Option<i64>,
    status: &'static str,
}

#[derive(Serialize)]
struct MercatRecord<'a> {
    family: &'a str,
    genus: i64,
    n: i64,
    applicable: bool,
    checked: usize,
    counterexamples: usize,
}

fn kind(r: &CliffordResult) -> &'static str {
    if r.is_exact() {
        "exact"
    } else {
        "interval"
    }
}

pub fn csv(reports: &[Report]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for report in reports {
        match report {
            Report::Curve(d) if d.results.is_empty() => {
                for row in &d.gonality {
                    w.serialize(GonalityRecord {
                        family: d.curve.family_name(),
                        genus: d.genus,
                        r: row.r,
                        lo: row.lo,
                        hi: row.hi,
                    })?;
                }
            }
            Report::Curve(d) => {
                for row in &d.results {
                    w.serialize(ResultRecord {
                        family: d.curve.family_name(),
                        genus: d.genus,
                        n: row.n,
                        d_n_lo: row.d_n.map(|e| e.lo),
                        d_n_hi: row.d_n.map(|e| e.hi),
                        gamma_n_kind: kind(&row.gamma_n),
                        gamma_n_lo: row.gamma_n.lo.to_string(),
                        gamma_n_hi: row.gamma_n.hi.to_string(),
                        gamma_n_prime_kind: kind(&row.gamma_n_prime),
                        gamma_n_prime_lo: row.gamma_n_prime.lo.to_string(),
                        gamma_n_prime_hi: row.gamma_n_prime.hi.to_string(),
                        mercat_conditional: row.mercat_conditional.map(|v| v.to_string()),
                        sources: sources(&row.gamma_n),
                    })?;
                }
            }
            Report::Validate(d) => {
                for c in &d.checks {
                    w.serialize(CheckRecord {
                        family: d.curve.family_name(),
                        genus: d.genus,
                        check: &c.name,
                        passed: c.passed,
                        failures: c.failures.join("; "),
                    })?;
                }
            }
            Report::Oracle(d) => {
                for c in &d.checks {
                    for cmp in [&c.gamma_n, &c.gamma_n_prime] {
                        w.serialize(OracleRecord {
                            family: d.curve.family_name(),
                            genus: d.genus,
                            n: c.n,
                            threshold: cmp.oracle.threshold,
                            lo: cmp.result.lo.to_string(),
                            hi: cmp.result.hi.to_string(),
                            oracle: cmp.oracle.min_gamma.map(|v| v.to_string()),
                            argmin_d: cmp.oracle.argmin.map(|b| b.d),
                            status: status(cmp.status),
                        })?;
                    }
                }
            }
            Report::Mercat(d) => {
                for row in &d.ranks {
                    w.serialize(MercatRecord {
                        family: d.curve.family_name(),
                        genus: d.genus,
                        n: row.corollary.n,
                        applicable: row.corollary.applicable,
                        checked: row.corollary.checked,
                        counterexamples: row.corollary.counterexamples.len(),
                    })?;
                }
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cliffordix::curve::CustomCurve;
use cliffordix::{Curve, CurveSpec, Error};
use cliffordix_cli::{render, report, Report};

#[derive(Parser)]
#[command(
    name = "cliffordix",
    version,
    about = "Clifford indices of vector bundles on algebraic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// gamma_n and gamma_n' per rank, with sources and conditional values.
    Compute(Run),
    /// The gonality sequence and gamma_1.
    Gonality(Run),
    /// Consistency suites for the curve; exits 1 if any fails.
    Validate(Run),
    /// Brute-force lower bounds compared with the closed forms.
    Oracle(Run),
    /// Exhaustive check of the conjectured h0 bounds for d <= d_n.
    Mercat(Run),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Action {
    Compute,
    Gonality,
    Validate,
    Oracle,
    Mercat,
}

#[derive(Args)]
struct Run {
    #[command(flatten)]
    curve: CurveArgs,
    /// Inclusive rank range `A..B`; defaults to `1..g+5`.
    #[arg(long, value_parser = parse_span)]
    ranks: Option<Span>,
    /// Length of the computed gonality sequence; defaults to `3g`.
    #[arg(long, env = "CLIFFORDIX_RMAX")]
    r_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, value_enum)]
    curve: Family,
    /// Genus, or an inclusive range `A..B` for a batch.
    #[arg(long, value_parser = parse_span)]
    genus: Option<Span>,
    /// Plane degree, or an inclusive range `A..B` for a batch.
    #[arg(long, value_parser = parse_span)]
    delta: Option<Span>,
    /// Gonality of a `kgonal` curve.
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    nodes: Option<i64>,
    /// Stated Clifford index of a `custom` curve.
    #[arg(long)]
    gamma1: Option<i64>,
    /// Known value `dR=V` of a `custom` curve; repeatable.
    #[arg(long = "assert", value_parser = parse_assertion)]
    assertions: Vec<(i64, i64)>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    General,
    Hyperelliptic,
    Trigonal,
    Kgonal,
    Bielliptic,
    Plane,
    Nodal,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    start: i64,
    end: i64,
}

impl Span {
    fn values(self) -> Vec<i64> {
        (self.start..=self.end).collect()
    }
}

fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("`{t}` is not an integer"))
    };
    let (start, end) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if start < 1 || start > end {
        return Err(format!(
            "`{s}` must be a non-empty range of positive integers"
        ));
    }
    Ok(Span { start, end })
}

fn parse_assertion(s: &str) -> Result<(i64, i64), String> {
    let err = || format!("`{s}` is not of the form dR=V");
    let (lhs, rhs) = s.split_once('=').ok_or_else(err)?;
    let r = lhs
        .trim()
        .strip_prefix('d')
        .ok_or_else(err)?
        .parse()
        .map_err(|_| err())?;
    let v = rhs.trim().parse().map_err(|_| err())?;
    Ok((r, v))
}

/// Input errors exit with 2, failed checks and inconsistent data with 1.
enum Failure {
    Input(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Curve(_) => Failure::Input(anyhow!(e)),
            _ => Failure::Check(anyhow!(e)),
        }
    }
}

impl CurveArgs {
    fn specs(&self) -> anyhow::Result<Vec<CurveSpec>> {
        let assertions = &self.assertions;
        let needs = |flag: &str| anyhow!("--curve {} requires --{flag}", self.family_flag());
        let genera = || self.genus.map(Span::values).ok_or_else(|| needs("genus"));
        let ignored = |flag: &str, set: bool| -> anyhow::Result<()> {
            if set {
                bail!("--{flag} does not apply to --curve {}", self.family_flag());
            }
            Ok(())
        };
        let plane = matches!(self.curve, Family::Plane | Family::Nodal);
        ignored("delta", !plane && self.delta.is_some())?;
        ignored("genus", plane && self.genus.is_some())?;
        ignored("k", self.curve != Family::Kgonal && self.k.is_some())?;
        ignored("nodes", self.curve != Family::Nodal && self.nodes.is_some())?;
        ignored(
            "gamma1/--assert",
            self.curve != Family::Custom && (self.gamma1.is_some() || !assertions.is_empty()),
        )?;
        let specs = match self.curve {
            Family::General => genera()?
                .into_iter()
                .map(|genus| CurveSpec::General { genus })
                .collect(),
            Family::Hyperelliptic => genera()?
                .into_iter()
                .map(|genus| CurveSpec::Hyperelliptic { genus })
                .collect(),
            Family::Trigonal => genera()?
                .into_iter()
                .map(|genus| CurveSpec::Trigonal { genus })
                .collect(),
            Family::Bielliptic => genera()?
                .into_iter()
                .map(|genus| CurveSpec::Bielliptic { genus })
                .collect(),
            Family::Kgonal => {
                let k = self.k.ok_or_else(|| needs("k"))?;
                genera()?
                    .into_iter()
                    .map(|genus| CurveSpec::GeneralKGonal { genus, k })
                    .collect()
            }
            Family::Custom => genera()?
                .into_iter()
                .map(|genus| {
                    CurveSpec::Custom(CustomCurve {
                        genus,
                        gamma1: self.gamma1,
                        assertions: assertions.to_vec(),
                    })
                })
                .collect(),
            Family::Plane | Family::Nodal => {
                let degrees = self.delta.map(Span::values).ok_or_else(|| needs("delta"))?;
                let nodes = match self.curve {
                    Family::Nodal => Some(self.nodes.ok_or_else(|| needs("nodes"))?),
                    _ => None,
                };
                let mut specs: Vec<CurveSpec> = degrees
                    .into_iter()
                    .map(|degree| match nodes {
                        Some(nodes) => CurveSpec::GeneralNodalPlane { degree, nodes },
                        None => CurveSpec::SmoothPlane { degree },
                    })
                    .collect();
                specs.sort_by_key(|s| s.genus());
                specs
            }
        };
        Ok(specs)
    }

    fn family_flag(&self) -> &'static str {
        match self.curve {
            Family::General => "general",
            Family::Hyperelliptic => "hyperelliptic",
            Family::Trigonal => "trigonal",
            Family::Kgonal => "kgonal",
            Family::Bielliptic => "bielliptic",
            Family::Plane => "plane",
            Family::Nodal => "nodal",
            Family::Custom => "custom",
        }
    }

    fn is_batch(&self) -> bool {
        let span = self.genus.or(self.delta);
        span.is_some_and(|s| s.start != s.end)
    }
}

fn report_for(action: Action, run: &Run, spec: &CurveSpec) -> Result<Report, Failure> {
    spec.validate()
        .map_err(|e| Failure::from(Error::Curve(e)))?;
    let g = spec.genus();
    let r_max = run.r_max.unwrap_or(3 * g.max(1));
    if r_max < 1 {
        return Err(Failure::Input(anyhow!("--r-max must be positive")));
    }
    let ranks = run
        .ranks
        .unwrap_or(Span {
            start: 1,
            end: g + 5,
        })
        .values();
    if action == Action::Validate {
        return Ok(Report::Validate(report::validate_doc(spec, r_max, &ranks)));
    }
    let curve = Curve::with_r_max(spec.clone(), r_max)?;
    Ok(match action {
        Action::Compute => Report::Curve(report::compute_doc(&curve, &ranks)?),
        Action::Gonality => Report::Curve(report::gonality_doc(&curve)),
        Action::Oracle => Report::Oracle(report::oracle_doc(&curve, &ranks)?),
        Action::Mercat => Report::Mercat(report::mercat_doc(&curve, &ranks)?),
        Action::Validate => unreachable!(),
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let (action, args) = match cli.command {
        Command::Compute(a) => (Action::Compute, a),
        Command::Gonality(a) => (Action::Gonality, a),
        Command::Validate(a) => (Action::Validate, a),
        Command::Oracle(a) => (Action::Oracle, a),
        Command::Mercat(a) => (Action::Mercat, a),
    };
    let specs = args.curve.specs().map_err(Failure::Input)?;
    let mut reports = specs
        .par_iter()
        .map(|spec| report_for(action, &args, spec).map_err(|f| annotate(f, spec)))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by_key(Report::genus);
    let text = match args.format {
        Format::Table => render::table(&reports),
        Format::Json => render::json(&reports, args.curve.is_batch()).map_err(Failure::Input)?,
        Format::Csv => render::csv(&reports).map_err(Failure::Input)?,
    };
    match &args.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::Input)?,
        None => print!("{text}"),
    }
    Ok(!reports.iter().any(Report::failed))
}

fn annotate(f: Failure, spec: &CurveSpec) -> Failure {
    match f {
        Failure::Input(e) => Failure::Input(e.context(spec.to_string())),
        Failure::Check(e) => Failure::Check(e.context(spec.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

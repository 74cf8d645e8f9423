//! Command-line driver: argument parsing, file formats and report rendering.

pub mod format;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use bimodule::bocs::{check_layer, detect_wild, p1_biquiver, to_biquiver, BocsError, WildCase, WildOutcome};
use bimodule::error::ParseError;
use bimodule::exactmath::Field;
use bimodule::ingest::{build_algebra, p1_problem, IngestError};
use bimodule::problem::{BimoduleProblem, ProblemError, Representation};
use bimodule::reduce::{decompose, is_isomorphic, reduce, ReduceError};
use bimodule::weyr::{weyr_of, WeyrError};

#[derive(Parser, Debug)]
#[command(name = "bimod", version, about = "Canonical forms and biquivers of bimodule matrix problems")]
pub struct Cli {
    /// Required field of every input (`q` or `gf:<p>`).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Print one line per reduction step.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Worker threads for commands taking several representations.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the projective-morphism problem of an algebra.
    Fromalg {
        #[arg(short, long)]
        algebra: PathBuf,
    },
    /// Canonical form of one or more representations.
    Canon {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(short = 'm', long = "rep", required = true)]
        reps: Vec<PathBuf>,
        /// Also print the transforming matrix.
        #[arg(long)]
        transform: bool,
    },
    /// Decide whether two representations are isomorphic.
    Iso {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(short = 'm', long)]
        first: PathBuf,
        #[arg(short = 'n', long)]
        second: PathBuf,
    },
    /// Indecomposable summands with multiplicities.
    Decompose {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(short = 'm', long = "rep", required = true)]
        reps: Vec<PathBuf>,
    },
    /// Weyr form of a square matrix.
    Weyr {
        #[arg(short, long)]
        matrix: PathBuf,
        #[arg(long)]
        transform: bool,
    },
    /// Differential biquiver of a problem, or of an algebra's morphism problem.
    Bocs {
        #[arg(short, long, conflicts_with = "algebra", required_unless_present = "algebra")]
        problem: Option<PathBuf>,
        #[arg(short, long)]
        algebra: Option<PathBuf>,
        /// Emit Graphviz instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Search for a wild configuration.
    Wild {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(long, default_value_t = bimodule::bocs::DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("error[non-split-spectrum]: {0}")]
    NonSplit(String),
    #[error("error[requires-basis-change]: {0}")]
    BasisChange(String),
    #[error("error[not-idempotent]: {0}")]
    NotIdempotent(String),
    #[error("error[domain]: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            _ => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.msg)
    }
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::Spectrum(w) => CliError::NonSplit(w.to_string()),
            ReduceError::NotIdempotent => CliError::NotIdempotent(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<WeyrError> for CliError {
    fn from(e: WeyrError) -> Self {
        match e {
            WeyrError::NonSplitSpectrum(_) => CliError::NonSplit(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<BocsError> for CliError {
    fn from(e: BocsError) -> Self {
        match e {
            BocsError::RequiresBasisChange { .. } => CliError::BasisChange(e.to_string()),
            BocsError::Reduce(r) => r.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

struct Session {
    field: Option<Field>,
}

impl Session {
    /// Fix the session field from the first input when none was given.
    fn settle(&mut self, f: Field) {
        self.field.get_or_insert(f);
    }

    fn problem(&mut self, path: &Path) -> Result<BimoduleProblem, CliError> {
        let (p, f) = format::parse_problem(&read(path)?, self.field)?;
        self.settle(f);
        Ok(p)
    }

    fn rep(&self, path: &Path, p: &BimoduleProblem) -> Result<Representation, CliError> {
        Ok(format::parse_representation(&read(path)?, p, self.field.expect("problem read first"))?)
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| CliError::Domain(e.to_string()))
}

fn canon_report(p: &BimoduleProblem, rep: &Representation, f: &Field, trace: bool, transform: bool) -> Result<String, CliError> {
    let red = reduce(p, rep, transform)?;
    let mut out = String::new();
    if trace {
        for (k, link) in red.trace.iter().enumerate() {
            out.push_str(&format!("# step {}: {}\n", k + 1, link.step));
        }
    }
    let form = &red.form;
    let classes: Vec<String> = form
        .partition
        .classes()
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let list = |v: &[usize], shift: usize| v.iter().map(|x| (x + shift).to_string()).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("# classes {}\n", classes.join(" ")));
    out.push_str(&format!("# multiplicities {}\n", list(&form.multiplicities, 0)));
    out.push_str(&format!("# origin {}\n", list(&form.origin, 1)));
    out.push_str(&format::emit_matrix(&form.matrix(), f));
    if let Some(s) = &red.form.transform {
        out.push_str("# transform\n");
        out.push_str(&format::emit_matrix(s, f));
    }
    Ok(out)
}

fn decompose_report(p: &BimoduleProblem, rep: &Representation, f: &Field) -> Result<String, CliError> {
    let parts = decompose(p, rep)?;
    let mut out = format!("# summands {}\n", parts.len());
    for (k, s) in parts.iter().enumerate() {
        out.push_str(&format!("# summand {} multiplicity {}\n", k + 1, s.multiplicity));
        out.push_str(&format::emit_representation(&s.rep, f));
    }
    Ok(out)
}

/// Run one command and return its report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let field = cli.field.as_deref().map(Field::parse_mode).transpose()?;
    let mut ses = Session { field };
    match &cli.command {
        Command::Fromalg { algebra } => {
            let (q, f) = format::parse_algebra(&read(algebra)?, field)?;
            let p = p1_problem(&build_algebra(&q)?)?;
            Ok(format::emit_problem(&p, &f))
        }
        Command::Canon { problem, reps, transform } => {
            let p = ses.problem(problem)?;
            let f = ses.field.unwrap();
            let inputs: Vec<Representation> = reps.iter().map(|r| ses.rep(r, &p)).collect::<Result<_, _>>()?;
            let reports: Vec<Result<String, CliError>> = pool(cli.jobs)?
                .install(|| inputs.par_iter().map(|r| canon_report(&p, r, &f, cli.trace, *transform)).collect());
            join(reps, reports)
        }
        Command::Iso { problem, first, second } => {
            let p = ses.problem(problem)?;
            let (a, b) = (ses.rep(first, &p)?, ses.rep(second, &p)?);
            Ok(format!("isomorphic: {}\n", is_isomorphic(&p, &a, &b)?))
        }
        Command::Decompose { problem, reps } => {
            let p = ses.problem(problem)?;
            let f = ses.field.unwrap();
            let inputs: Vec<Representation> = reps.iter().map(|r| ses.rep(r, &p)).collect::<Result<_, _>>()?;
            let reports: Vec<Result<String, CliError>> =
                pool(cli.jobs)?.install(|| inputs.par_iter().map(|r| decompose_report(&p, r, &f)).collect());
            join(reps, reports)
        }
        Command::Weyr { matrix, transform } => {
            let (m, f) = format::parse_matrix(&read(matrix)?, field)?;
            let (spec, s) = weyr_of(&m)?;
            let mut out = String::new();
            for b in &spec.blocks {
                let ms: Vec<String> = b.m().iter().map(|x| x.to_string()).collect();
                let es: Vec<String> = b.e.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("# eigenvalue {}: m = ({}), e = ({})\n", b.eigenvalue, ms.join(", "), es.join(", ")));
            }
            out.push_str(&format::emit_matrix(&spec.matrix(), &f));
            if *transform {
                out.push_str("# transform\n");
                out.push_str(&format::emit_matrix(&s, &f));
            }
            Ok(out)
        }
        Command::Bocs { problem, algebra, dot } => {
            let bq = match (problem, algebra) {
                (Some(p), _) => to_biquiver(&ses.problem(p)?),
                (None, Some(a)) => {
                    let (q, _) = format::parse_algebra(&read(a)?, field)?;
                    let alg = build_algebra(&q)?;
                    p1_biquiver(&alg, &p1_problem(&alg)?)
                }
                (None, None) => return Err(CliError::Parse("bocs needs --problem or --algebra".into())),
            };
            let report = check_layer(&bq)?;
            if *dot {
                return Ok(bq.to_dot());
            }
            Ok(format!(
                "{bq}# layer: triangular, {} solid, {} dotted, {} zero differentials\n",
                report.solid, report.dotted, report.zero_differentials
            ))
        }
        Command::Wild { problem, max_steps } => {
            let p = ses.problem(problem)?;
            let outcome = detect_wild(&p, *max_steps)?;
            let head = match &outcome {
                WildOutcome::Wild { verdict, .. } => match verdict.case {
                    WildCase::Case1 => "WILD (case 1: both endpoints parameterized, non-invertible differential)",
                    WildCase::Case2 => "WILD (case 2: one endpoint parameterized, zero differential)",
                },
                WildOutcome::NotDetected { .. } => "NOT DETECTED",
            };
            Ok(format!("{head}\n{outcome}"))
        }
    }
}

fn join(inputs: &[PathBuf], reports: Vec<Result<String, CliError>>) -> Result<String, CliError> {
    let mut out = String::new();
    let many = inputs.len() > 1;
    for (path, r) in inputs.iter().zip(reports) {
        if many {
            out.push_str(&format!("# input {}\n", path.display()));
        }
        out.push_str(&r?);
    }
    Ok(out)
}

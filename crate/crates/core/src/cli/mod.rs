//! The `schur-regions` command-line tool.
//!
//! Exit codes: 0 success, 1 malformed input or failed computation,
//! 2 infeasible problem (output is still written), 3 verification failure.

pub mod problem;
pub mod svg;

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ChainConfig;
use crate::divided::{build_table, table_diagonal, TableEntry};
use crate::hyperbolic::ExtendedComplex;
use crate::json;
use crate::oracle;
use crate::variability::{
    extremal_eval, schur_region, schur_solvability, MultipointClass, MultipointProblem, SolvabilityClass,
    VariabilityRegion,
};
use problem::{
    LoadedProblem, Problem, ProblemFile, QueryResult, RegionJson, RegionOutput, SolvabilityOutput, TableCell,
    TableOutput, ToleranceSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SCHUR_REGIONS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "schur-regions", version, about = "Variability regions for Schur-class interpolation problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Problem file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub tol_boundary: Option<f64>,

    #[arg(long, global = true)]
    pub tol_sep: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Indented JSON; for `table`, a text rendering of the triangle.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Variability region at every query point.
    Region,
    /// Triangular table of hyperbolic divided differences.
    Table,
    /// Classify the one-point problem (or the multipoint table).
    Solvability,
    /// SVG figure for the first query point.
    Plot {
        #[arg(long)]
        epsilon_samples: Option<usize>,
        /// Draw an M×M background grid.
        #[arg(long, default_value_t = 0)]
        grid: usize,
    },
    /// Run property suites and report residuals.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Membership,
    Confluence,
    All,
}

/// A failure that ends the command with a diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Self { code: EXIT_MALFORMED, message: message.into() }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::malformed(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to standard output.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::malformed(e.to_string()))
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let io = |e: std::io::Error| Failure::malformed(format!("cannot write {}: {e}", path.display()));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(contents.as_bytes()).map_err(io)?;
            tmp.as_file().sync_all().map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
            Ok(())
        }
    }
}

fn load(cli: &Cli) -> Result<LoadedProblem, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| Failure::malformed("--input is required"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("cannot read {}: {e}", path.display())))?;
    let file = ProblemFile::parse(&text).map_err(Failure::malformed)?;
    file.load(ToleranceSpec { boundary: cli.tol_boundary, separation: cli.tol_sep }).map_err(Failure::malformed)
}

fn serialize<T: Serialize>(value: &T, pretty: bool) -> Result<String, Failure> {
    json::to_string(value, pretty).map_err(|e| Failure::malformed(e.to_string()))
}

/// Regions for every query, with a flag for infeasible problems.
fn regions(loaded: &LoadedProblem) -> Result<(Vec<VariabilityRegion>, bool), Failure> {
    match &loaded.problem {
        Problem::Multipoint(data) => {
            let p = MultipointProblem::new(data.clone())?;
            let feasible = !matches!(p.class(), MultipointClass::NoSolution);
            let rs = loaded.queries.par_iter().map(|&z| p.region(z)).collect::<crate::Result<Vec<_>>>()?;
            Ok((rs, feasible))
        }
        Problem::Hyperbolic { param, tolerances } => {
            let feasible = !matches!(schur_solvability(param, tolerances), SolvabilityClass::NoSolution);
            let rs =
                loaded.queries.par_iter().map(|&z| schur_region(param, z, tolerances)).collect::<crate::Result<Vec<_>>>()?;
            Ok((rs, feasible))
        }
    }
}

fn cmd_region(cli: &Cli) -> CmdResult {
    let loaded = load(cli)?;
    let (rs, feasible) = regions(&loaded)?;
    let mode = match loaded.problem {
        Problem::Multipoint(_) => problem::Mode::Multipoint,
        Problem::Hyperbolic { .. } => problem::Mode::Hyperbolic,
    };
    let out = RegionOutput {
        mode,
        feasible,
        results: loaded.queries.iter().zip(&rs).map(|(&z, r)| QueryResult { z, region: RegionJson::from(r) }).collect(),
    };
    write_output(cli.output.as_deref(), &serialize(&out, cli.pretty)?)?;
    Ok(if feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn cell(j: usize, k: usize, entry: Option<&TableEntry>) -> TableCell {
    match entry {
        None => TableCell { j, k, value: None, status: "unset".into(), note: None },
        Some(e) => TableCell {
            j,
            k,
            value: match e.value {
                ExtendedComplex::Finite(v) => Some(v),
                ExtendedComplex::Infinity => None,
            },
            status: e.status.as_str().into(),
            note: e.boundary_exception.then(|| "boundary-exception".into()),
        },
    }
}

fn fmt_complex(v: Complex64) -> String {
    let im = if v.im < 0.0 { "-" } else { "+" };
    format!("{:.6}{im}{:.6}i", v.re, v.im.abs())
}

fn pretty_table(out: &TableOutput) -> String {
    let width = 26;
    let n1 = out.nodes.len();
    let mut s = String::new();
    s.push_str(&format!("{:<width$}  ", "z_j"));
    for k in 0..n1 {
        s.push_str(&format!("{:<width$}  ", format!("k={k}")));
    }
    s = s.trim_end().to_string();
    s.push('\n');
    for j in 1..=n1 {
        let mut line = format!("{:<width$}  ", fmt_complex(out.nodes[j - 1]));
        for k in 0..j {
            let c = &out.columns[k][j - k - 1];
            let text = match (c.status.as_str(), c.value) {
                ("unset", _) => "-".to_string(),
                ("infinite", _) => "inf".to_string(),
                (status, Some(v)) => {
                    let mark = if c.note.is_some() {
                        " (exc)"
                    } else if status == "boundary" {
                        " (|.|=1)"
                    } else {
                        ""
                    };
                    format!("{}{mark}", fmt_complex(v))
                }
                _ => "?".to_string(),
            };
            line.push_str(&format!("{text:<width$}  "));
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s.push_str(if out.feasible { "feasible\n" } else { "infeasible\n" });
    s
}

fn cmd_table(cli: &Cli) -> CmdResult {
    let loaded = load(cli)?;
    let Problem::Multipoint(data) = &loaded.problem else {
        return Err(Failure::malformed("the table subcommand needs a multipoint problem"));
    };
    let table = build_table(data);
    let n1 = data.nodes().len();
    let columns = (0..n1)
        .map(|k| (k + 1..=n1).map(|j| cell(j, k, table.get(j, k))).collect())
        .collect();
    let diagonal = table_diagonal(&table).iter().enumerate().map(|(k, e)| cell(k + 1, k, Some(e))).collect();
    let out = TableOutput { nodes: data.nodes().to_vec(), feasible: table.is_feasible(), columns, diagonal };
    let text = if cli.pretty { pretty_table(&out) } else { serialize(&out, false)? };
    write_output(cli.output.as_deref(), &text)?;
    Ok(if out.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn cmd_solvability(cli: &Cli) -> CmdResult {
    let loaded = load(cli)?;
    let (class, degree) = match &loaded.problem {
        Problem::Hyperbolic { param, tolerances } => match schur_solvability(param, tolerances) {
            SolvabilityClass::InfinitelyMany => ("infinitely_many", None),
            SolvabilityClass::UniqueBlaschke { degree, .. } => ("unique_blaschke", Some(degree)),
            SolvabilityClass::NoSolution => ("no_solution", None),
        },
        Problem::Multipoint(data) => match MultipointProblem::new(data.clone())?.class() {
            MultipointClass::Interior(_) => ("infinitely_many", None),
            MultipointClass::UniqueBlaschke { degree, .. } => ("unique_blaschke", Some(*degree)),
            MultipointClass::NoSolution => ("no_solution", None),
        },
    };
    let out = SolvabilityOutput { class: class.into(), degree };
    write_output(cli.output.as_deref(), &serialize(&out, cli.pretty)?)?;
    Ok(if class == "no_solution" { EXIT_INFEASIBLE } else { EXIT_OK })
}

/// Chain configuration of an interior problem, if there is one.
fn interior_chain(loaded: &LoadedProblem) -> Result<Option<ChainConfig>, Failure> {
    Ok(match &loaded.problem {
        Problem::Multipoint(data) => MultipointProblem::new(data.clone())?.chain_config().cloned(),
        Problem::Hyperbolic { param, tolerances } => match schur_solvability(param, tolerances) {
            SolvabilityClass::InfinitelyMany => Some(ChainConfig::confluent(param.z0, param.gamma.clone(), tolerances)?),
            _ => None,
        },
    })
}

fn cmd_plot(cli: &Cli, epsilon_samples: Option<usize>, grid: usize) -> CmdResult {
    let loaded = load(cli)?;
    let Some(&query) = loaded.queries.first() else {
        return Err(Failure::malformed("plot needs at least one query point"));
    };
    let (rs, feasible) = regions(&LoadedProblem { queries: vec![query], ..loaded.clone() })?;
    let region = rs[0];
    let count = epsilon_samples.or(loaded.epsilon_samples).unwrap_or(0);
    let mut samples = Vec::new();
    if let (Some(cfg), crate::RegionKind::Disk(_)) = (interior_chain(&loaded)?, region.kind) {
        samples = (0..count)
            .into_par_iter()
            .map(|k| {
                let eps = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64);
                extremal_eval(&cfg, eps, query)
            })
            .collect::<crate::Result<Vec<_>>>()?;
    }
    let nodes = match &loaded.problem {
        Problem::Multipoint(data) => data.nodes().to_vec(),
        Problem::Hyperbolic { param, .. } => vec![param.z0],
    };
    let text = svg::render(&svg::Figure { nodes: &nodes, query, region: &region, epsilon_samples: &samples, grid });
    write_output(cli.output.as_deref(), &text)?;
    Ok(if feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    seed: u64,
    trials: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<oracle::IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<oracle::MembershipReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    confluence: Option<oracle::ConfluenceSuiteReport>,
}

fn cmd_verify(cli: &Cli, trials: u64, suite: Suite) -> CmdResult {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let identities = wants(Suite::Identities).then(|| oracle::identity_suite(cli.seed, trials));
    let membership = wants(Suite::Membership).then(|| oracle::membership_suite(cli.seed, trials));
    let confluence = wants(Suite::Confluence).then(|| oracle::confluence_suite(cli.seed, trials));
    let passed = identities.as_ref().map_or(true, |r| r.passed())
        && membership.as_ref().map_or(true, |r| r.violations == 0)
        && confluence.as_ref().map_or(true, |r| r.failures == 0);
    let report = VerifyReport { seed: cli.seed, trials, passed, identities, membership, confluence };
    write_output(cli.output.as_deref(), &serialize(&report, cli.pretty)?)?;
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Region => cmd_region(cli),
        Command::Table => cmd_table(cli),
        Command::Solvability => cmd_solvability(cli),
        Command::Plot { epsilon_samples, grid } => cmd_plot(cli, *epsilon_samples, *grid),
        Command::Verify { trials, suite } => cmd_verify(cli, *trials, *suite),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message.replace('\n', " "));
            f.code
        }
    }
}

/// Applies the thread cap from the environment, if any.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

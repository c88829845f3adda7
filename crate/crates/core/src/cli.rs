//! Command-line front end: config loading, flag overrides and the four
//! subcommands. Every command renders its whole payload before anything is
//! written, so identical inputs give byte-identical output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::basis::{Domain, FunctionSet, OrthoFamily};
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture, FixtureKind};
use crate::gram::compute_gram;
use crate::quadrature::{check_budget, DEFAULT_ORACLE_NODES, MAX_NODES, MIN_NODES};
use crate::rmt::{Ensemble, PartitionMode, PARTITION_ORACLE_MAX_N};
use crate::suite::{self, checks_for, Check, Suite, VerifyOptions};
use crate::theorems::{TheoremReport, ORACLE_TOLERANCE};

/// Most points per axis of an output grid.
pub const MAX_GRID_STEPS: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gram,
    KernelGrid,
    Verify,
    Rmt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// What the `rmt` command computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// One-point density `R₁(x)` on the grid.
    R1,
    /// Two-point function `R₂(x, y)` on the grid squared.
    R2,
    /// Partition function, closed form against the tensor oracle.
    Partition,
}

/// Uniform grid `a:b:steps` with both endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.a];
        }
        let h = (self.b - self.a) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.b
                } else {
                    self.a + i as f64 * h
                }
            })
            .collect()
    }

    /// Default plotting window for a domain.
    pub fn default_for(domain: Domain) -> Self {
        match domain {
            Domain::Interval { a, b } => GridSpec { a, b, steps: 11 },
            Domain::RealLine => GridSpec {
                a: -3.0,
                b: 3.0,
                steps: 13,
            },
            Domain::HalfLine => GridSpec {
                a: 0.0,
                b: 6.0,
                steps: 13,
            },
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("grid `{s}` is not of the form a:b:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, steps] = parts.as_slice() else {
            return Err(bad());
        };
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        let steps: usize = steps.trim().parse().map_err(|_| bad())?;
        if !a.is_finite() || !b.is_finite() || a > b {
            return Err(Error::Config(format!("grid `{s}` needs finite a <= b")));
        }
        if steps == 0 || steps > MAX_GRID_STEPS {
            return Err(Error::Config(format!(
                "grid `{s}`: steps must be in 1..={MAX_GRID_STEPS}"
            )));
        }
        Ok(GridSpec { a, b, steps })
    }
}

impl TryFrom<String> for GridSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GridSpec> for String {
    fn from(g: GridSpec) -> String {
        format!("{}:{}:{}", g.a, g.b, g.steps)
    }
}

fn default_nodes() -> usize {
    DEFAULT_ORACLE_NODES
}

/// Everything one invocation needs. A JSON config file holds the same
/// fields; command-line flags override it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    /// Name of a built-in fixture; alternative to `phi` and `psi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<FunctionSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<FunctionSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Gauss nodes for overlap matrices.
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    /// Gauss nodes per axis for brute-force integrals.
    #[serde(default = "default_nodes")]
    pub oracle_nodes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<OrthoFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            fixture: None,
            phi: None,
            psi: None,
            n: None,
            k: None,
            nodes: DEFAULT_ORACLE_NODES,
            oracle_nodes: DEFAULT_ORACLE_NODES,
            grid: None,
            suite: None,
            n_max: None,
            family: None,
            quantity: None,
            seed: 0,
            out: None,
            format: None,
        }
    }
}

impl RunConfig {
    /// Parses a JSON config. Errors carry `origin:line:column` and the
    /// path of the offending field.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let msg = inner.to_string();
            let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(head, _)| head);
            let location = format!("{origin}:{}:{}", inner.line(), inner.column());
            if path == "." {
                Error::Config(format!("{location}: {msg}"))
            } else {
                Error::Config(format!("{location}: field `{path}`: {msg}"))
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        RunConfig::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Range and consistency checks on every field; run before any work.
    pub fn validate(&self) -> Result<()> {
        let field = |name: &str, msg: String| Err(Error::Config(format!("field `{name}`: {msg}")));
        if self.command.is_none() {
            return field("command", "missing; give a subcommand or set it in the config".into());
        }
        for (name, m) in [("nodes", self.nodes), ("oracle_nodes", self.oracle_nodes)] {
            if !(MIN_NODES..=MAX_NODES).contains(&m) {
                return field(name, format!("{m} outside {MIN_NODES}..={MAX_NODES}"));
            }
        }
        if self.phi.is_some() != self.psi.is_some() {
            return field("psi", "`phi` and `psi` must be given together".into());
        }
        if self.phi.is_some() && self.fixture.is_some() {
            return field("fixture", "give either a fixture or `phi`/`psi`, not both".into());
        }
        if let Some(name) = &self.fixture {
            if let Err(e) = FixtureKind::parse(name) {
                return field("fixture", e.to_string());
            }
        }
        if let Some(n_max) = self.n_max {
            if n_max == 0 || n_max > suite::SUITE_MAX_N {
                return field("n_max", format!("{n_max} outside 1..={}", suite::SUITE_MAX_N));
            }
        }
        if let (Some(n), Some(k)) = (self.n, self.k) {
            if k > n {
                return field("k", format!("k = {k} exceeds n = {n}"));
            }
        }
        if let Some(g) = &self.grid {
            if g.steps == 0 || g.steps > MAX_GRID_STEPS {
                return field("grid", format!("steps must be in 1..={MAX_GRID_STEPS}"));
            }
        }
        Ok(())
    }

    /// The function-set pair named by `fixture` or given as `phi`/`psi`.
    pub fn pair(&self) -> Result<Fixture> {
        if let (Some(phi), Some(psi)) = (&self.phi, &self.psi) {
            return Fixture::custom("config", phi.clone(), psi.clone());
        }
        let Some(name) = &self.fixture else {
            return Err(Error::Config(
                "field `fixture`: missing; give a fixture name or `phi`/`psi`".into(),
            ));
        };
        let kind = FixtureKind::parse(name)?;
        let info = kind.info();
        let n = match self.n {
            Some(n) => n,
            None if info.min_n == info.max_n => info.min_n,
            None => {
                return Err(Error::Config(format!(
                    "field `n`: required for fixture `{name}` (range {}..={})",
                    info.min_n, info.max_n
                )))
            }
        };
        kind.build(n)
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            oracle_nodes: self.oracle_nodes,
            seed: self.seed,
            n_max: self.n_max.or(self.n).unwrap_or(4),
        }
    }
}

/// Rendered result of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub payload: String,
    pub all_pass: bool,
    /// One line per failed check.
    pub failures: Vec<String>,
}

impl Outcome {
    fn artifact(payload: String) -> Self {
        Outcome {
            payload,
            all_pass: true,
            failures: Vec::new(),
        }
    }
}

/// Executes a validated config and renders its output.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    match config.command.expect("validated") {
        Command::Gram => run_gram(config),
        Command::KernelGrid => run_kernel_grid(config),
        Command::Verify => run_verify(config),
        Command::Rmt => run_rmt(config),
    }
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("value serializes"));
    out.push('\n');
}

/// Shortest round-trip form, in exponent notation for very small or
/// large magnitudes.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn run_gram(config: &RunConfig) -> Result<Outcome> {
    let pair = config.pair()?;
    let gram = compute_gram(&pair.phi, &pair.psi, &pair.rule(config.nodes)?)?;
    let mut out = String::new();
    match config.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&mut out, &gram),
        Format::Csv => {
            for row in gram.rows() {
                let cells: Vec<String> = row.iter().map(|&v| num(v)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
    }
    Ok(Outcome::artifact(out))
}

fn grid_points(config: &RunConfig, domain: Domain) -> Result<Vec<f64>> {
    let grid = config.grid.unwrap_or_else(|| GridSpec::default_for(domain));
    let points = grid.points();
    if let Some(&x) = points.iter().find(|&&x| !domain.contains(x)) {
        return Err(Error::OutsideDomain {
            x,
            domain: domain.to_string(),
        });
    }
    Ok(points)
}

#[derive(Serialize)]
struct GridValue {
    p: f64,
    q: f64,
    value: f64,
}

fn run_kernel_grid(config: &RunConfig) -> Result<Outcome> {
    let pair = config.pair()?;
    let points = grid_points(config, pair.domain())?;
    let kernel = pair.kernel(config.nodes)?;
    if kernel.mode() == crate::kernel::KernelMode::Unnormalized {
        log::warn!("singular overlap matrix: grid values are C times the kernel");
    }
    let values = kernel.tabulate(&points, &points)?;
    let mut out = String::new();
    let format = config.format.unwrap_or(Format::Csv);
    if format == Format::Csv {
        out.push_str("p,q,value\n");
    }
    for (i, &p) in points.iter().enumerate() {
        for (j, &q) in points.iter().enumerate() {
            let value = values[i * points.len() + j];
            match format {
                Format::Csv => writeln!(out, "{p:?},{q:?},{value:?}").expect("write to string"),
                Format::Json => json_line(&mut out, &GridValue { p, q, value }),
            }
        }
    }
    Ok(Outcome::artifact(out))
}

/// All checks at `k` when given (oversized ones are left for the cost
/// guard to reject), otherwise every check within the oracle limits.
fn select_checks(n: usize, k: Option<usize>) -> Vec<Check> {
    match k {
        None => checks_for(n),
        Some(0) => vec![Check::Theorem1 { k: 0 }, Check::Andreief],
        Some(k) => vec![Check::Theorem1 { k }, Check::Contraction { k }, Check::Norm { k }],
    }
}

fn run_verify(config: &RunConfig) -> Result<Outcome> {
    let opts = config.verify_options();
    let reports = if let Some(s) = config.suite {
        suite::run_suite(s, &opts)?
    } else if config.phi.is_some() || (config.fixture.is_some() && config.n.is_some()) {
        let pair = config.pair()?;
        if let Some(k) = config.k.filter(|&k| k > pair.n()) {
            return Err(Error::Config(format!("field `k`: k = {k} exceeds n = {}", pair.n())));
        }
        let checks = select_checks(pair.n(), config.k);
        suite::run_checks(&pair, &checks, &opts)?
    } else if let Some(name) = &config.fixture {
        suite::run_fixture(FixtureKind::parse(name)?, &opts)?
    } else {
        return Err(Error::Config("verify needs `suite`, `fixture` or `phi`/`psi`".into()));
    };
    Ok(render_reports(&reports, config.format.unwrap_or(Format::Json)))
}

const REPORT_COLUMNS: &str =
    "theorem_id,fixture,n,k,mode,lhs,rhs,abs_residual,rel_residual,scale,tolerance,oracle_nodes,oracle_cost,seed,pass";

fn csv_field<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("value serializes") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Reports as JSON lines or CSV, plus a summary of the failures.
pub fn render_reports(reports: &[TheoremReport], format: Format) -> Outcome {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(REPORT_COLUMNS);
        out.push('\n');
    }
    for r in reports {
        match format {
            Format::Json => json_line(&mut out, r),
            Format::Csv => {
                let cells = [
                    csv_field(&r.theorem_id),
                    r.fixture.clone(),
                    r.n.to_string(),
                    r.k.to_string(),
                    csv_field(&r.mode),
                    num(r.lhs),
                    num(r.rhs),
                    num(r.abs_residual),
                    num(r.rel_residual),
                    num(r.scale),
                    num(r.tolerance),
                    r.oracle_nodes.to_string(),
                    r.oracle_cost.to_string(),
                    csv_field(&r.seed),
                    r.pass.to_string(),
                ];
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
    }
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            format!(
                "FAIL {} {} n={} k={}: lhs={:e} rhs={:e} rel={:e} abs={:e}",
                csv_field(&r.theorem_id),
                r.fixture,
                r.n,
                r.k,
                r.lhs,
                r.rhs,
                r.rel_residual,
                r.abs_residual
            )
        })
        .collect();
    Outcome {
        payload: out,
        all_pass: failures.is_empty(),
        failures,
    }
}

#[derive(Serialize)]
struct PartitionReport {
    family: OrthoFamily,
    n: usize,
    closed_form: f64,
    oracle: Option<f64>,
    oracle_nodes: usize,
    rel_residual: Option<f64>,
    tolerance: f64,
    pass: bool,
}

fn run_rmt(config: &RunConfig) -> Result<Outcome> {
    let family = config.family.unwrap_or(OrthoFamily::Hermite);
    let n = config
        .n
        .ok_or_else(|| Error::Config("field `n`: required for rmt".into()))?;
    let ensemble = Ensemble::new(family, n)?;
    let quantity = config.quantity.unwrap_or(Quantity::R1);
    let mut out = String::new();
    match quantity {
        Quantity::Partition => {
            let m = config.oracle_nodes;
            let use_oracle = n <= PARTITION_ORACLE_MAX_N;
            if use_oracle {
                check_budget(m, n)?;
            }
            let closed_form = ensemble.partition_function(PartitionMode::ClosedForm)?;
            let oracle = if use_oracle {
                Some(ensemble.partition_function(PartitionMode::Oracle { nodes: m })?)
            } else {
                None
            };
            let rel_residual = oracle.map(|o| (o - closed_form).abs() / closed_form.abs());
            let pass = rel_residual.is_none_or(|r| r <= ORACLE_TOLERANCE);
            let report = PartitionReport {
                family,
                n,
                closed_form,
                oracle,
                oracle_nodes: m,
                rel_residual,
                tolerance: ORACLE_TOLERANCE,
                pass,
            };
            json_line(&mut out, &report);
            let failures = if pass {
                Vec::new()
            } else {
                vec![format!("FAIL partition {family} n={n}")]
            };
            return Ok(Outcome {
                payload: out,
                all_pass: pass,
                failures,
            });
        }
        Quantity::R1 => {
            let points = grid_points(config, family.domain())?;
            let format = config.format.unwrap_or(Format::Csv);
            if format == Format::Csv {
                out.push_str("x,value\n");
            }
            for &x in &points {
                let value = ensemble.correlation_rk(&[x])?;
                match format {
                    Format::Csv => writeln!(out, "{x:?},{value:?}").expect("write to string"),
                    Format::Json => json_line(&mut out, &serde_json::json!({ "x": x, "value": value })),
                }
            }
        }
        Quantity::R2 => {
            let points = grid_points(config, family.domain())?;
            let format = config.format.unwrap_or(Format::Csv);
            if format == Format::Csv {
                out.push_str("x,y,value\n");
            }
            for &x in &points {
                for &y in &points {
                    let value = ensemble.correlation_rk(&[x, y])?;
                    match format {
                        Format::Csv => writeln!(out, "{x:?},{y:?},{value:?}").expect("write to string"),
                        Format::Json => json_line(&mut out, &serde_json::json!({ "x": x, "y": y, "value": value })),
                    }
                }
            }
        }
    }
    Ok(Outcome::artifact(out))
}

/// Plain-text or JSON-lines listing of the built-in fixtures.
pub fn list_fixtures(format: Format) -> String {
    let mut out = String::new();
    for info in fixtures::list() {
        match format {
            Format::Json => json_line(&mut out, &info),
            Format::Csv => writeln!(
                out,
                "{},{},{},\"{}\"",
                info.name, info.min_n, info.max_n, info.description
            )
            .expect("write to string"),
        }
    }
    out
}

fn parse_suite(s: &str) -> Result<Suite> {
    Suite::parse(s)
}

fn parse_family(s: &str) -> Result<OrthoFamily> {
    OrthoFamily::parse(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CliCommand {
    /// Overlap matrix of a function-set pair as JSON.
    Gram,
    /// Kernel values on a grid as CSV (p, q, value).
    KernelGrid,
    /// Run identity checks; exit status 0 iff all pass.
    Verify,
    /// Ensemble correlation grids or the partition function.
    Rmt,
}

impl From<CliCommand> for Command {
    fn from(c: CliCommand) -> Self {
        match c {
            CliCommand::Gram => Command::Gram,
            CliCommand::KernelGrid => Command::KernelGrid,
            CliCommand::Verify => Command::Verify,
            CliCommand::Rmt => Command::Rmt,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "detkernel",
    version,
    about = "Generalized kernels and determinant integration identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<CliCommand>,
    /// List the built-in fixtures and exit.
    #[arg(long)]
    pub list_fixtures: bool,
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Built-in fixture name (see --list-fixtures).
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Gauss nodes for overlap matrices.
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Gauss nodes per axis for brute-force integrals.
    #[arg(long, global = true)]
    pub oracle_nodes: Option<usize>,
    /// Number of functions per set (size of variable fixtures)
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Number of free variables in `verify`
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Grid as "a:b:steps".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Seed of the free-point sequence.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Batch of checks: full, theorem1, andreief, theorem2, dyson, degenerate.
    #[arg(long, global = true, value_parser = parse_suite)]
    pub suite: Option<Suite>,
    /// Largest n in a `--suite` batch
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Ensemble weight family for `rmt`.
    #[arg(long, global = true, value_parser = parse_family)]
    pub family: Option<OrthoFamily>,
    #[arg(long, global = true, value_enum)]
    pub quantity: Option<Quantity>,
}

impl Cli {
    /// Loads the config file, if any, and applies the flags on top.
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(cmd) = self.command {
            c.command = Some(cmd.into());
        }
        if let Some(f) = &self.fixture {
            c.fixture = Some(f.clone());
            c.phi = None;
            c.psi = None;
        }
        c.nodes = self.nodes.unwrap_or(c.nodes);
        c.oracle_nodes = self.oracle_nodes.unwrap_or(c.oracle_nodes);
        c.n = self.n.or(c.n);
        c.k = self.k.or(c.k);
        c.grid = self.grid.or(c.grid);
        c.seed = self.seed.unwrap_or(c.seed);
        c.out = self.out.clone().or(c.out);
        c.format = self.format.or(c.format);
        c.suite = self.suite.or(c.suite);
        c.n_max = self.n_max.or(c.n_max);
        c.family = self.family.or(c.family);
        c.quantity = self.quantity.or(c.quantity);
        Ok(c)
    }
}

fn emit(payload: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Runs a parsed command line. Returns whether every check passed.
pub fn execute(cli: &Cli) -> Result<bool> {
    if cli.list_fixtures {
        emit(&list_fixtures(cli.format.unwrap_or(Format::Csv)), cli.out.as_deref())?;
        return Ok(true);
    }
    let config = cli.to_config()?;
    let outcome = run(&config)?;
    emit(&outcome.payload, config.out.as_deref())?;
    for line in &outcome.failures {
        eprintln!("{line}");
    }
    if !outcome.all_pass {
        eprintln!("{} check(s) failed", outcome.failures.len());
    }
    Ok(outcome.all_pass)
}

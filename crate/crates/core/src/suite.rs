//! Batches of identity checks over the built-in fixtures. A batch is first
//! expanded into a plan of independent tasks whose costs are checked before
//! anything is integrated.

use serde::{Deserialize, Serialize};

use crate::basis::OrthoFamily;
use crate::error::{Error, Result};
use crate::fixtures::{Fixture, FixtureKind};
use crate::points::PointSequence;
use crate::quadrature::{check_budget, DEFAULT_ORACLE_NODES, MAX_NODES, MIN_NODES};
use crate::rmt::Ensemble;
use crate::theorems::{
    verify_andreief, verify_contraction_k, verify_dyson_classical, verify_knorm, verify_theorem1, TheoremReport,
    KERNEL_ORACLE_MAX_K, ORACLE_MAX_DIM,
};

/// Largest `n` accepted by `--n-max`.
pub const SUITE_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Full,
    Theorem1,
    Andreief,
    Theorem2,
    Dyson,
    Degenerate,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "full" => Ok(Suite::Full),
            "theorem1" => Ok(Suite::Theorem1),
            "andreief" => Ok(Suite::Andreief),
            "theorem2" => Ok(Suite::Theorem2),
            "dyson" => Ok(Suite::Dyson),
            "degenerate" => Ok(Suite::Degenerate),
            other => Err(Error::Config(format!(
                "unknown suite `{other}` (expected full, theorem1, andreief, theorem2, dyson or degenerate)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Gauss nodes per axis for the brute-force integrals and the overlaps.
    pub oracle_nodes: usize,
    pub seed: u64,
    pub n_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_nodes: DEFAULT_ORACLE_NODES,
            seed: 0,
            n_max: 4,
        }
    }
}

impl VerifyOptions {
    pub fn validate(&self) -> Result<()> {
        if !(MIN_NODES..=MAX_NODES).contains(&self.oracle_nodes) {
            return Err(Error::NodeCountOutOfRange {
                m: self.oracle_nodes,
                min: MIN_NODES,
                max: MAX_NODES,
            });
        }
        if self.n_max == 0 || self.n_max > SUITE_MAX_N {
            return Err(Error::Config(format!(
                "n-max must be in 1..={SUITE_MAX_N}, got {}",
                self.n_max
            )));
        }
        Ok(())
    }
}

/// One identity check on a pair of function sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Theorem1 { k: usize },
    Andreief,
    Contraction { k: usize },
    Norm { k: usize },
}

impl Check {
    /// Number of variables the oracle integrates over for sets of size `n`.
    pub fn oracle_dim(&self, n: usize) -> usize {
        match *self {
            Check::Theorem1 { k } => n.saturating_sub(k),
            Check::Andreief => n,
            Check::Contraction { k } | Check::Norm { k } => k,
        }
    }

    fn dim_limit(&self) -> usize {
        match self {
            Check::Contraction { .. } | Check::Norm { .. } => KERNEL_ORACLE_MAX_K,
            _ => ORACLE_MAX_DIM,
        }
    }
}

/// Every check that fits the oracle limits for sets of size `n`.
pub fn checks_for(n: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = (n.saturating_sub(ORACLE_MAX_DIM)..=n)
        .map(|k| Check::Theorem1 { k })
        .collect();
    if n <= ORACLE_MAX_DIM {
        checks.push(Check::Andreief);
    }
    for k in 1..=n.min(KERNEL_ORACLE_MAX_K) {
        checks.push(Check::Contraction { k });
        checks.push(Check::Norm { k });
    }
    checks
}

/// A check bound to its subject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Pair {
        fixture: FixtureKind,
        n: usize,
        check: Check,
    },
    Dyson {
        family: OrthoFamily,
        n: usize,
        k: usize,
    },
}

impl Task {
    pub fn oracle_dim(&self) -> usize {
        match *self {
            Task::Pair { n, check, .. } => check.oracle_dim(n),
            Task::Dyson { n, k, .. } => n.saturating_sub(k),
        }
    }

    fn dim_limit(&self) -> usize {
        match self {
            Task::Pair { check, .. } => check.dim_limit(),
            Task::Dyson { .. } => ORACLE_MAX_DIM,
        }
    }
}

const SMOOTH_FIXTURES: [FixtureKind; 7] = [
    FixtureKind::FixtureA,
    FixtureKind::Monomials,
    FixtureKind::Mixed,
    FixtureKind::HermiteWave,
    FixtureKind::HermiteNonorth,
    FixtureKind::LegendreWave,
    FixtureKind::LaguerreWave,
];

const DEGENERATE_FIXTURES: [FixtureKind; 3] = [
    FixtureKind::DegenerateRank1,
    FixtureKind::DegenerateRank2,
    FixtureKind::DegenerateLowRank,
];

fn sizes(kind: FixtureKind, n_max: usize) -> std::ops::RangeInclusive<usize> {
    let info = kind.info();
    info.min_n..=info.max_n.min(n_max)
}

/// Expands a suite into its task list.
pub fn plan(suite: Suite, opts: &VerifyOptions) -> Vec<Task> {
    let wants = |s: Suite| suite == Suite::Full || suite == s;
    let mut tasks = Vec::new();
    for fixture in SMOOTH_FIXTURES.into_iter().chain(DEGENERATE_FIXTURES) {
        let degenerate = fixture.is_degenerate();
        for n in sizes(fixture, opts.n_max) {
            for check in checks_for(n) {
                let keep = if degenerate {
                    wants(Suite::Degenerate)
                } else {
                    match check {
                        Check::Theorem1 { .. } => wants(Suite::Theorem1),
                        Check::Andreief => wants(Suite::Andreief),
                        Check::Contraction { .. } | Check::Norm { .. } => wants(Suite::Theorem2),
                    }
                };
                if keep {
                    tasks.push(Task::Pair { fixture, n, check });
                }
            }
        }
    }
    if wants(Suite::Dyson) {
        for family in OrthoFamily::ALL {
            for n in 1..=opts.n_max.min(ORACLE_MAX_DIM) {
                for k in 0..=n {
                    tasks.push(Task::Dyson { family, n, k });
                }
            }
        }
    }
    tasks
}

fn check_dim(what: &dyn std::fmt::Debug, d: usize, limit: usize, opts: &VerifyOptions) -> Result<()> {
    if d > limit {
        return Err(Error::CostGuard(format!(
            "{what:?} needs a {d}-fold oracle integral; limit is {limit}"
        )));
    }
    check_budget(opts.oracle_nodes, d)
}

/// Rejects a plan containing any task beyond the oracle limits.
pub fn check_plan(tasks: &[Task], opts: &VerifyOptions) -> Result<()> {
    opts.validate()?;
    tasks
        .iter()
        .try_for_each(|t| check_dim(t, t.oracle_dim(), t.dim_limit(), opts))
}

/// Runs one check on `fixture`. Free points come from a fresh sequence
/// seeded with `opts.seed`, so a report does not depend on what ran before.
pub fn run_check(check: Check, fixture: &Fixture, opts: &VerifyOptions) -> Result<TheoremReport> {
    let m = opts.oracle_nodes;
    let seed = opts.seed;
    let rule = fixture.rule(m)?;
    let free = |count| PointSequence::new(seed, fixture.domain()).take_points(count);
    let (report, seeded) = match check {
        Check::Theorem1 { k } => {
            let pts = free(2 * k);
            let (p, q) = pts.split_at(k);
            (verify_theorem1(&fixture.kernel(m)?, k, p, q, &rule)?, true)
        }
        Check::Andreief => (verify_andreief(&fixture.phi, &fixture.psi, &rule)?, false),
        Check::Contraction { k } => {
            let pts = free(2 * k);
            let (p, r) = pts.split_at(k);
            (verify_contraction_k(&fixture.kernel(m)?, k, p, r, &rule)?, true)
        }
        Check::Norm { k } => (verify_knorm(&fixture.kernel(m)?, k, &rule)?, false),
    };
    Ok(report.labeled(fixture.label(), seeded.then_some(seed)))
}

pub fn run_task(task: &Task, opts: &VerifyOptions) -> Result<TheoremReport> {
    match *task {
        Task::Pair { fixture, n, check } => run_check(check, &fixture.build(n)?, opts),
        Task::Dyson { family, n, k } => {
            let ensemble = Ensemble::new(family, n)?;
            let free = PointSequence::new(opts.seed, family.domain()).take_points(k);
            let report = verify_dyson_classical(&ensemble, k, &free, &ensemble.plain_rule(opts.oracle_nodes)?)?;
            Ok(report.labeled(&format!("{}-ensemble-n{n}", family.name()), Some(opts.seed)))
        }
    }
}

/// Checks the plan, then runs every task in order.
pub fn run_tasks(tasks: &[Task], opts: &VerifyOptions) -> Result<Vec<TheoremReport>> {
    check_plan(tasks, opts)?;
    tasks.iter().map(|t| run_task(t, opts)).collect()
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<TheoremReport>> {
    run_tasks(&plan(suite, opts), opts)
}

/// Runs every applicable check on one built-in fixture, for sizes up to
/// `n_max`.
pub fn run_fixture(kind: FixtureKind, opts: &VerifyOptions) -> Result<Vec<TheoremReport>> {
    let tasks: Vec<Task> = sizes(kind, opts.n_max)
        .flat_map(|n| {
            checks_for(n).into_iter().map(move |check| Task::Pair {
                fixture: kind,
                n,
                check,
            })
        })
        .collect();
    if tasks.is_empty() {
        return Err(Error::Config(format!(
            "fixture `{}` needs n >= {}, but n-max is {}",
            kind.name(),
            kind.info().min_n,
            opts.n_max
        )));
    }
    run_tasks(&tasks, opts)
}

/// Runs `checks` on an arbitrary pair after checking all their costs.
pub fn run_checks(fixture: &Fixture, checks: &[Check], opts: &VerifyOptions) -> Result<Vec<TheoremReport>> {
    opts.validate()?;
    let n = fixture.n();
    for check in checks {
        check_dim(check, check.oracle_dim(n), check.dim_limit(), opts)?;
    }
    checks.iter().map(|&c| run_check(c, fixture, opts)).collect()
}

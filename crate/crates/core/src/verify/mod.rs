//! Named verification suites.
//!
//! Each suite is a list of claims. A claim sweeps a family of instances
//! (exhaustive up to an order limit, or seeded random) and records how many
//! were checked, how many failed, and a replayable payload for the first
//! failure in enumeration order.

mod classes;
mod lemmas;
mod oracle;
mod theorem;

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::Caps;
use crate::enumerate;
use crate::error::{Error, Result};
use crate::graph::{Graph, Tree};
use crate::partition::{self, PartitionReport};

pub const SUITES: [&str; 8] = ["oracle", "lemmas", "theorem-main", "classes", "extremal", "cea", "minedge", "mincycle"];

pub const CSV_HEADER: &str = "suite,claim,n,instances,failures,seconds";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Replaces each claim's default order limit, clamped to the claim's cap.
    pub max_n: Option<usize>,
    pub seed: u64,
    /// Instances per randomized claim; `None` keeps the suite defaults.
    pub samples: Option<usize>,
}

impl VerifyOptions {
    fn limit(&self, default: usize, cap: usize) -> usize {
        self.max_n.map_or(default, |m| m.min(cap))
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimResult {
    pub claim: String,
    /// Largest order covered.
    pub n: usize,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<Value>,
    /// Extra findings worth reporting (e.g. which catalog entries matched).
    pub notes: Value,
    pub seconds: f64,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut out = json!({
            "claim": self.claim,
            "n": self.n,
            "instances": self.instances,
            "failures": self.failures,
            "passed": self.passed(),
        });
        if let Some(c) = &self.counterexample {
            out["counterexample"] = c.clone();
        }
        if !self.notes.is_null() {
            out["notes"] = self.notes.clone();
        }
        if timing {
            out["seconds"] = json!(self.seconds);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub options: VerifyOptions,
    pub claims: Vec<ClaimResult>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(ClaimResult::passed)
    }

    pub fn failed_claims(&self) -> Vec<&ClaimResult> {
        self.claims.iter().filter(|c| !c.passed()).collect()
    }

    /// Wall times are left out unless `timing` is set, so that the default
    /// output is byte-identical across runs.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut out = json!({
            "suite": self.suite,
            "params": {
                "max_n": self.options.max_n,
                "seed": self.options.seed,
                "samples": self.options.samples,
            },
            "passed": self.passed(),
            "claims": self.claims.iter().map(|c| c.to_json(timing)).collect::<Vec<_>>(),
        });
        if timing {
            out["seconds"] = json!(self.seconds);
        }
        out
    }

    pub fn csv_rows(&self) -> Vec<String> {
        self.claims
            .iter()
            .map(|c| format!("{},{},{},{},{},{:.3}", self.suite, c.claim, c.n, c.instances, c.failures, c.seconds))
            .collect()
    }
}

/// A failed instance: the graph involved, when there is one, and what went wrong.
#[derive(Debug, Clone)]
pub(crate) struct Failure {
    graph: Option<Graph>,
    detail: Value,
}

impl Failure {
    pub(crate) fn new(graph: Option<&Graph>, detail: Value) -> Self {
        Failure { graph: graph.cloned(), detail }
    }

    fn payload(&self) -> Value {
        let Some(g) = &self.graph else { return json!({ "detail": self.detail }) };
        let partition = partition::partition_report_graph(g).ok().map(|r| r.to_json(None));
        json!({
            "graph": graph_json(g),
            "partition": partition,
            "detail": self.detail,
        })
    }
}

pub(crate) type Outcome = Result<Option<Failure>>;

pub(crate) fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.order(), "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>() })
}

/// Run a check on `g` and attach `g` to its verdict; errors count as failures.
pub(crate) fn on(g: &Graph, check: impl FnOnce() -> Result<Option<Value>>) -> Outcome {
    Ok(match check() {
        Ok(None) => None,
        Ok(Some(detail)) => Some(Failure::new(Some(g), detail)),
        Err(e) => Some(Failure::new(Some(g), json!({ "error": e.to_string() }))),
    })
}

/// Run `check` on every item in parallel and aggregate in item order.
pub(crate) fn sweep<T: Sync>(
    claim: &str,
    n: usize,
    items: &[T],
    check: impl Fn(&T) -> Outcome + Sync,
) -> ClaimResult {
    let start = Instant::now();
    let outcomes: Vec<Option<Failure>> = items
        .par_iter()
        .map(|item| match check(item) {
            Ok(f) => f,
            Err(e) => Some(Failure::new(None, json!({ "error": e.to_string() }))),
        })
        .collect();
    let failures = outcomes.iter().filter(|o| o.is_some()).count();
    let counterexample = outcomes.iter().flatten().next().map(Failure::payload);
    ClaimResult {
        claim: claim.to_string(),
        n,
        instances: items.len(),
        failures,
        counterexample,
        notes: Value::Null,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// A claim checked as a single instance.
pub(crate) fn single(claim: &str, n: usize, check: impl FnOnce() -> Outcome) -> ClaimResult {
    let start = Instant::now();
    let failure = check().unwrap_or_else(|e| Some(Failure::new(None, json!({ "error": e.to_string() }))));
    ClaimResult {
        claim: claim.to_string(),
        n,
        instances: 1,
        failures: usize::from(failure.is_some()),
        counterexample: failure.as_ref().map(Failure::payload),
        notes: Value::Null,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// A tree together with its partition.
pub(crate) struct Solved {
    pub tree: Tree,
    pub report: PartitionReport,
}

/// All trees with `lo <= n <= hi`, partitioned.
pub(crate) fn solved_trees(lo: usize, hi: usize) -> Result<Vec<Solved>> {
    let census = enumerate::tree_census(hi.max(1), &Caps::DEFAULT)?;
    let trees: Vec<Tree> = census.into_iter().skip(lo.max(1)).flatten().collect();
    trees
        .into_par_iter()
        .map(|tree| {
            let report = partition::partition_report(&tree)?;
            Ok(Solved { tree, report })
        })
        .collect()
}

/// All connected graphs with `lo <= n <= hi`, partitioned.
pub(crate) fn solved_graphs(lo: usize, hi: usize) -> Result<Vec<(Graph, PartitionReport)>> {
    let census = enumerate::connected_graph_census(hi.max(1), &Caps::DEFAULT)?;
    let graphs: Vec<Graph> = census.into_iter().skip(lo.max(1)).flatten().collect();
    graphs
        .into_par_iter()
        .map(|g| {
            let report = partition::partition_report_graph(&g)?;
            Ok((g, report))
        })
        .collect()
}

/// Largest `--max-n` each suite accepts.
fn suite_cap(suite: &str) -> Option<usize> {
    Some(match suite {
        "oracle" | "lemmas" | "classes" | "extremal" | "cea" | "mincycle" => 14,
        "theorem-main" => 16,
        "minedge" => 7,
        _ => return None,
    })
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let cap = suite_cap(suite)
        .ok_or_else(|| Error::Input(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", "))))?;
    if let Some(m) = opts.max_n {
        if m > cap {
            return Err(Error::CapExceeded { what: "verify --max-n", order: m, cap });
        }
    }
    let start = Instant::now();
    let claims = match suite {
        "oracle" => oracle::run(opts)?,
        "lemmas" => lemmas::run(opts)?,
        "theorem-main" => theorem::run(opts)?,
        "classes" => classes::classes(opts)?,
        "extremal" => classes::extremal(opts)?,
        "cea" => classes::cea(opts)?,
        "minedge" => classes::minedge(opts)?,
        "mincycle" => classes::mincycle(opts)?,
        _ => unreachable!("checked by suite_cap"),
    };
    Ok(SuiteReport { suite: suite.to_string(), options: opts.clone(), claims, seconds: start.elapsed().as_secs_f64() })
}

/// Run one suite, or every suite for `"all"`.
pub fn run(suite: &str, opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    if suite == "all" {
        SUITES.iter().map(|s| run_suite(s, opts)).collect()
    } else {
        Ok(vec![run_suite(suite, opts)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_and_cap() {
        assert!(matches!(run("nope", &VerifyOptions::default()), Err(Error::Input(_))));
        let opts = VerifyOptions { max_n: Some(9), ..Default::default() };
        assert!(matches!(run("minedge", &opts), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn small_mincycle_report() {
        let opts = VerifyOptions { max_n: Some(7), ..Default::default() };
        let reports = run("mincycle", &opts).unwrap();
        assert!(reports[0].passed());
        let text = reports[0].to_json(false).to_string();
        assert!(!text.contains("seconds"));
        assert!(reports[0].csv_rows()[0].starts_with("mincycle,"));
    }
}

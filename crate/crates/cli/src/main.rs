mod input;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rdx_core::grammar::{self, catalog, generate, OpId, Recognition};
use rdx_core::graph::{Graph, Tree};
use rdx_core::partition::{self, PartitionReport};
use rdx_core::solver::{self, brute};
use rdx_core::verify::{self, VerifyOptions, CSV_HEADER};
use rdx_core::atlas;

const SCHEMA: &str = "rdx/1";

/// Exit status for a principled negative answer (a rejected tree, a failed claim).
const REJECT: u8 = 2;

#[derive(Parser)]
#[command(name = "rdx", version, about = "Roman domination on trees and small graphs")]
struct Cli {
    /// Worker threads for the verification suites (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file, `-` for stdin, or p:n, c:n, star:k, k:n, corona:u-v,...
    input: String,

    /// Require the input to be a tree
    #[arg(long, conflicts_with = "graph")]
    tree: bool,

    /// Accept any graph (the default)
    #[arg(long)]
    graph: bool,
}

impl GraphArg {
    fn load(&self) -> Result<Graph> {
        if self.tree {
            Ok(input::read_tree(&self.input)?.into_graph())
        } else {
            input::read_graph(&self.input)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Roman domination number and domination number
    Solve {
        #[command(flatten)]
        input: GraphArg,
        /// Also print one minimum Roman dominating function
        #[arg(long)]
        function: bool,
    },
    /// Value sets attained over all minimum Roman dominating functions
    Partition {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long)]
        dot: bool,
    },
    /// Whether every vertex takes a positive value in some minimum function
    Excellent {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Decompose a tree into a construction certificate, or name a bad vertex
    Recognize {
        /// Edge-list file, `-` for stdin, or a shorthand
        input: String,
        #[arg(long)]
        dot: bool,
    },
    /// Build a random labeled tree by applying construction steps
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Comma-separated operations, e.g. O1,O3
        #[arg(long, default_value = "O1,O2,O3,O4")]
        ops: String,
        /// Skip steps that would exceed this order
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Class memberships, signature and bounds
    Classify {
        #[command(flatten)]
        input: GraphArg,
    },
    /// The base catalog
    Bases {
        /// Re-derive the catalog from the tree census instead of using the cached copy
        #[arg(long)]
        derive: bool,
    },
    /// Run a verification suite, or `all`
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per randomized claim
        #[arg(long)]
        samples: Option<usize>,
        /// Also write per-claim rows to this CSV file
        #[arg(long)]
        csv: Option<String>,
        /// Include wall times in the JSON
        #[arg(long)]
        timing: bool,
    },
}

fn emit(command: &str, body: Value) {
    let mut out = json!({ "schema": SCHEMA, "command": command });
    if let (Some(out), Value::Object(body)) = (out.as_object_mut(), body) {
        out.extend(body);
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("json values serialize"));
}

fn graph_dot(g: &Graph, report: &PartitionReport) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        out.push_str(&format!("  {v} [label=\"{v}:{}\"];\n", report.value_sets[v].as_str()));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn solve(g: &Graph, function: bool) -> Result<ExitCode> {
    let mut body = json!({
        "n": g.order(),
        "m": g.edge_count(),
        "gamma_r": solver::gamma_r(g)?,
        "gamma": solver::gamma(g)?,
    });
    if function {
        let f = match Tree::new(g.clone()) {
            Ok(t) => solver::optimal_rdf_tree(&t),
            Err(_) => brute::enumerate_gamma_r_functions(g)?.swap_remove(0),
        };
        body["function"] = json!(f.values());
    }
    emit("solve", body);
    Ok(ExitCode::SUCCESS)
}

fn partition_cmd(g: &Graph, dot: bool) -> Result<ExitCode> {
    let report = partition::partition_report_graph(g)?;
    let statuses = match Tree::new(g.clone()) {
        Ok(t) if report.is_excellent() => Some(partition::derive_statuses(&t)?),
        _ => None,
    };
    if dot {
        match &statuses {
            Some(lt) => print!("{}", lt.to_dot("T")),
            None => print!("{}", graph_dot(g, &report)),
        }
    } else {
        let s = statuses.map(|lt| lt.status_string());
        emit("partition", report.to_json(s.as_deref()));
    }
    Ok(ExitCode::SUCCESS)
}

fn recognize_cmd(t: &Tree, dot: bool) -> Result<ExitCode> {
    match grammar::recognize(t)? {
        Recognition::Accept { labeled, cert, map } => {
            if dot {
                print!("{}", labeled.to_dot("T"));
            } else {
                emit(
                    "recognize",
                    json!({
                        "result": "accept",
                        "base": cert.base.to_string(),
                        "statuses": labeled.status_string(),
                        "certificate": serde_json::to_value(&cert)?,
                        "map": map,
                    }),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Recognition::Reject { witness, report } => {
            emit(
                "recognize",
                json!({
                    "result": "reject",
                    "witness": witness,
                    "tree": { "n": t.order(), "edges": t.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>() },
                    "partition": report.to_json(None),
                }),
            );
            Ok(ExitCode::from(REJECT))
        }
    }
}

fn generate_cmd(seed: u64, steps: usize, ops: &str, max_n: Option<usize>, dot: bool) -> Result<ExitCode> {
    let ops: Vec<OpId> = ops.split(',').map(str::parse).collect::<rdx_core::Result<_>>()?;
    let cat = catalog::catalog()?;
    let (lt, cert) = generate::generate_capped(seed, steps, &ops, max_n.unwrap_or(usize::MAX), cat)?;
    if dot {
        print!("{}", lt.to_dot("T"));
    } else {
        emit(
            "generate",
            json!({
                "seed": seed,
                "steps": cert.steps.len(),
                "gamma_r": solver::gamma_r_tree(lt.tree()),
                "tree": lt.to_json(),
                "certificate": serde_json::to_value(&cert)?,
            }),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn bases(derive: bool) -> Result<ExitCode> {
    let cat = if derive { catalog::derive_base_catalog()? } else { catalog::catalog()?.clone() };
    let mut body = cat.to_json();
    body["strata"] = json!(cat.strata);
    emit("bases", body);
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(suite: &str, opts: VerifyOptions, csv: Option<&str>, timing: bool) -> Result<ExitCode> {
    let reports = verify::run(suite, &opts)?;
    if let Some(path) = csv {
        let mut text = format!("{CSV_HEADER}\n");
        for row in reports.iter().flat_map(|r| r.csv_rows()) {
            text.push_str(&row);
            text.push('\n');
        }
        fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    let passed = reports.iter().all(|r| r.passed());
    emit(
        "verify",
        json!({
            "passed": passed,
            "reports": reports.iter().map(|r| r.to_json(timing)).collect::<Vec<_>>(),
        }),
    );
    for r in &reports {
        for c in r.failed_claims() {
            eprintln!("FAIL {}/{}: {} of {} instances", r.suite, c.claim, c.failures, c.instances);
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(REJECT) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match cli.command {
        Command::Solve { input, function } => solve(&input.load()?, function),
        Command::Partition { input, dot } => partition_cmd(&input.load()?, dot),
        Command::Excellent { input } => {
            let g = input.load()?;
            let report = partition::partition_report_graph(&g)?;
            emit(
                "excellent",
                json!({
                    "n": g.order(),
                    "excellent": report.is_excellent(),
                    "bad_vertices": report.bad_vertices(),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Recognize { input, dot } => recognize_cmd(&input::read_tree(&input)?, dot),
        Command::Generate { seed, steps, ops, max_n, dot } => generate_cmd(seed, steps, &ops, max_n, dot),
        Command::Classify { input } => emit_classify(&input.load()?),
        Command::Bases { derive } => bases(derive),
        Command::Verify { suite, max_n, seed, samples, csv, timing } => {
            verify_cmd(&suite, VerifyOptions { max_n, seed, samples }, csv.as_deref(), timing)
        }
    }
}

fn emit_classify(g: &Graph) -> Result<ExitCode> {
    let mut body = atlas::classify(g)?;
    body["n"] = json!(g.order());
    emit("classify", body);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

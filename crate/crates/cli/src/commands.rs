//! Argument definitions and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mtcap_core::constructor::{
    build_multitasker, find_bad_cycle, BadCycleSearch, ConstructionOptions, ConstructionParams,
};
use mtcap_core::gadgets::{
    biclique_cm_gadget, boxminus, gen_half_cover, mis_gadget, perfect_cm_gadget,
    validate_half_cover,
};
use mtcap_core::graph::DEFAULT_CYCLE_BUDGET;
use mtcap_core::solvers::max_connected_matching;
use mtcap_core::{alpha_k, alpha_upto, mt_decide, BipartiteGraph, CapacityConfig, Error, Rational};
use serde_json::{json, Value};
use thiserror::Error;

use crate::experiments::{verify_appendix_a, verify_claim34, verify_lemma62, verify_thm35};
use crate::format::{parse_bipartite, parse_general, write_bipartite, ParseError};
use crate::report::{BudgetInfo, InputDigest, RunReport, SCHEMA_VERSION};

/// Exact multitasking capacity, connected matchings, gadgets and
/// multitasker construction for bipartite graphs. Vertex indices are 0-based.
#[derive(Debug, Parser)]
#[command(name = "mtcap", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Work budget for exact searches (search nodes or matchings examined).
    #[arg(long, global = true, env = "MTCAP_BUDGET")]
    pub budget: Option<u64>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact α_k: worst induced fraction over matchings of size k.
    Alpha(CapacityArgs),
    /// Exact α_{≤k} = min over 1 ≤ ℓ ≤ k of α_ℓ.
    AlphaUpto(CapacityArgs),
    /// Decide whether α_k ≥ eta.
    Mt(MtArgs),
    /// Maximum connected matching.
    NuC(GraphArg),
    /// Generate graphs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build reduction gadgets.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Run desk-scale property checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Search for a cycle of length 2 mod 4 with a poorly induced matching.
    BadCycle(BadCycleArgs),
}

#[derive(Debug, Args)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct MtArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// Threshold as an exact rational, e.g. `1/2`.
    #[arg(long)]
    pub eta: Rational,
}

#[derive(Debug, Args)]
pub struct BadCycleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub len_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CycleCap {
    /// Enforce the √n short-cycle cap only in the theorem regime.
    Auto,
    Enforce,
    Report,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Random orientation of the complete graph as a balanced bipartite graph.
    HalfCover {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sparse random bipartite graph with short cycles removed and a
    /// certified capacity floor.
    Multitasker(MultitaskerArgs),
}

#[derive(Debug, Args)]
pub struct MultitaskerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub epsilon: Rational,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub t_cap: usize,
    #[arg(long, default_value_t = 2000)]
    pub samples: u64,
    #[arg(long, default_value_t = 5)]
    pub retries: usize,
    #[arg(long, value_enum, default_value_t = CycleCap::Auto)]
    pub cycle_cap: CycleCap,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl MultitaskerArgs {
    fn params(&self) -> mtcap_core::Result<(ConstructionParams, ConstructionOptions)> {
        let params = ConstructionParams::new(self.n, self.d, self.epsilon, self.seed)?;
        let opts = ConstructionOptions {
            t_cap: self.t_cap,
            density_samples: self.samples,
            retries: self.retries,
            enforce_cycle_cap: match self.cycle_cap {
                CycleCap::Auto => None,
                CycleCap::Enforce => Some(true),
                CycleCap::Report => Some(false),
            },
            ..ConstructionOptions::default()
        };
        Ok((params, opts))
    }
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    /// G ⊟ H for a general graph G and a balanced bipartite H on |V(G)| per side.
    Boxminus {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gadget with a side-covering connected matching iff ν_c(G) ≥ k.
    PerfectCm {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unique-perfect-matching gadget whose α_n encodes the independence number.
    Mis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Balanced-biclique to connected-matching gadget on 3n per side.
    Biclique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Peeling floor on matchings in a constructed multitasker.
    Lemma62 {
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        d: usize,
        #[arg(long, default_value = "1/3")]
        epsilon: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        t_cap: usize,
        #[arg(long, default_value_t = 1000)]
        matchings: usize,
    },
    /// Sandwich bounds for G ⊟ H on random pairs.
    Claim34 {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Perfect-cover gadget equivalence on all small balanced graphs.
    Thm35 {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Biclique gadget identity on all small balanced graphs.
    #[command(name = "appendixA", alias = "appendix-a")]
    AppendixA {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] Error),
}

/// A finished command: the report, an optional graph for standard output
/// (table mode, no `--out`), and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub graph_text: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            self.report.to_json()
        } else {
            let mut s = self.report.to_table();
            if let Some(g) = &self.graph_text {
                s.push_str(g);
            }
            s
        }
    }
}

struct Ctx {
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    budget: Option<u64>,
    exceeded: bool,
    graph_text: Option<String>,
    json: bool,
}

impl Ctx {
    fn read(&mut self, name: &str, path: &Path) -> Result<String, CliError> {
        let shown = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|source| CliError::Read {
            path: shown.clone(),
            source,
        })?;
        self.inputs.push(InputDigest::new(name, &shown, &bytes));
        String::from_utf8(bytes).map_err(|e| CliError::Read {
            path: shown,
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })
    }

    fn bipartite(&mut self, name: &str, path: &Path) -> Result<BipartiteGraph, CliError> {
        let text = self.read(name, path)?;
        parse_bipartite(&text).map_err(|source| CliError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    fn general(&mut self, name: &str, path: &Path) -> Result<mtcap_core::GeneralGraph, CliError> {
        let text = self.read(name, path)?;
        parse_general(&text).map_err(|source| CliError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    /// Writes `text` to `out`, or keeps it for the report.
    fn emit_graph(&mut self, text: String, out: &Option<PathBuf>, result: &mut Value) -> Result<(), CliError> {
        match out {
            Some(path) => {
                std::fs::write(path, &text).map_err(|source| CliError::Write {
                    path: path.display().to_string(),
                    source,
                })?;
                result["out"] = json!(path.display().to_string());
            }
            None if self.json => result["graph"] = json!(text),
            None => self.graph_text = Some(text),
        }
        Ok(())
    }

    fn config(&self) -> CapacityConfig {
        CapacityConfig { budget: self.budget }
    }
}

fn graph_summary(g: &BipartiteGraph) -> Value {
    json!({ "n_a": g.n_a(), "n_b": g.n_b(), "edges": g.num_edges() })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Alpha(_) => "alpha",
        Command::AlphaUpto(_) => "alpha-upto",
        Command::Mt(_) => "mt",
        Command::NuC(_) => "nu-c",
        Command::Gen(GenCommand::HalfCover { .. }) => "gen half-cover",
        Command::Gen(GenCommand::Multitasker(_)) => "gen multitasker",
        Command::Gadget(GadgetCommand::Boxminus { .. }) => "gadget boxminus",
        Command::Gadget(GadgetCommand::PerfectCm { .. }) => "gadget perfect-cm",
        Command::Gadget(GadgetCommand::Mis { .. }) => "gadget mis",
        Command::Gadget(GadgetCommand::Biclique { .. }) => "gadget biclique",
        Command::Verify(VerifyCommand::Lemma62 { .. }) => "verify lemma62",
        Command::Verify(VerifyCommand::Claim34 { .. }) => "verify claim34",
        Command::Verify(VerifyCommand::Thm35 { .. }) => "verify thm35",
        Command::Verify(VerifyCommand::AppendixA { .. }) => "verify appendixA",
        Command::BadCycle(_) => "bad-cycle",
    }
}

/// Runs one parsed command line. Invalid input comes back as `Err` (exit 2);
/// an exhausted budget produces a report with exit code 1.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut ctx = Ctx {
        inputs: Vec::new(),
        seed: None,
        budget: cli.budget,
        exceeded: false,
        graph_text: None,
        json: cli.json,
    };
    let result = match dispatch(&cli.command, &mut ctx) {
        Ok(v) => v,
        Err(CliError::Core(Error::BudgetExceeded { budget })) => {
            ctx.exceeded = true;
            json!({ "error": format!("work budget of {budget} exceeded") })
        }
        Err(CliError::Core(Error::ConstructionFailed(cert))) => {
            ctx.exceeded = true;
            json!({ "constructed": false, "certificate": cert })
        }
        Err(e) => return Err(e),
    };
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        command: command_name(&cli.command).to_string(),
        inputs: ctx.inputs,
        seed: ctx.seed,
        result,
        budget: BudgetInfo {
            limit: ctx.budget,
            exceeded: ctx.exceeded,
        },
        timing_ms: cli.timing.then(|| start.elapsed().as_millis() as u64),
    };
    Ok(Outcome {
        report,
        graph_text: ctx.graph_text,
        exit_code: if ctx.exceeded { 1 } else { 0 },
    })
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Alpha(a) | Command::AlphaUpto(a) => {
            let g = ctx.bipartite("graph", &a.graph)?;
            let r = if matches!(cmd, Command::Alpha(_)) {
                alpha_k(&g, a.k, &ctx.config())?
            } else {
                alpha_upto(&g, a.k, &ctx.config())?
            };
            ctx.exceeded = !r.exhausted;
            let mut v = json!({
                "k": r.k,
                "alpha": r.alpha,
                "exhausted": r.exhausted,
                "matchings_checked": r.matchings_checked,
                "witness_size": r.witness_size,
                "witness": r.worst_matching,
                "best_induced": r.best_induced,
            });
            if !r.per_size.is_empty() {
                v["per_size"] = json!(r.per_size);
            }
            v
        }
        Command::Mt(a) => {
            let g = ctx.bipartite("graph", &a.graph)?;
            let decision = mt_decide(&g, a.k, a.eta, &ctx.config())?;
            json!({ "k": a.k, "eta": a.eta, "decision": decision })
        }
        Command::NuC(a) => {
            let g = ctx.bipartite("graph", &a.graph)?;
            let m = max_connected_matching(&g, ctx.budget)?;
            json!({ "nu_c": m.len(), "witness": m })
        }
        Command::BadCycle(a) => {
            let g = ctx.bipartite("graph", &a.graph)?;
            let budget = ctx.budget.unwrap_or(DEFAULT_CYCLE_BUDGET);
            let found = find_bad_cycle(&g, a.len_max, budget)?;
            let mut v = json!({ "len_max": a.len_max, "search": found });
            match &found {
                BadCycleSearch::Found(c) => v["ratio"] = json!(c.ratio()),
                BadCycleSearch::Inconclusive { .. } => ctx.exceeded = true,
                BadCycleSearch::None => {}
            }
            v
        }
        Command::Gen(GenCommand::HalfCover { n, seed, out }) => {
            ctx.seed = Some(*seed);
            let hc = gen_half_cover(*n, *seed)?;
            let mut v = graph_summary(&hc.graph);
            v["valid"] = json!(validate_half_cover(&hc.graph)?);
            ctx.emit_graph(write_bipartite(&hc.graph), out, &mut v)?;
            v
        }
        Command::Gen(GenCommand::Multitasker(a)) => {
            ctx.seed = Some(a.seed);
            let (params, opts) = a.params()?;
            let (g, cert) = build_multitasker(&params, &opts)?;
            let mut v = graph_summary(&g);
            v["constructed"] = json!(true);
            v["certificate"] = json!(cert);
            ctx.emit_graph(write_bipartite(&g), &a.out, &mut v)?;
            v
        }
        Command::Gadget(GadgetCommand::Boxminus { g, h, out }) => {
            let gg = ctx.general("g", g)?;
            let hh = ctx.bipartite("h", h)?;
            let gadget = boxminus(&gg, &hh)?;
            let mut v = graph_summary(&gadget);
            ctx.emit_graph(write_bipartite(&gadget), out, &mut v)?;
            v
        }
        Command::Gadget(GadgetCommand::PerfectCm { graph, k, out }) => {
            let g = ctx.bipartite("graph", graph)?;
            let gadget = perfect_cm_gadget(&g, *k)?;
            let mut v = graph_summary(&gadget);
            v["k"] = json!(k);
            ctx.emit_graph(write_bipartite(&gadget), out, &mut v)?;
            v
        }
        Command::Gadget(GadgetCommand::Mis { graph, out }) => {
            let h = ctx.general("graph", graph)?;
            let gadget = mis_gadget(&h);
            let mut v = graph_summary(&gadget);
            ctx.emit_graph(write_bipartite(&gadget), out, &mut v)?;
            v
        }
        Command::Gadget(GadgetCommand::Biclique { graph, out }) => {
            let g = ctx.bipartite("graph", graph)?;
            let gadget = biclique_cm_gadget(&g)?;
            let mut v = graph_summary(&gadget);
            ctx.emit_graph(write_bipartite(&gadget), out, &mut v)?;
            v
        }
        Command::Verify(VerifyCommand::Lemma62 { n, d, epsilon, seed, t_cap, matchings }) => {
            ctx.seed = Some(*seed);
            let params = ConstructionParams::new(*n, *d, *epsilon, *seed)?;
            let opts = ConstructionOptions {
                t_cap: *t_cap,
                ..ConstructionOptions::default()
            };
            json!(verify_lemma62(&params, &opts, *matchings, *seed)?)
        }
        Command::Verify(VerifyCommand::Claim34 { pairs, max_n, seed }) => {
            ctx.seed = Some(*seed);
            json!(verify_claim34(*pairs, *max_n, *seed, ctx.budget)?)
        }
        Command::Verify(VerifyCommand::Thm35 { max_n }) => json!(verify_thm35(*max_n, ctx.budget)?),
        Command::Verify(VerifyCommand::AppendixA { max_n }) => {
            json!(verify_appendix_a(*max_n, ctx.budget)?)
        }
    })
}

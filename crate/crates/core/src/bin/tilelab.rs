use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tilelab::density::threshold_formulas;
use tilelab::experiment::{
    default_c_grid, emit, run_base_comparison, run_extremal_demo, run_threshold_sweep, DemoSettings, OutputFormat,
    SweepConfig, DEFAULT_GREEDY_PASSES,
};
use tilelab::graph::{parse_any, to_edge_list, to_graph6};
use tilelab::random::{sample_perturbed, BaseSpec, PerturbedSpec};
use tilelab::regularity::{
    check_eps_regular_exact, check_eps_regular_sampled, check_super_regular, complete_pair_tiling, greedy_star_tiling,
    synthetic_pair_instance, CheckMode, CompletionParams, PairInstance,
};
use tilelab::tiling::{max_tiling_exact, max_tiling_greedy, perfect_tiling_with, PerfectOptions, TilingStatus};
use tilelab::{Graph, Pattern, Rational, Seed, VertexSet};

#[derive(Parser)]
#[command(name = "tilelab", version, about = "Perfect H-tilings in randomly perturbed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Density invariants and balancedness class of a template.
    Classify {
        #[arg(long, default_value = "k3")]
        pattern: String,
        /// Also evaluate the threshold formulas at this n.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1")]
        c: Rational,
    },
    /// Sample base ∪ G(n, p).
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// empty | complete | extremal:A | mindeg:ALPHA | file:PATH
        #[arg(long, default_value = "empty")]
        base: String,
        /// Template used to validate an extremal base.
        #[arg(long, default_value = "k3")]
        pattern: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a perfect (or maximum) tiling of a graph file.
    Tile {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "k3")]
        pattern: String,
        #[arg(long, value_enum, default_value_t = TileMode::Perfect)]
        mode: TileMode,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_GREEDY_PASSES)]
        greedy_passes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// eps-regularity (and optionally super-regularity) of a vertex pair.
    CheckRegular {
        #[arg(long)]
        graph: PathBuf,
        /// Side A, e.g. `0..8` or `0,2,5`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        eps: Rational,
        /// Also check (eps, d)-super-regularity.
        #[arg(long)]
        d: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy K_{1,t}-tiling.
    StarTile {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "1/10")]
        eps: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfect tiling of S ∪ T from a super-regular cross layer and a random layer.
    CompletePair(CompletePairArgs),
    /// Monte Carlo threshold sweep from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sweep over the complete bipartite extremal base, with inner-class tilings.
    ExtremalDemo {
        #[command(flatten)]
        common: DemoArgs,
        #[arg(long, default_value = "1/4")]
        a: Rational,
    },
    /// Empty base against a minimum-degree base with shared random layers.
    CompareBase {
        #[command(flatten)]
        common: DemoArgs,
        #[arg(long, default_value = "1/4")]
        alpha: Rational,
    },
}

#[derive(Args)]
struct CompletePairArgs {
    #[arg(long, default_value = "k3")]
    pattern: String,
    #[arg(long, default_value = "1/5")]
    eps5: Rational,
    #[arg(long, default_value = "1/50")]
    phi: Rational,
    #[arg(long, default_value = "1/10")]
    d1: Rational,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    /// Cross layer graph file; omit for a synthetic instance.
    #[arg(long, requires_all = ["random", "s", "t"])]
    cross: Option<PathBuf>,
    #[arg(long)]
    random: Option<PathBuf>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    t: Option<String>,
    /// Synthetic instance: side sizes, cross-layer (eps, d) and random-layer p.
    #[arg(long, default_value_t = 60)]
    size: usize,
    #[arg(long, default_value = "1/20")]
    cross_eps: Rational,
    #[arg(long, default_value = "2/5")]
    cross_d: Rational,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, default_value = "k3")]
    pattern: String,
    #[arg(long, default_value_t = 60)]
    n: usize,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    c_grid: Option<Vec<Rational>>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_GREEDY_PASSES)]
    greedy_passes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl DemoArgs {
    fn settings(&self) -> DemoSettings {
        DemoSettings { trials: self.trials, seed: Seed(self.seed), budget: self.budget, greedy_passes: self.greedy_passes }
    }

    fn grid(&self) -> Vec<Rational> {
        self.c_grid.clone().unwrap_or_else(default_c_grid)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    EdgeList,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum TileMode {
    Perfect,
    Max,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `a..b` (half-open) or a comma-separated list of vertices.
fn parse_vertices(n: usize, spec: &str) -> Result<VertexSet> {
    let members: Vec<usize> = match spec.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse::<usize>()?..hi.trim().parse::<usize>()?).collect(),
        None => spec.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse()).collect::<Result<_, _>>()?,
    };
    Ok(VertexSet::from_slice(n, &members)?)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    write_out(out, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn status_json(status: &TilingStatus, nodes: u64, ms: u128) -> serde_json::Value {
    match status {
        TilingStatus::Found(t) => json!({
            "status": status.label(), "copies": t.vertex_lists(), "nodes_explored": nodes, "elapsed_ms": ms
        }),
        _ => json!({ "status": status.label(), "nodes_explored": nodes, "elapsed_ms": ms }),
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Classify { pattern, n, c } => {
            let h = Pattern::from_spec(&pattern)?;
            let thresholds = n.map(|n| threshold_formulas(h.graph(), n, c)).transpose()?;
            write_json(None, &json!({ "pattern": h.name(), "profile": h.profile(), "thresholds": thresholds }))
        }
        Command::Sample { n, p, base, pattern, seed, format, out } => {
            let h = Pattern::from_spec(&pattern)?;
            let spec = PerturbedSpec { base: BaseSpec::parse(&base, &h)?, p };
            let (_, g) = sample_perturbed(&spec, n, Seed(seed))?;
            let text = match format {
                GraphFormat::EdgeList => to_edge_list(&g),
                GraphFormat::Graph6 => to_graph6(&g) + "\n",
            };
            write_out(out.as_deref(), &text)
        }
        Command::Tile { graph, pattern, mode, budget, greedy_passes, seed, out } => {
            let g = read_graph(&graph)?;
            let h = Pattern::from_spec(&pattern)?;
            let value = match mode {
                TileMode::Perfect => {
                    let opts = PerfectOptions { budget, greedy_passes, seed: Seed(seed), hint: None, within: None };
                    let r = perfect_tiling_with(&g, &h, &opts);
                    status_json(&r.status, r.nodes_explored, r.elapsed.as_millis())
                }
                TileMode::Max => {
                    let m = max_tiling_exact(&g, &h, budget);
                    json!({ "copies": m.tiling.vertex_lists(), "size": m.size, "exact": m.exact, "nodes_explored": m.nodes_explored })
                }
                TileMode::Greedy => {
                    let t = max_tiling_greedy(&g, &h, Seed(seed), greedy_passes);
                    json!({ "copies": t.vertex_lists(), "size": t.len(), "covered": t.covered_count() })
                }
            };
            write_json(out.as_deref(), &value)
        }
        Command::CheckRegular { graph, a, b, eps, d, mode, trials, seed, out } => {
            let g = read_graph(&graph)?;
            let (a, b) = (parse_vertices(g.n(), &a)?, parse_vertices(g.n(), &b)?);
            let check = match mode {
                Mode::Exact => CheckMode::Exact,
                Mode::Sampled => CheckMode::Sampled { trials, seed: Seed(seed) },
            };
            let regular = match check {
                CheckMode::Exact => check_eps_regular_exact(&g, &a, &b, eps)?,
                CheckMode::Sampled { trials, seed } => check_eps_regular_sampled(&g, &a, &b, eps, trials, seed)?,
            };
            let super_regular = d.map(|d| check_super_regular(&g, &a, &b, eps, d, check)).transpose()?;
            write_json(out.as_deref(), &json!({ "regularity": regular, "super_regularity": super_regular }))
        }
        Command::StarTile { graph, t, eps, out } => {
            let g = read_graph(&graph)?;
            write_json(out.as_deref(), &greedy_star_tiling(&g, t, eps)?)
        }
        Command::CompletePair(args) => complete_pair(args),
        Command::Sweep { config, seed, out, format } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg: SweepConfig = serde_json::from_str(&text).context("parsing sweep config")?;
            if let Some(s) = seed {
                cfg.seed = Seed(s);
            }
            let result = run_threshold_sweep(&cfg)?;
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            emit(&result, format, &out)?;
            Ok(())
        }
        Command::ExtremalDemo { common, a } => {
            let h = Pattern::from_spec(&common.pattern)?;
            let demo = run_extremal_demo(&h, common.n, a, &common.grid(), &common.settings())?;
            write_json(common.out.as_deref(), &demo)
        }
        Command::CompareBase { common, alpha } => {
            let h = Pattern::from_spec(&common.pattern)?;
            let cmp = run_base_comparison(&h, common.n, alpha, &common.grid(), &common.settings())?;
            write_json(common.out.as_deref(), &cmp)
        }
    }
}

fn complete_pair(args: CompletePairArgs) -> Result<()> {
    let h = Pattern::from_spec(&args.pattern)?;
    let inst = match &args.cross {
        Some(cross) => {
            let cross = read_graph(cross)?;
            let random = read_graph(args.random.as_deref().expect("required by clap"))?;
            let n = cross.n();
            let s = parse_vertices(n, args.s.as_deref().expect("required by clap"))?;
            let t = parse_vertices(n, args.t.as_deref().expect("required by clap"))?;
            PairInstance::new(cross, random, s, t)?
        }
        None if args.size == 0 => bail!("side size must be positive"),
        None => synthetic_pair_instance(args.size, args.size, args.cross_eps, args.cross_d, args.p, Seed(args.seed))?,
    };
    let params = CompletionParams { eps5: args.eps5, phi: args.phi, d1: args.d1, budget: args.budget, ..Default::default() };
    let r = complete_pair_tiling(&inst, &h, &params, Seed(args.seed))?;
    if matches!(r.status, TilingStatus::Unknown) {
        eprintln!("no tiling found within the budget");
    }
    let mut value = status_json(&r.status, r.nodes_explored, 0);
    value["route"] = json!(r.route);
    value["attempts"] = json!(r.attempts);
    value["params"] = json!(params);
    value["note"] = json!("eps5, phi and d1 are desk-scale engineering defaults");
    write_json(args.out.as_deref(), &value)
}

//! `cycind`: batch front-end for counting, constructing, bounding and
//! searching induced cycles, and for the verification suites.
//!
//! JSON reports go to stdout (or `--out`); short human-readable summaries go
//! to stderr. Exit status is 0 on success, 1 when a check fails and 2 on a
//! usage or input error.

mod manifest;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cycind::bounds::{self, BoundAudit, InducibilityBracket, MinDegreeCheck};
use cycind::constructions::Construction;
use cycind::count::{self, Count, CountReport, Detail};
use cycind::io::{parse_graph, to_edge_list, to_graph6};
use cycind::search::{self, ResultsCache, SearchMode, SearchResult};
use cycind::{rng, Graph};

use manifest::RunManifest;
use suites::Suite;

/// Stream used to derive the seed handed to `random:N,P` constructions.
const STREAM_CONSTRUCT: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "cycind", version, about = "Induced cycle counts, bounds and extremal search")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct Global {
    /// Master seed; every random choice derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the global pool.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
struct GraphSource {
    /// Graph file, graph6 or edge list (autodetected).
    #[arg(long, conflicts_with = "construct")]
    input: Option<PathBuf>,
    /// Construction: cycle:K, kbipartite:A,B, blowup:CK:t,
    /// iterated-blowup:CK:depth=M, random:N,P, petersen.
    #[arg(long)]
    construct: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum CountMode {
    Oracle,
    Fast,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Roots {
    None,
    Vertex,
    Full,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum GraphFormat {
    Graph6,
    Edgelist,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum SearchModeArg {
    Exhaustive,
    Local,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Count induced k-cycles, optionally rooted at vertices, edges, cherries.
    Count {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CountMode::Fast)]
        mode: CountMode,
        /// Run both oracle and fast counters and fail unless they agree.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Roots::None)]
        roots: Roots,
    },
    /// Build a graph from the construction language.
    Construct {
        #[command(flatten)]
        source: GraphSource,
        /// Also write the graph itself to this file.
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Evaluate every upper bound on a graph against exact counts.
    Bounds {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: usize,
    },
    /// Search for graphs on n vertices maximising the induced k-cycle count.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        mode: Option<SearchModeArg>,
        /// Shorthand for --mode exhaustive.
        #[arg(long, conflicts_with_all = ["mode", "local"])]
        exhaustive: bool,
        /// Shorthand for --mode local.
        #[arg(long, conflicts_with = "mode")]
        local: bool,
        /// Local-search steps per chain.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        /// Independent local-search chains.
        #[arg(long, default_value_t = 1)]
        chains: usize,
        /// Permit exhaustive search one order past the default ceiling.
        #[arg(long)]
        allow_large: bool,
        /// Directory for cached results keyed by (n, k, mode, seed, budget).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run property suites; exit status is nonzero if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random graphs for the handshake identities.
        #[arg(long, default_value_t = 40)]
        graphs: usize,
        /// Random instances for the symmetrisation identity.
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Construct { .. } => "construct",
            Command::Bounds { .. } => "bounds",
            Command::Search { .. } => "search",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    graph6: String,
}

impl GraphSummary {
    fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            graph6: to_graph6(g),
        }
    }
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    manifest: RunManifest,
    pass: bool,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct CountBody {
    graph: GraphSummary,
    mode: CountMode,
    report: CountReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<CountCheck>,
}

#[derive(Serialize)]
struct CountCheck {
    oracle_total: Count,
    fast_total: Count,
    rooted_agree: bool,
    agree: bool,
}

#[derive(Serialize)]
struct ConstructBody {
    graph: GraphSummary,
    edge_list: String,
}

#[derive(Serialize)]
struct BoundsBody {
    graph: GraphSummary,
    k: usize,
    audit: BoundAudit,
    #[serde(skip_serializing_if = "Option::is_none")]
    bracket: Option<InducibilityBracket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_degree: Option<MinDegreeCheck>,
}

#[derive(Serialize)]
struct SearchBody {
    result: SearchResult,
    witnesses_verified: bool,
    cached: bool,
}

#[derive(Serialize, Default)]
struct VerifyBody {
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<suites::AnalyticReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<suites::BoundsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identities: Option<suites::IdentitiesReport>,
}

fn load_graph(src: &GraphSource, manifest: &mut RunManifest) -> Result<Graph> {
    match (&src.input, &src.construct) {
        (Some(path), None) => {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            manifest.record_input(path, &bytes);
            let text = String::from_utf8(bytes).context("graph file is not UTF-8")?;
            Ok(parse_graph(&text)?.0)
        }
        (None, Some(spec)) => {
            let c: Construction = spec.parse()?;
            let seed = rng::derive_seed(manifest.seed, STREAM_CONSTRUCT);
            if matches!(c, Construction::Random { .. }) {
                manifest.record_seed("construct", seed);
            }
            Ok(c.build(seed)?)
        }
        _ => bail!("exactly one of --input or --construct is required"),
    }
}

fn emit<T: Serialize>(out: Option<&Path>, mut manifest: RunManifest, pass: bool, body: T) -> Result<bool> {
    manifest.finish();
    let text = serde_json::to_string_pretty(&Report { manifest, pass, body })?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(pass)
}

fn run_count(
    g: &Graph,
    k: usize,
    mode: CountMode,
    check: bool,
    roots: Roots,
) -> Result<(bool, CountBody)> {
    let detail = match roots {
        Roots::None => Detail::Total,
        Roots::Vertex => Detail::Rooted,
        Roots::Full => Detail::Full,
    };
    let report = match (mode, roots) {
        (CountMode::Fast, _) => count::count_fast_report(g, k, detail)?,
        (CountMode::Oracle, Roots::Full) => bail!("--roots full requires --mode fast"),
        (CountMode::Oracle, Roots::Vertex) => count::count_oracle(g, k)?,
        (CountMode::Oracle, Roots::None) => CountReport {
            rooted: None,
            ..count::count_oracle(g, k)?
        },
    };
    let check = if check {
        let oracle = count::count_oracle(g, k)?;
        let fast = count::count_fast_report(g, k, Detail::Rooted)?;
        let rooted_agree = oracle.rooted == fast.rooted;
        Some(CountCheck {
            oracle_total: oracle.total,
            fast_total: fast.total,
            rooted_agree,
            agree: rooted_agree && oracle.total == fast.total && report.total == fast.total,
        })
    } else {
        None
    };
    let pass = check.as_ref().is_none_or(|c| c.agree);
    eprintln!("n={} k={k} D_k(G)={}{}", g.n(), report.total, match &check {
        Some(c) => format!(" oracle={} fast={} agree={}", c.oracle_total, c.fast_total, c.agree),
        None => String::new(),
    });
    Ok((
        pass,
        CountBody {
            graph: GraphSummary::of(g),
            mode,
            report,
            check,
        },
    ))
}

fn run_bounds(g: &Graph, k: usize) -> Result<(bool, BoundsBody)> {
    let audit = bounds::audit(g, k)?;
    let bracket = if k >= 5 { Some(bounds::inducibility_bracket(k)?) } else { None };
    let min_degree = if k >= 6 && g.n() >= k { Some(bounds::min_degree_check(g, k)?) } else { None };
    let pass = audit.violations.is_empty() && min_degree.as_ref().is_none_or(|m| m.pass && m.case_bound_pass);
    eprintln!("{:<12} {:>10}", "bound", "exact/bound");
    for (kind, ratio) in &audit.tightest {
        eprintln!("{kind:<12} {ratio:>10.4}");
    }
    eprintln!("{} evaluations, {} violations", audit.checked, audit.violations.len());
    Ok((
        pass,
        BoundsBody {
            graph: GraphSummary::of(g),
            k,
            audit,
            bracket,
            min_degree,
        },
    ))
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    n: usize,
    k: usize,
    mode: SearchMode,
    budget: u64,
    chains: usize,
    allow_large: bool,
    cache: Option<&Path>,
    manifest: &mut RunManifest,
) -> Result<(bool, SearchBody)> {
    let seed = manifest.seed;
    let (key_seed, key_budget) = match mode {
        SearchMode::Exhaustive => (None, None),
        SearchMode::Local => (Some(seed), Some(budget)),
    };
    let cache = cache.map(ResultsCache::new).transpose()?;
    // cache keys carry no chain count, so only single-chain runs use it
    let cacheable = chains == 1;
    let hit = match &cache {
        Some(c) if cacheable => c.get(n, k, mode, key_seed, key_budget)?,
        _ => None,
    };
    let cached = hit.is_some();
    let result = match (hit, mode) {
        (Some(r), _) => r,
        (None, SearchMode::Exhaustive) => search::exhaustive_max_with(n, k, allow_large)?,
        (None, SearchMode::Local) => search::local_search_chains(n, k, budget, seed, chains)?,
    };
    if let (Some(c), false, true) = (&cache, cached, cacheable) {
        c.put(&result)?;
    }
    let witnesses_verified = result.verify_witnesses()?;
    eprintln!(
        "n={n} k={k} mode={} best={} witnesses={} verified={witnesses_verified}{}",
        mode.as_str(),
        result.best_count,
        result.witnesses.len(),
        if cached { " (cached)" } else { "" }
    );
    Ok((
        witnesses_verified,
        SearchBody {
            result,
            witnesses_verified,
            cached,
        },
    ))
}

fn run_verify(suite: Suite, graphs: usize, instances: usize, manifest: &mut RunManifest) -> Result<(bool, VerifyBody)> {
    let mut body = VerifyBody::default();
    let mut pass = true;
    if matches!(suite, Suite::Analytic | Suite::All) {
        let r = suites::analytic_suite()?;
        eprintln!("{:<16} {:>16} {:>6}", "problem", "max", "pass");
        for p in &r.problems {
            let name = serde_json::to_value(p.problem.problem)?;
            eprintln!("{:<16} {:>16.10} {:>6}", name.as_str().unwrap_or("?"), p.max_value, p.pass);
        }
        pass &= r.pass;
        body.analytic = Some(r);
    }
    if matches!(suite, Suite::Bounds | Suite::All) {
        let r = suites::bounds_suite()?;
        eprintln!("bounds: {} graphs, {} evaluations, {} violations", r.graphs, r.checked, r.violations);
        pass &= r.pass;
        body.bounds = Some(r);
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        manifest.record_seed("handshake", rng::derive_seed(manifest.seed, suites::STREAM_HANDSHAKE));
        manifest.record_seed("symmetrise", rng::derive_seed(manifest.seed, suites::STREAM_SYMMETRISE));
        let r = suites::identities_suite(manifest.seed, graphs, instances)?;
        eprintln!(
            "identities: handshake {}/{}, symmetrisation {}/{}, k=4 counterexample lhs={} rhs={}",
            r.handshake_passed,
            r.handshake_instances,
            r.symmetrisation_passed,
            r.symmetrisation_instances,
            r.k4_counterexample.lhs,
            r.k4_counterexample.rhs
        );
        pass &= r.pass;
        body.identities = Some(r);
    }
    Ok((pass, body))
}

fn run(cli: Cli) -> Result<bool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.max(1))
        .build_global()
        .context("configuring the thread pool")?;
    let mut manifest = RunManifest::start(cli.command.name(), &cli.command, cli.global.seed, cli.global.threads)?;
    let out = cli.global.out.as_deref();
    match cli.command {
        Command::Count { source, k, mode, check, roots } => {
            let g = load_graph(&source, &mut manifest)?;
            let (pass, body) = run_count(&g, k, mode, check, roots)?;
            emit(out, manifest, pass, body)
        }
        Command::Construct { source, write, format } => {
            let g = load_graph(&source, &mut manifest)?;
            if let Some(path) = &write {
                let text = match format {
                    GraphFormat::Graph6 => to_graph6(&g) + "\n",
                    GraphFormat::Edgelist => to_edge_list(&g),
                };
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!("n={} edges={} graph6={}", g.n(), g.edge_count(), to_graph6(&g));
            let body = ConstructBody {
                graph: GraphSummary::of(&g),
                edge_list: to_edge_list(&g),
            };
            emit(out, manifest, true, body)
        }
        Command::Bounds { source, k } => {
            let g = load_graph(&source, &mut manifest)?;
            let (pass, body) = run_bounds(&g, k)?;
            emit(out, manifest, pass, body)
        }
        Command::Search { n, k, mode, exhaustive, local, budget, chains, allow_large, cache } => {
            let mode = match (mode, exhaustive, local) {
                (Some(SearchModeArg::Exhaustive), ..) | (None, true, _) => SearchMode::Exhaustive,
                (Some(SearchModeArg::Local), ..) | (None, _, true) => SearchMode::Local,
                (None, false, false) if n <= search::EXHAUSTIVE_CEILING => SearchMode::Exhaustive,
                (None, false, false) => SearchMode::Local,
            };
            let (pass, body) = run_search(n, k, mode, budget, chains, allow_large, cache.as_deref(), &mut manifest)?;
            emit(out, manifest, pass, body)
        }
        Command::Verify { suite, graphs, instances } => {
            let (pass, body) = run_verify(suite, graphs, instances, &mut manifest)?;
            emit(out, manifest, pass, body)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

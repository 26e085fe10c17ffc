use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use plexnet::centrality::{CentralitySet, Metric, RankedTable};
use plexnet::community::{compare_partitions, Partition};
use plexnet::degree_stats::{degree_distribution, fit_table, FitMethod};
use plexnet::export::tables::{centrality_csv, fit_csv, partition_csv, read_partition_csv};
use plexnet::export::{
    force_layout, layer_to_graphml, render_clique_report, render_fiedler_bisection,
    render_fit_outcomes, render_girvan_newman, render_ranked_table, render_report, to_dot,
    NodeAnnotations,
};
use plexnet::ingest::{serialize_profiles, to_records, DanglingPolicy};
use plexnet::EdgeKind;
use plexnet_cli::analysis::{self, clique_report, clique_set, connected_part, fit_outcome, load};
use plexnet_cli::config::{CliqueConfig, PipelineConfig};
use plexnet_cli::pipeline::{analyze, run_pipeline, write_atomic};

#[derive(Parser)]
#[command(name = "plexnet", version, about = "Multiplex social network analysis")]
struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Profile records (JSON lines) or an edge list (.csv with source,target,kind).
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Handling of relations that point at unknown ids.
    #[arg(long, value_parser = parse_policy, default_value = "materialize-stub")]
    dangling: DanglingPolicy,
}

#[derive(Args, Clone)]
struct ScopeArgs {
    /// Analyse the largest connected component of the layer (default).
    #[arg(long, conflicts_with = "full_layer")]
    giant_component: bool,
    /// Analyse every node that has an edge in the layer.
    #[arg(long)]
    full_layer: bool,
}

impl ScopeArgs {
    fn giant(&self) -> Option<bool> {
        match (self.giant_component, self.full_layer) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }
}

#[derive(Args, Clone)]
struct LayerArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Relationship layer: work, alliance, friendship, family or rivalry.
    #[arg(long, short = 'l', value_parser = parse_kind)]
    layer: EdgeKind,
    #[command(flatten)]
    scope: ScopeArgs,
}

impl LayerArgs {
    fn graph(&self, net: &plexnet::MultiplexNetwork) -> anyhow::Result<plexnet::LayerGraph> {
        analysis::analysis_graph(net, self.layer, self.scope.giant().unwrap_or(true))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Degree,
    Betweenness,
    Closeness,
    Eigenvector,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommunityMethod {
    GirvanNewman,
    Fiedler,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and resolve input records; optionally write them back normalized.
    Ingest {
        #[command(flatten)]
        input: InputArgs,
        /// Normalized JSON-lines output.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Node, edge and giant-component counts per layer.
    Summary {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Top-k nodes by degree, betweenness, closeness and eigenvector centrality.
    Centrality {
        #[command(flatten)]
        layer: LayerArgs,
        #[arg(long, value_enum, default_value = "all")]
        metric: MetricArg,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Also write all scores as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Girvan-Newman or Fiedler partitions, or a comparison of two partitions.
    Communities(CommunitiesArgs),
    /// Maximal cliques, one per line, with the maximum-clique overlaps.
    Cliques {
        #[command(flatten)]
        layer: LayerArgs,
        #[arg(long)]
        maximum_only: bool,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        /// List isolated nodes as cliques of size 1.
        #[arg(long)]
        include_trivial: bool,
    },
    /// Power-law fit of the layer's degree distribution.
    Fit {
        #[command(flatten)]
        layer: LayerArgs,
        #[arg(long, value_parser = parse_fit_method, default_value = "mle")]
        method: FitMethod,
        #[arg(long = "kmin", default_value_t = 1)]
        k_min: usize,
        /// Emit the table in log10 coordinates.
        #[arg(long)]
        log: bool,
        /// Write the k,p_k,fitted table here instead of stdout.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Seeded force-directed layout, written as GraphML.
    Layout {
        #[command(flatten)]
        layer: LayerArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = plexnet::export::layout::DEFAULT_ITERATIONS)]
        iters: usize,
        #[arg(long, short = 'o')]
        output: PathBuf,
        /// Also write a Graphviz DOT file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run every analysis and write the plain-text report.
    Report {
        #[command(flatten)]
        run: RunArgs,
        /// Report every layer that has edges.
        #[arg(long, conflicts_with = "layer")]
        all: bool,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Run every analysis and write all artifacts under --out-dir.
    Pipeline {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CommunitiesArgs {
    #[command(subcommand)]
    compare: Option<CompareCommand>,
    /// Profile records (JSON lines) or an edge list (.csv with source,target,kind).
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Handling of relations that point at unknown ids.
    #[arg(long, value_parser = parse_policy, default_value = "materialize-stub")]
    dangling: DanglingPolicy,
    /// Relationship layer: work, alliance, friendship, family or rivalry.
    #[arg(long, short = 'l', value_parser = parse_kind)]
    layer: Option<EdgeKind>,
    #[command(flatten)]
    scope: ScopeArgs,
    #[arg(long, value_enum, default_value = "girvan-newman")]
    method: CommunityMethod,
    /// Girvan-Newman splits to perform.
    #[arg(long, default_value_t = 1)]
    cuts: usize,
    /// Write the node,community CSV here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CompareCommand {
    /// Count nodes that change community between two partition CSVs.
    Compare { first: PathBuf, second: PathBuf },
}

/// Options shared by `report` and `pipeline`; flags override the config file.
#[derive(Args)]
struct RunArgs {
    /// TOML configuration file.
    #[arg(long, short = 'c')]
    config: Option<PathBuf>,
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Layer to analyse; repeat for several. Default: every layer with edges.
    #[arg(long, short = 'l', value_parser = parse_kind)]
    layer: Vec<EdgeKind>,
    #[command(flatten)]
    scope: ScopeArgs,
    #[arg(long, value_parser = parse_policy)]
    dangling: Option<DanglingPolicy>,
    /// Layout seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    top: Option<usize>,
    #[arg(long)]
    cuts: Option<usize>,
    #[arg(long)]
    min_size: Option<usize>,
    #[arg(long = "kmin")]
    k_min: Option<usize>,
    #[arg(long)]
    no_layout: bool,
}

impl RunArgs {
    fn config(&self) -> anyhow::Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::load(path)?,
            None => PipelineConfig::default(),
        };
        if let Some(input) = &self.input {
            cfg.input = Some(input.clone());
        }
        if !self.layer.is_empty() {
            cfg.layers = self.layer.clone();
        }
        if let Some(giant) = self.scope.giant() {
            cfg.giant_component = giant;
        }
        if let Some(policy) = self.dangling {
            cfg.dangling = policy;
        }
        if let Some(seed) = self.seed {
            cfg.layout.seed = Some(seed);
        }
        if let Some(iters) = self.iters {
            cfg.layout.iterations = iters;
        }
        if self.no_layout {
            cfg.layout.enabled = false;
        }
        if let Some(top) = self.top {
            cfg.centrality.top = top;
        }
        if let Some(cuts) = self.cuts {
            cfg.communities.cuts = cuts;
        }
        if let Some(min_size) = self.min_size {
            cfg.cliques.min_size = min_size;
        }
        if let Some(k_min) = self.k_min {
            cfg.fit.k_min = k_min;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_kind(s: &str) -> Result<EdgeKind, String> {
    s.parse().map_err(|e: plexnet::Error| e.to_string())
}

fn parse_policy(s: &str) -> Result<DanglingPolicy, String> {
    s.parse().map_err(|e: plexnet::Error| e.to_string())
}

fn parse_fit_method(s: &str) -> Result<FitMethod, String> {
    s.parse().map_err(|e: plexnet::Error| e.to_string())
}

/// Writes to the file when given, otherwise to stdout.
fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(path) => write_atomic(path, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Ingest {
            input,
            output,
            json,
        } => {
            let loaded = load(&input.input, input.dangling)?;
            if let Some(path) = output {
                write_atomic(&path, &serialize_profiles(&to_records(&loaded.net)))?;
            }
            let text = if json {
                loaded.summary.to_json() + "\n"
            } else {
                loaded.summary.to_string()
            };
            emit(None, &text)
        }
        Command::Summary { input, json } => {
            let loaded = load(&input.input, input.dangling)?;
            let mut text = if json {
                loaded.summary.to_json() + "\n"
            } else {
                loaded.summary.to_string()
            };
            if !json {
                for kind in EdgeKind::ALL {
                    let g = connected_part(&loaded.net.layer(kind));
                    if g.edge_count() > 0 {
                        let d = degree_distribution(&g)?;
                        text += &format!(
                            "{kind}: {} connected nodes, mean degree {:.3}, max degree {}\n",
                            g.node_count(),
                            d.mean_degree(),
                            d.max_degree()
                        );
                    }
                }
            }
            emit(None, &text)
        }
        Command::Centrality {
            layer,
            metric,
            top,
            csv,
        } => {
            if top == 0 {
                bail!("--top must be at least 1");
            }
            let loaded = load(&layer.input.input, layer.input.dangling)?;
            let g = layer.graph(&loaded.net)?;
            let set = CentralitySet::compute(&g).context("centrality")?;
            let mut table = RankedTable::from_set(&set, top);
            let only = match metric {
                MetricArg::Degree => Some(Metric::Degree),
                MetricArg::Betweenness => Some(Metric::Betweenness),
                MetricArg::Closeness => Some(Metric::Closeness),
                MetricArg::Eigenvector => Some(Metric::Eigenvector),
                MetricArg::All => None,
            };
            if let Some(m) = only {
                table.columns.retain(|c| c.metric == m);
            }
            if let Some(path) = csv {
                write_atomic(&path, &centrality_csv(&set)?)?;
            }
            emit(None, &render_ranked_table(&table))
        }
        Command::Communities(args) => communities(args),
        Command::Cliques {
            layer,
            maximum_only,
            min_size,
            include_trivial,
        } => {
            let loaded = load(&layer.input.input, layer.input.dangling)?;
            let full = loaded.net.layer(layer.layer);
            if full.edge_count() == 0 {
                bail!("the {} layer has no edges", layer.layer);
            }
            if layer.scope.giant().is_some() {
                warn!("cliques are always enumerated on the full layer");
            }
            let cfg = CliqueConfig {
                enabled: true,
                min_size,
                maximum_only,
                include_trivial,
            };
            emit(
                None,
                &render_clique_report(&clique_report(&full, clique_set(&full, &cfg))),
            )
        }
        Command::Fit {
            layer,
            method,
            k_min,
            log,
            output,
        } => {
            let loaded = load(&layer.input.input, layer.input.dangling)?;
            let full = loaded.net.layer(layer.layer);
            let outcome = fit_outcome(&full, method, k_min);
            let fit = match &outcome.result {
                Ok(fit) => fit.clone(),
                Err(reason) => bail!("{method} fit failed: {reason}"),
            };
            let table = fit_csv(&fit_table(&degree_distribution(&full)?, &fit), log)?;
            match output {
                Some(path) => {
                    write_atomic(&path, &table)?;
                    emit(None, &render_fit_outcomes(&[outcome]))
                }
                None => {
                    eprint!("{}", render_fit_outcomes(&[outcome]));
                    emit(None, &table)
                }
            }
        }
        Command::Layout {
            layer,
            seed,
            iters,
            output,
            dot,
        } => {
            let loaded = load(&layer.input.input, layer.input.dangling)?;
            let g = layer.graph(&loaded.net)?;
            let params = plexnet::export::LayoutParams::default();
            let result = force_layout(&g, seed, iters, params)?;
            let ann = NodeAnnotations::default().with_layout(&result);
            write_atomic(&output, &layer_to_graphml(&loaded.net, &g, &ann)?)?;
            if let Some(path) = dot {
                write_atomic(&path, &to_dot(&loaded.net, &g, &ann)?)?;
            }
            Ok(())
        }
        Command::Report { run, all, output } => {
            let mut cfg = run.config()?;
            if all {
                cfg.layers.clear();
            }
            let (bundle, _, failures) = analyze(&cfg)?;
            emit(output.as_deref(), &render_report(&bundle)?)?;
            match failures.into_iter().next() {
                Some(e) => Err(e),
                None => Ok(()),
            }
        }
        Command::Pipeline { run, out_dir } => {
            let mut cfg = run.config()?;
            if let Some(dir) = out_dir {
                cfg.out_dir = dir;
            }
            let outcome = run_pipeline(&cfg)?;
            for path in &outcome.written {
                log::info!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn communities(args: CommunitiesArgs) -> anyhow::Result<()> {
    if let Some(CompareCommand::Compare { first, second }) = args.compare {
        let read = |path: &Path| -> anyhow::Result<Partition> {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            read_partition_csv(&text).with_context(|| format!("parsing {}", path.display()))
        };
        let cmp = compare_partitions(&read(&first)?, &read(&second)?)?;
        let mut text = format!("migrations: {}\n", cmp.migrations);
        for (a, b) in &cmp.matching {
            text += &format!("community {a} -> {b}\n");
        }
        return emit(None, &text);
    }
    // Flattening an optional LayerArgs does not survive clap's subcommand
    // handling, so the layer arguments are assembled here.
    let (Some(input), Some(kind)) = (args.input, args.layer) else {
        bail!("--input and --layer are required unless using `communities compare`");
    };
    let layer = LayerArgs {
        input: InputArgs {
            input,
            dangling: args.dangling,
        },
        layer: kind,
        scope: args.scope,
    };
    if args.cuts == 0 {
        bail!(plexnet_cli::ConfigError::ZeroCuts);
    }
    let loaded = load(&layer.input.input, layer.input.dangling)?;
    let g = layer.graph(&loaded.net)?;
    let layer_nodes = connected_part(&loaded.net.layer(layer.layer)).node_count();
    let (summary, partition) = match args.method {
        CommunityMethod::GirvanNewman => {
            let d = plexnet::community::girvan_newman(&g, args.cuts).context("Girvan-Newman")?;
            (
                render_girvan_newman(&d, layer_nodes),
                d.last_partition().clone(),
            )
        }
        CommunityMethod::Fiedler => {
            let s = plexnet::community::fiedler_bisection(
                &g,
                plexnet::community::DEFAULT_SPECTRAL_TOLERANCE,
            )
            .context("Fiedler bisection")?;
            if s.is_degenerate() {
                warn!(
                    "second Laplacian eigenvalue has multiplicity {}",
                    s.multiplicity
                );
            }
            (render_fiedler_bisection(&s, layer_nodes), s.partition)
        }
    };
    let csv = partition_csv(&partition)?;
    match args.output {
        Some(path) => {
            write_atomic(&path, &csv)?;
            emit(None, &summary)
        }
        None => {
            eprint!("{summary}");
            emit(None, &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use myerson::bench::{self, BenchConfig, Budget, Cell, Estimation};
use myerson::bounds::{samples_required, Algorithm, BoundParams, Formula};
use myerson::exact::{myerson_exact, ExactMethod};
use myerson::game::{load_game, store_table};
use myerson::sampling::{approx_connected, approx_hybrid, approx_permutations, SamplerConfig};
use myerson::{Allocation, Game, GameKind, GameSpec, Graph, GraphModel};

/// Exact and Monte Carlo Myerson values on graph-restricted games.
#[derive(Debug, Parser)]
#[command(name = "myerson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random graph and write it as an edge list.
    GenGraph(GenGraphArgs),
    /// Generate a random game from a spec string.
    GenGame(GenGameArgs),
    /// Compute the exact Myerson value.
    Exact(ExactArgs),
    /// Estimate the Myerson value by sampling.
    Approx(ApproxArgs),
    /// Number of samples needed for an (ε, δ) guarantee.
    Bound(BoundArgs),
    /// Run an error-versus-budget experiment grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelKind {
    Cycle,
    #[value(alias = "er")]
    ErdosRenyi,
    #[value(alias = "ba")]
    BarabasiAlbert,
    Star,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long)]
    n: usize,
    /// Edge probability (erdos-renyi).
    #[arg(long)]
    edge_prob: Option<f64>,
    /// Size of the initial path (barabasi-albert, default 2).
    #[arg(long)]
    m0: Option<usize>,
    /// Edges added per new node (barabasi-albert, default 2).
    #[arg(long)]
    m: Option<usize>,
}

impl ModelArgs {
    fn build(&self) -> Result<GraphModel> {
        let n = self.n;
        let model = match self.model {
            ModelKind::Cycle | ModelKind::Star => {
                if self.edge_prob.is_some() || self.m0.is_some() || self.m.is_some() {
                    bail!("--edge-prob, --m0 and --m do not apply to this model");
                }
                match self.model {
                    ModelKind::Cycle => GraphModel::Cycle { n },
                    _ => GraphModel::Star { n },
                }
            }
            ModelKind::ErdosRenyi => {
                if self.m0.is_some() || self.m.is_some() {
                    bail!("--m0 and --m apply only to barabasi-albert");
                }
                let edge_prob = self.edge_prob.context("erdos-renyi needs --edge-prob")?;
                GraphModel::ErdosRenyi { n, edge_prob }
            }
            ModelKind::BarabasiAlbert => {
                if self.edge_prob.is_some() {
                    bail!("--edge-prob applies only to erdos-renyi");
                }
                GraphModel::BarabasiAlbert {
                    n,
                    m0: self.m0.unwrap_or(2),
                    m: self.m.unwrap_or(2),
                }
            }
        };
        model.validate()?;
        Ok(model)
    }
}

#[derive(Debug, Args)]
struct GenGraphArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GameFormat {
    /// Every coalition value, one per line.
    Table,
    /// The canonical spec string.
    Spec,
}

#[derive(Debug, Args)]
struct GenGameArgs {
    /// e.g. "type=superadditive n=15 seed=7 maxGain=3"
    #[arg(long)]
    spec: String,
    #[arg(long, value_enum, default_value = "table")]
    format: GameFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Subsets,
    Connected,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Game table or spec string file.
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_enum, default_value = "connected")]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgArg {
    Permutations,
    Hybrid,
    Connected,
}

impl From<AlgArg> for Algorithm {
    fn from(alg: AlgArg) -> Self {
        match alg {
            AlgArg::Permutations => Algorithm::Permutations,
            AlgArg::Hybrid => Algorithm::Hybrid,
            AlgArg::Connected => Algorithm::Connected,
        }
    }
}

#[derive(Debug, Args)]
struct ApproxArgs {
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    game: PathBuf,
    #[arg(long)]
    samples: u64,
    /// Exactly computed levels at each end (hybrid only).
    #[arg(long)]
    exact_levels: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaArg {
    CubeRoot,
    Standard,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, value_enum)]
    alg: AlgArg,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    range: f64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    exact_levels: Option<usize>,
    #[arg(long, value_enum, default_value = "cube-root")]
    formula: FormulaArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridArg {
    /// Preferential attachment, n = 15, three games.
    Main,
    /// Cycle and Erdős–Rényi (p = 0.4) panels.
    Extended,
    /// Built from the custom flags below.
    Custom,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    grid: GridArg,
    /// Seed range `start..end`.
    #[arg(long, default_value = "0..30", value_parser = parse_seed_range)]
    seeds: Range<u64>,
    /// Estimators, e.g. `permutations,hybrid:1,connected`.
    #[arg(long, value_delimiter = ',')]
    algs: Option<Vec<Estimation>>,
    /// Sample budgets.
    #[arg(long, value_delimiter = ',')]
    samples: Option<Vec<u64>>,
    /// Wall-time budgets in seconds.
    #[arg(long, value_delimiter = ',', value_parser = parse_seconds)]
    times: Option<Vec<Duration>>,
    /// Graph model (custom grid).
    #[arg(long, value_enum)]
    model: Option<ModelKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    edge_prob: Option<f64>,
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Game types (custom grid).
    #[arg(long, value_delimiter = ',')]
    games: Option<Vec<GameKind>>,
    #[arg(long)]
    max_gain: Option<f64>,
    #[arg(long)]
    max_singleton: Option<f64>,
    #[arg(long)]
    exponent: Option<f64>,
    /// CSV output file (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_seed_range(s: &str) -> std::result::Result<Range<u64>, String> {
    let (start, end) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `start..end`, got `{s}`"))?;
    let start: u64 = start.parse().map_err(|_| format!("bad seed `{start}`"))?;
    let end: u64 = end.parse().map_err(|_| format!("bad seed `{end}`"))?;
    if start >= end {
        return Err(format!("empty seed range `{s}`"));
    }
    Ok(start..end)
}

fn parse_seconds(s: &str) -> std::result::Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("bad duration `{s}`"))?;
    if secs.is_nan() || secs <= 0.0 {
        return Err(format!("time budget must be positive, got `{s}`"));
    }
    Duration::try_from_secs_f64(secs).map_err(|e| e.to_string())
}

fn seed_or_entropy(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let seed = rand::random();
        eprintln!("seed: {seed}");
        seed
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_inputs(graph: &Path, game: &Path) -> Result<(Graph, Game)> {
    let g = Graph::parse(&read(graph)?).with_context(|| graph.display().to_string())?;
    let v = load_game(&read(game)?).with_context(|| game.display().to_string())?;
    Ok((g, v))
}

fn gen_graph(args: GenGraphArgs) -> Result<()> {
    let model = args.model.build()?;
    let seed = match model {
        GraphModel::Cycle { .. } | GraphModel::Star { .. } => args.seed.unwrap_or(0),
        _ => seed_or_entropy(args.seed),
    };
    let graph = model.generate(seed)?;
    emit(args.output.as_deref(), &graph.to_text())
}

fn gen_game(args: GenGameArgs) -> Result<()> {
    let spec: GameSpec = args.spec.parse()?;
    let text = match args.format {
        GameFormat::Table => store_table(&spec.generate()?)?,
        GameFormat::Spec => {
            spec.validate()?;
            format!("{spec}\n")
        }
    };
    emit(args.output.as_deref(), &text)
}

fn exact(args: ExactArgs) -> Result<()> {
    let (graph, game) = load_inputs(&args.graph, &args.game)?;
    let method = match args.method {
        MethodArg::Subsets => ExactMethod::Subsets,
        MethodArg::Connected => ExactMethod::Connected,
    };
    print!("{}", myerson_exact(&graph, &game, method)?.to_text());
    Ok(())
}

fn approx(args: ApproxArgs) -> Result<()> {
    if args.exact_levels.is_some() && !matches!(args.alg, AlgArg::Hybrid) {
        bail!("--exact-levels applies only to --alg hybrid");
    }
    let (graph, game) = load_inputs(&args.graph, &args.game)?;
    let seed = seed_or_entropy(args.seed);
    let cfg = SamplerConfig::new(args.samples, seed).with_exact_levels(args.exact_levels.unwrap_or(1));
    let allocation: Allocation = match args.alg {
        AlgArg::Permutations => approx_permutations(&graph, &game, &cfg)?,
        AlgArg::Hybrid => approx_hybrid(&graph, &game, &cfg)?,
        AlgArg::Connected => approx_connected(&graph, &game, &cfg)?,
    };
    print!("{}", allocation.to_text());
    Ok(())
}

fn bound(args: BoundArgs) -> Result<()> {
    if args.exact_levels.is_some() && !matches!(args.alg, AlgArg::Hybrid) {
        bail!("--exact-levels applies only to --alg hybrid");
    }
    let params = BoundParams {
        epsilon: args.epsilon,
        delta: args.delta,
        range: args.range,
        n: args.n,
        exact_levels: args.exact_levels.unwrap_or(0),
        formula: match args.formula {
            FormulaArg::CubeRoot => Formula::CubeRoot,
            FormulaArg::Standard => Formula::Standard,
        },
    };
    println!("{}", samples_required(&params, args.alg.into())?.samples);
    Ok(())
}

fn bench_config(args: &BenchArgs) -> Result<BenchConfig> {
    let custom_only = args.model.is_some()
        || args.n.is_some()
        || args.edge_prob.is_some()
        || args.m0.is_some()
        || args.m.is_some()
        || args.games.is_some()
        || args.max_gain.is_some()
        || args.max_singleton.is_some()
        || args.exponent.is_some();
    let mut config = match args.grid {
        GridArg::Main | GridArg::Extended if custom_only => {
            bail!("graph and game flags require --grid custom")
        }
        GridArg::Main => BenchConfig::main_grid(args.seeds.clone()),
        GridArg::Extended => BenchConfig::extended_grid(args.seeds.clone()),
        GridArg::Custom => {
            let model = ModelArgs {
                model: args.model.context("--grid custom needs --model")?,
                n: args.n.context("--grid custom needs --n")?,
                edge_prob: args.edge_prob,
                m0: args.m0,
                m: args.m,
            }
            .build()?;
            let games = args.games.clone().context("--grid custom needs --games")?;
            let cells = games
                .into_iter()
                .map(|kind| {
                    let mut game = GameSpec::new(kind, model.node_count(), 0);
                    game.max_gain = args.max_gain.unwrap_or(game.max_gain);
                    game.max_singleton = args.max_singleton.unwrap_or(game.max_singleton);
                    game.exponent = args.exponent.unwrap_or(game.exponent);
                    Cell {
                        graph: model.clone(),
                        game,
                    }
                })
                .collect();
            BenchConfig {
                cells,
                estimations: bench::default_estimations(),
                seeds: args.seeds.clone(),
                budgets: [bench::default_sample_budgets(), bench::default_time_budgets()].concat(),
            }
        }
    };
    if let Some(algs) = &args.algs {
        config.estimations = algs.clone();
    }
    if args.samples.is_some() || args.times.is_some() {
        let samples = args.samples.iter().flatten().map(|&m| Budget::Samples(m));
        let times = args.times.iter().flatten().map(|&d| Budget::WallTime(d));
        config.budgets = samples.chain(times).collect();
    }
    config.validate()?;
    Ok(config)
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let config = bench_config(&args)?;
    let records = bench::run_suite(&config)?;
    emit(args.output.as_deref(), &bench::to_csv(&records)?)?;
    if let Some(path) = &args.output {
        eprintln!("wrote {} rows to {}", records.len(), path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenGraph(args) => gen_graph(args),
        Command::GenGame(args) => gen_game(args),
        Command::Exact(args) => exact(args),
        Command::Approx(args) => approx(args),
        Command::Bound(args) => bound(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help and --version
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let rendered = err.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let message = format!("{err:#}").replace('\n', " ");
            eprintln!("myerson: {message}");
            ExitCode::FAILURE
        }
    }
}

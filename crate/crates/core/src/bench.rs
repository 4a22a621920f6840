//! Error-versus-budget experiments.
//!
//! Each trial runs one estimator on one (graph, game) instance under a sample
//! or wall-clock budget and records the L1 distance to the exact Myerson
//! value. Results are emitted as CSV with the header
//! `alg,graph_model,game_type,n,seed,budget_kind,budget,samples,elapsed_ns,error_l1`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bounds::Algorithm;
use crate::exact::{myerson_exact_connected, myerson_exact_subsets};
use crate::sampling::{ConnectedSampler, Estimator, HybridSampler, PermutationSampler, SamplerConfig};
use crate::{Allocation, Error, Game, GameKind, GameSpec, Graph, GraphModel, Result, RngStream};

/// Wall-clock budgets are checked after every batch of this many samples.
pub const BATCH: u64 = 256;

/// Largest `n` at which the exact reference is cross-checked by subset
/// enumeration.
pub const CROSS_CHECK_LIMIT: usize = 20;

/// `Σ_v |est_v - exact_v|`.
pub fn l1_error(estimate: &[f64], exact: &[f64]) -> Result<f64> {
    if estimate.len() != exact.len() {
        return Err(Error::SizeMismatch {
            expected: exact.len(),
            found: estimate.len(),
        });
    }
    Ok(estimate.iter().zip(exact).map(|(a, b)| (a - b).abs()).sum())
}

/// An estimator together with its configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Estimation {
    Permutations,
    Hybrid { exact_levels: usize },
    Connected,
}

impl Estimation {
    pub fn algorithm(self) -> Algorithm {
        match self {
            Estimation::Permutations => Algorithm::Permutations,
            Estimation::Hybrid { .. } => Algorithm::Hybrid,
            Estimation::Connected => Algorithm::Connected,
        }
    }

    pub fn label(self) -> String {
        match self {
            Estimation::Hybrid { exact_levels } => format!("hybrid(ex={exact_levels})"),
            other => other.algorithm().name().to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Budget {
    Samples(u64),
    WallTime(Duration),
}

impl Budget {
    fn kind(self) -> BudgetKind {
        match self {
            Budget::Samples(_) => BudgetKind::Samples,
            Budget::WallTime(_) => BudgetKind::WallTime,
        }
    }

    /// Samples, or seconds for wall-time budgets.
    fn amount(self) -> f64 {
        match self {
            Budget::Samples(m) => m as f64,
            Budget::WallTime(d) => d.as_secs_f64(),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Budget::Samples(0) => Err(Error::invalid("sample budget must be positive")),
            Budget::WallTime(d) if d.is_zero() => Err(Error::invalid("time budget must be positive")),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Samples,
    WallTime,
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetKind::Samples => "samples",
            BudgetKind::WallTime => "wall_time",
        })
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub alg: String,
    pub graph_model: String,
    pub game_type: String,
    pub n: usize,
    pub seed: u64,
    pub budget_kind: BudgetKind,
    pub budget: f64,
    pub samples: u64,
    pub elapsed_ns: u64,
    pub error_l1: f64,
}

impl TrialRecord {
    /// Equality ignoring `elapsed_ns` and, for wall-time rows, the sample
    /// count and error (which depend on machine speed).
    pub fn same_outcome(&self, other: &TrialRecord) -> bool {
        let timing_free = |r: &TrialRecord| {
            (
                r.alg.clone(),
                r.graph_model.clone(),
                r.game_type.clone(),
                r.n,
                r.seed,
                r.budget_kind,
                r.budget.to_bits(),
            )
        };
        timing_free(self) == timing_free(other)
            && (self.budget_kind == BudgetKind::WallTime
                || (self.samples == other.samples && self.error_l1.to_bits() == other.error_l1.to_bits()))
    }
}

/// A (graph, game) instance with its exact reference value.
pub struct Instance<'a> {
    pub graph_label: String,
    pub game_label: String,
    pub graph: &'a Graph,
    pub game: &'a Game,
    pub exact: &'a Allocation,
}

/// Exact Myerson value by connected enumeration, cross-checked against the
/// subset engine for `n <= 20`.
pub fn exact_reference(graph: &Graph, game: &Game) -> Result<Allocation> {
    let exact = myerson_exact_connected(graph, game)?;
    if graph.node_count() <= CROSS_CHECK_LIMIT {
        let check = myerson_exact_subsets(graph, game)?;
        for (node, (a, b)) in exact.values.iter().zip(&check.values).enumerate() {
            if (a - b).abs() > 1e-9 * (1.0 + a.abs().max(b.abs())) {
                return Err(Error::OracleMismatch {
                    node,
                    left: *a,
                    right: *b,
                });
            }
        }
    }
    Ok(exact)
}

/// Runs one estimator under `budget`. Sample budgets are met exactly (or with
/// zero samples for a full-exact hybrid); wall-time budgets run at least one
/// batch and stop at the first batch boundary past the deadline.
pub fn run_trial(
    instance: &Instance<'_>,
    estimation: Estimation,
    budget: Budget,
    seed: u64,
) -> Result<TrialRecord> {
    budget.validate()?;
    let cfg = SamplerConfig::new(0, RngStream::derive_seed(seed, &estimation.label()));
    let start = Instant::now();
    let (estimate, samples) = match estimation {
        Estimation::Permutations => {
            drive(PermutationSampler::new(instance.graph, instance.game, &cfg)?, budget, start)
        }
        Estimation::Hybrid { exact_levels } => {
            let cfg = cfg.with_exact_levels(exact_levels);
            let sampler = HybridSampler::new(instance.graph, instance.game, &cfg)?;
            if sampler.plan().full_exact() {
                (sampler.estimate(), 0)
            } else {
                drive(sampler, budget, start)
            }
        }
        Estimation::Connected => {
            drive(ConnectedSampler::new(instance.graph, instance.game, &cfg)?, budget, start)
        }
    };
    let elapsed = start.elapsed();
    Ok(TrialRecord {
        alg: estimation.label(),
        graph_model: instance.graph_label.clone(),
        game_type: instance.game_label.clone(),
        n: instance.graph.node_count(),
        seed,
        budget_kind: budget.kind(),
        budget: budget.amount(),
        samples,
        elapsed_ns: elapsed.as_nanos().min(u64::MAX as u128) as u64,
        error_l1: l1_error(&estimate, &instance.exact.values)?,
    })
}

fn drive<E: Estimator>(mut estimator: E, budget: Budget, start: Instant) -> (Vec<f64>, u64) {
    match budget {
        Budget::Samples(m) => {
            let mut left = m;
            while left > 0 {
                let batch = left.min(BATCH);
                estimator.advance(batch);
                left -= batch;
            }
        }
        Budget::WallTime(limit) => loop {
            estimator.advance(BATCH);
            if start.elapsed() >= limit {
                break;
            }
        },
    }
    (estimator.estimate(), estimator.samples())
}

/// One (graph model, game) pairing of an experiment grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub graph: GraphModel,
    /// The seed field is replaced per trial.
    pub game: GameSpec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub cells: Vec<Cell>,
    pub estimations: Vec<Estimation>,
    pub seeds: std::ops::Range<u64>,
    pub budgets: Vec<Budget>,
}

/// Sample budgets `4^4 ..= 4^8`.
pub fn default_sample_budgets() -> Vec<Budget> {
    (4..=8).map(|p| Budget::Samples(4u64.pow(p))).collect()
}

/// Wall-time budgets of 0.01 s, 0.1 s and 1 s.
pub fn default_time_budgets() -> Vec<Budget> {
    [10, 100, 1000]
        .into_iter()
        .map(|ms| Budget::WallTime(Duration::from_millis(ms)))
        .collect()
}

pub fn default_estimations() -> Vec<Estimation> {
    vec![
        Estimation::Permutations,
        Estimation::Hybrid { exact_levels: 1 },
        Estimation::Connected,
    ]
}

impl BenchConfig {
    /// Preferential attachment graphs (n = 15, m0 = 2, m = 2) with uniform,
    /// superadditive (maxGain = 3) and submodular games.
    pub fn main_grid(seeds: std::ops::Range<u64>) -> Self {
        let n = 15;
        let graph = GraphModel::BarabasiAlbert { n, m0: 2, m: 2 };
        let cells = [GameKind::Uniform, GameKind::Superadditive, GameKind::Submodular]
            .into_iter()
            .map(|kind| Cell {
                graph: graph.clone(),
                game: GameSpec::new(kind, n, 0),
            })
            .collect();
        BenchConfig {
            cells,
            estimations: default_estimations(),
            seeds,
            budgets: [default_sample_budgets(), default_time_budgets()].concat(),
        }
    }

    /// Cycle graphs with size, uniform and superadditive games; Erdős–Rényi
    /// graphs (p = 0.4) with uniform, superadditive and submodular games.
    pub fn extended_grid(seeds: std::ops::Range<u64>) -> Self {
        let n = 15;
        let cycle = GraphModel::Cycle { n };
        let er = GraphModel::ErdosRenyi { n, edge_prob: 0.4 };
        let mut cells = Vec::new();
        for kind in [GameKind::Size, GameKind::Uniform, GameKind::Superadditive] {
            cells.push(Cell {
                graph: cycle.clone(),
                game: GameSpec::new(kind, n, 0),
            });
        }
        for kind in [GameKind::Uniform, GameKind::Superadditive, GameKind::Submodular] {
            cells.push(Cell {
                graph: er.clone(),
                game: GameSpec::new(kind, n, 0),
            });
        }
        BenchConfig {
            cells,
            estimations: default_estimations(),
            seeds,
            budgets: [default_sample_budgets(), default_time_budgets()].concat(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::invalid("empty seed range"));
        }
        for cell in &self.cells {
            cell.graph.validate()?;
            cell.game.validate()?;
            if cell.graph.node_count() != cell.game.n {
                return Err(Error::SizeMismatch {
                    expected: cell.graph.node_count(),
                    found: cell.game.n,
                });
            }
            if cell.game.n > crate::game::MAX_TABLE_PLAYERS {
                return Err(Error::TooLarge {
                    what: "the exact reference",
                    n: cell.game.n,
                    max: crate::game::MAX_TABLE_PLAYERS,
                });
            }
        }
        for budget in &self.budgets {
            budget.validate()?;
        }
        Ok(())
    }
}

/// Runs the grid. Rows are ordered by cell, seed, estimator, then budget.
pub fn run_suite(config: &BenchConfig) -> Result<Vec<TrialRecord>> {
    run_suite_with(config, |_| {})
}

/// [`run_suite`] with a callback invoked after every trial.
pub fn run_suite_with(
    config: &BenchConfig,
    mut progress: impl FnMut(&TrialRecord),
) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for cell in &config.cells {
        for seed in config.seeds.clone() {
            let graph = cell.graph.generate(seed)?;
            let game = cell.game.with_seed(seed).generate()?;
            let exact = exact_reference(&graph, &game)?;
            let instance = Instance {
                graph_label: cell.graph.label(),
                game_label: cell.game.label(),
                graph: &graph,
                game: &game,
                exact: &exact,
            };
            for &estimation in &config.estimations {
                for &budget in &config.budgets {
                    let record = run_trial(&instance, estimation, budget, seed)?;
                    progress(&record);
                    records.push(record);
                }
            }
        }
    }
    Ok(records)
}

pub fn to_csv(records: &[TrialRecord]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        writer.write_record(CSV_HEADER)?;
    }
    for record in records {
        writer.serialize(record)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::invalid(format!("csv flush failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn parse_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::parse(1, format!("unexpected CSV header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub const CSV_HEADER: [&str; 10] = [
    "alg",
    "graph_model",
    "game_type",
    "n",
    "seed",
    "budget_kind",
    "budget",
    "samples",
    "elapsed_ns",
    "error_l1",
];

/// Runs the grid and renders CSV.
pub fn bench_suite(config: &BenchConfig) -> Result<String> {
    to_csv(&run_suite(config)?)
}

impl FromStr for Estimation {
    type Err = Error;

    /// `permutations`, `connected`, `hybrid` (one exact level) or `hybrid:<Ex>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some(("hybrid", ex)) => Ok(Estimation::Hybrid {
                exact_levels: ex
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad exact level count `{ex}`")))?,
            }),
            None => match s.parse::<Algorithm>()? {
                Algorithm::Permutations => Ok(Estimation::Permutations),
                Algorithm::Hybrid => Ok(Estimation::Hybrid { exact_levels: 1 }),
                Algorithm::Connected => Ok(Estimation::Connected),
            },
            _ => Err(Error::invalid(format!("unknown estimator `{s}`"))),
        }
    }
}

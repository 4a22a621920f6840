//! Exact Shapley and Myerson values.
//!
//! Two independent routes to the Myerson value are provided: the Shapley
//! subset formula applied to the restricted game, and a single pass over the
//! connected coalitions weighted by their boundary sizes. They share no code
//! beyond the combinatorial weight table.

mod enumerate;
pub mod weights;

pub use enumerate::{enumerate_connected, ConnectedCoalitions};

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::game::{check_table_size, restrict};
use crate::{format_significant, CharacteristicFunction, Coalition, CompensatedSum, Error, Graph, Result};

/// How an [`Allocation`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ShapleySubsets,
    MyersonSubsets,
    MyersonConnected,
    Permutations,
    Hybrid,
    Connected,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ShapleySubsets => "shapley-subsets",
            Method::MyersonSubsets => "subsets",
            Method::MyersonConnected => "connected-exact",
            Method::Permutations => "permutations",
            Method::Hybrid => "hybrid",
            Method::Connected => "connected",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node payoff vector with run diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Allocation {
    pub values: Vec<f64>,
    pub method: Method,
    /// Monte Carlo samples drawn; zero for exact engines.
    pub samples: u64,
    pub elapsed: Duration,
}

impl Allocation {
    pub fn new(values: Vec<f64>, method: Method) -> Self {
        Allocation {
            values,
            method,
            samples: 0,
            elapsed: Duration::ZERO,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `<node> <value>` lines with 12 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (node, value) in self.values.iter().enumerate() {
            writeln!(out, "{node} {}", format_significant(*value, 12)).expect("write to string");
        }
        out
    }

    /// Parses `<node> <value>` lines; nodes must be `0, 1, ..` in order.
    pub fn parse(text: &str, method: Method) -> Result<Allocation> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (node, value) = match line.split_whitespace().collect::<Vec<_>>()[..] {
                [node, value] => (node, value),
                _ => return Err(Error::parse(i + 1, format!("expected `<node> <value>`, got `{line}`"))),
            };
            let node: usize = node
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad node `{node}`")))?;
            if node != values.len() {
                return Err(Error::parse(i + 1, format!("expected node {}, got {node}", values.len())));
            }
            let value: f64 = value
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad value `{value}`")))?;
            values.push(value);
        }
        Ok(Allocation::new(values, method))
    }
}

/// Which exact engine to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactMethod {
    Subsets,
    Connected,
}

impl FromStr for ExactMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsets" => Ok(ExactMethod::Subsets),
            "connected" => Ok(ExactMethod::Connected),
            other => Err(Error::invalid(format!("unknown exact method `{other}`"))),
        }
    }
}

pub fn myerson_exact<F: CharacteristicFunction>(graph: &Graph, game: &F, method: ExactMethod) -> Result<Allocation> {
    match method {
        ExactMethod::Subsets => myerson_exact_subsets(graph, game),
        ExactMethod::Connected => myerson_exact_connected(graph, game),
    }
}

/// Shapley value by the subset formula, all players in one pass over `2^n`
/// coalitions.
pub fn shapley_subsets<F: CharacteristicFunction + ?Sized>(game: &F) -> Result<Allocation> {
    let start = Instant::now();
    let n = game.players();
    check_table_size(n).map_err(|_| Error::TooLarge {
        what: "subset enumeration",
        n,
        max: crate::game::MAX_TABLE_PLAYERS,
    })?;
    let table: Vec<f64> = (0..1u64 << n)
        .map(|mask| game.value(Coalition::from_bits(mask)))
        .collect();
    let weight: Vec<f64> = (0..n).map(|k| weights::shapley_weight(n, k)).collect();
    let mut acc = vec![CompensatedSum::new(); n];
    // the grand coalition has no outsiders
    for mask in 0..(1u64 << n) - 1 {
        let base = table[mask as usize];
        let w = weight[mask.count_ones() as usize];
        let mut outside = !mask & Coalition::full(n).bits();
        while outside != 0 {
            let i = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            acc[i].add(w * (table[(mask | 1 << i) as usize] - base));
        }
    }
    let mut alloc = Allocation::new(acc.iter().map(CompensatedSum::value).collect(), Method::ShapleySubsets);
    alloc.elapsed = start.elapsed();
    Ok(alloc)
}

/// Myerson value as the Shapley value of the restricted game.
pub fn myerson_exact_subsets<F: CharacteristicFunction>(graph: &Graph, game: &F) -> Result<Allocation> {
    let restricted = restrict(graph, game)?;
    let mut alloc = shapley_subsets(&restricted)?;
    alloc.method = Method::MyersonSubsets;
    Ok(alloc)
}

/// Myerson value from connected coalitions only: each connected `C` with
/// boundary `N(C)` credits its members `(|C|-1)!|N(C)|!/(|C|+|N(C)|)! v(C)` and
/// charges its neighbours `|C|!(|N(C)|-1)!/(|C|+|N(C)|)! v(C)`.
pub fn myerson_exact_connected<F: CharacteristicFunction>(graph: &Graph, game: &F) -> Result<Allocation> {
    let start = Instant::now();
    graph.check_players(game.players())?;
    let n = graph.node_count();
    let mut acc = vec![CompensatedSum::new(); n];
    for (c, boundary) in enumerate_connected(graph) {
        let value = game.value(c);
        let (size, rim) = (c.len(), boundary.len());
        let credit = weights::member_weight(size, rim) * value;
        for v in c.iter() {
            acc[v].add(credit);
        }
        if rim > 0 {
            let charge = weights::neighbour_weight(size, rim) * value;
            for v in boundary.iter() {
                acc[v].add(-charge);
            }
        }
    }
    let mut alloc = Allocation::new(acc.iter().map(CompensatedSum::value).collect(), Method::MyersonConnected);
    alloc.elapsed = start.elapsed();
    Ok(alloc)
}

use rand::Rng;

use super::Graph;
use crate::{Error, Result, RngStream, MAX_PLAYERS};

/// Random and deterministic graph families.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphModel {
    /// Simple cycle `0 - 1 - .. - n-1 - 0`.
    Cycle { n: usize },
    /// Each unordered pair is an edge independently with probability `edge_prob`.
    ErdosRenyi { n: usize, edge_prob: f64 },
    /// Preferential attachment: `m0` seed nodes joined in a path, then every
    /// new node attaches to `m` distinct existing nodes chosen with probability
    /// proportional to degree, without replacement.
    BarabasiAlbert { n: usize, m0: usize, m: usize },
    /// Node 0 adjacent to every other node.
    Star { n: usize },
}

impl GraphModel {
    pub fn node_count(&self) -> usize {
        match *self {
            GraphModel::Cycle { n }
            | GraphModel::ErdosRenyi { n, .. }
            | GraphModel::BarabasiAlbert { n, .. }
            | GraphModel::Star { n } => n,
        }
    }

    /// Short label including parameters, e.g. `ba(m0=2 m=2)`.
    pub fn label(&self) -> String {
        match *self {
            GraphModel::Cycle { .. } => "cycle".to_string(),
            GraphModel::ErdosRenyi { edge_prob, .. } => format!("er(p={edge_prob})"),
            GraphModel::BarabasiAlbert { m0, m, .. } => format!("ba(m0={m0} m={m})"),
            GraphModel::Star { .. } => "star".to_string(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::invalid(format!(
                "graph needs 1..={MAX_PLAYERS} nodes, got {n}"
            )));
        }
        match *self {
            GraphModel::Cycle { n } if n < 3 => Err(Error::invalid(format!(
                "cycle needs at least 3 nodes, got {n}"
            ))),
            GraphModel::ErdosRenyi { edge_prob, .. } if !(0.0..=1.0).contains(&edge_prob) => Err(
                Error::invalid(format!("edge probability {edge_prob} outside [0, 1]")),
            ),
            GraphModel::BarabasiAlbert { n, m0, m } if !(1 <= m && m <= m0 && m0 < n) => {
                Err(Error::invalid(format!(
                    "preferential attachment needs 1 <= m <= m0 < n, got m={m} m0={m0} n={n}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Builds the graph. Output depends only on `(self, seed)`.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        self.validate()?;
        let mut rng = RngStream::new(seed);
        match *self {
            GraphModel::Cycle { n } => Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))),
            GraphModel::Star { n } => Graph::from_edges(n, (1..n).map(|v| (0, v))),
            GraphModel::ErdosRenyi { n, edge_prob } => {
                let mut g = Graph::new(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(edge_prob) {
                            g.add_edge(u, v)?;
                        }
                    }
                }
                Ok(g)
            }
            GraphModel::BarabasiAlbert { n, m0, m } => {
                let mut g = Graph::new(n)?;
                for v in 1..m0 {
                    g.add_edge(v - 1, v)?;
                }
                for newcomer in m0..n {
                    let mut weight: Vec<u64> = (0..newcomer).map(|v| g.degree(v) as u64).collect();
                    let mut available = vec![true; newcomer];
                    for _ in 0..m {
                        let target = pick_preferential(&mut rng, &weight, &available);
                        available[target] = false;
                        weight[target] = 0;
                        g.add_edge(newcomer, target)?;
                    }
                }
                Ok(g)
            }
        }
    }
}

/// Draws an available index with probability proportional to `weight`,
/// falling back to a uniform choice when every available weight is zero.
fn pick_preferential(rng: &mut RngStream, weight: &[u64], available: &[bool]) -> usize {
    let total: u64 = weight.iter().sum();
    if total == 0 {
        let open: Vec<usize> = (0..available.len()).filter(|&i| available[i]).collect();
        return open[rng.gen_range(0..open.len())];
    }
    let mut ticket = rng.gen_range(0..total);
    for (i, &w) in weight.iter().enumerate() {
        if ticket < w {
            return i;
        }
        ticket -= w;
    }
    unreachable!("ticket below total weight")
}

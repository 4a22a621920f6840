//! Undirected simple graphs over at most 64 nodes, stored as adjacency bit rows.

mod generate;
mod io;

pub use generate::GraphModel;

use crate::{Coalition, Error, Result, MAX_PLAYERS};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::invalid(format!(
                "graph needs 1..={MAX_PLAYERS} nodes, got {n}"
            )));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path `0 - 1 - .. - n-1`.
    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self> {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// All nodes as a coalition.
    #[inline]
    pub fn nodes(&self) -> Coalition {
        Coalition::full(self.node_count())
    }

    /// Adds the undirected edge `{u, v}`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.node_count();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {n} nodes"
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at node {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && v < 64 && self.adj[u] & (1 << v) != 0
    }

    /// Neighbours of a single node.
    #[inline]
    pub fn adjacent(&self, v: usize) -> Coalition {
        Coalition::from_bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, &row)| {
            Coalition::from_bits(row)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Nodes of `c` reachable from `start` inside the induced subgraph `G(c)`.
    /// `start` must be a member of `c`.
    #[inline]
    pub fn component_containing(&self, c: Coalition, start: usize) -> Coalition {
        let within = c.bits();
        let mut reached = 1u64 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            next &= within & !reached;
            reached |= next;
            frontier = next;
        }
        Coalition::from_bits(reached)
    }

    /// True iff `G(c)` is connected. The empty coalition is not connected.
    pub fn is_connected(&self, c: Coalition) -> bool {
        match c.first() {
            None => false,
            Some(start) => self.component_containing(c, start) == c,
        }
    }

    /// Connected components of `G(c)`, ordered by smallest member.
    pub fn components(&self, c: Coalition) -> Vec<Coalition> {
        self.components_iter(c).collect()
    }

    pub(crate) fn components_iter(&self, c: Coalition) -> impl Iterator<Item = Coalition> + '_ {
        let mut rest = c;
        std::iter::from_fn(move || {
            let start = rest.first()?;
            let component = self.component_containing(rest, start);
            rest = rest - component;
            Some(component)
        })
    }

    /// `N(c)`: nodes outside `c` adjacent to some member of `c`.
    #[inline]
    pub fn neighbors(&self, c: Coalition) -> Coalition {
        let mut out = 0u64;
        for v in c.iter() {
            out |= self.adj[v];
        }
        Coalition::from_bits(out & !c.bits())
    }

    pub(crate) fn check_players(&self, n: usize) -> Result<()> {
        if self.node_count() == n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.node_count(),
                found: n,
            })
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(nodes: &[usize]) -> Coalition {
        nodes.iter().copied().collect()
    }

    fn star5() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn connectivity_on_path() {
        let g = Graph::path(3).unwrap();
        assert!(!g.is_connected(set(&[0, 2])));
        assert!(g.is_connected(set(&[0, 1, 2])));
        assert!(g.is_connected(set(&[1])));
        assert!(!g.is_connected(Coalition::EMPTY));
    }

    #[test]
    fn star_leaves_are_disconnected() {
        let g = star5();
        let leaves = set(&[1, 2, 3, 4]);
        assert!(!g.is_connected(leaves));
        assert_eq!(
            g.components(leaves),
            vec![set(&[1]), set(&[2]), set(&[3]), set(&[4])]
        );
        assert_eq!(g.neighbors(set(&[1])), set(&[0]));
    }

    #[test]
    fn components_on_path() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.components(set(&[0, 2])), vec![set(&[0]), set(&[2])]);
        assert_eq!(g.components(set(&[0, 1, 2])), vec![set(&[0, 1, 2])]);
        assert!(g.components(Coalition::EMPTY).is_empty());
    }

    #[test]
    fn neighbors_on_path() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.neighbors(set(&[1])), set(&[0, 2]));
        assert_eq!(g.neighbors(set(&[0, 1, 2])), Coalition::EMPTY);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3).unwrap();
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(Graph::new(0).is_err());
        assert!(Graph::new(65).is_err());
        assert!(Graph::new(64).is_ok());
    }

    #[test]
    fn edge_listing_is_canonical() {
        let g = Graph::from_edges(4, [(3, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.edge_count(), 3);
    }

    fn arb_graph_and_coalition() -> impl Strategy<Value = (Graph, Coalition)> {
        (1usize..=12).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                proptest::collection::vec(any::<bool>(), pairs),
                0u64..(1u64 << n),
            )
                .prop_map(move |(mask, c)| {
                    let mut g = Graph::new(n).unwrap();
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if mask[k] {
                                g.add_edge(u, v).unwrap();
                            }
                            k += 1;
                        }
                    }
                    (g, Coalition::from_bits(c))
                })
        })
    }

    proptest! {
        #[test]
        fn components_partition_the_coalition((g, c) in arb_graph_and_coalition()) {
            let comps = g.components(c);
            let mut union = Coalition::EMPTY;
            for (i, k) in comps.iter().enumerate() {
                prop_assert!(union.is_disjoint(*k));
                prop_assert!(g.is_connected(*k));
                // maximality: no edge leaves the component inside c
                prop_assert!(g.neighbors(*k).is_disjoint(c));
                if i > 0 {
                    prop_assert!(comps[i - 1].first() < k.first());
                }
                union = union | *k;
            }
            prop_assert_eq!(union, c);
            if !c.is_empty() {
                prop_assert_eq!(g.is_connected(c), comps.len() == 1);
            }
        }

        #[test]
        fn neighbors_avoid_coalition((g, c) in arb_graph_and_coalition()) {
            let nb = g.neighbors(c);
            prop_assert!(nb.is_disjoint(c));
            for u in nb.iter() {
                prop_assert!(c.iter().any(|v| g.has_edge(u, v)));
            }
        }

        #[test]
        fn adjacency_is_symmetric_without_loops((g, _c) in arb_graph_and_coalition()) {
            for u in 0..g.node_count() {
                prop_assert!(!g.has_edge(u, u));
                for v in g.adjacent(u).iter() {
                    prop_assert!(g.has_edge(v, u));
                }
            }
        }
    }
}

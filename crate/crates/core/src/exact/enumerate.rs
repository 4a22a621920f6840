use crate::{Coalition, Graph};

/// Iterator over every nonempty connected coalition of a graph, paired with
/// its neighbourhood `N(C)`.
///
/// Each coalition is grown from its smallest member: nodes below the root are
/// forbidden, and a node once passed over at some level stays excluded for
/// the rest of that subtree. This emits every connected set exactly once
/// without remembering earlier output. Memory is `O(n)` frames.
pub struct ConnectedCoalitions<'g> {
    graph: &'g Graph,
    next_root: usize,
    stack: Vec<Frame>,
}

#[derive(Clone, Copy)]
struct Frame {
    members: u64,
    candidates: u64,
    excluded: u64,
}

impl<'g> ConnectedCoalitions<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        ConnectedCoalitions {
            graph,
            next_root: 0,
            stack: Vec::with_capacity(graph.node_count()),
        }
    }

    fn emit(&self, members: u64) -> (Coalition, Coalition) {
        let c = Coalition::from_bits(members);
        (c, self.graph.neighbors(c))
    }
}

impl Iterator for ConnectedCoalitions<'_> {
    type Item = (Coalition, Coalition);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let Some(top) = self.stack.last_mut() else {
                let root = self.next_root;
                if root >= self.graph.node_count() {
                    return None;
                }
                self.next_root += 1;
                let below = (1u64 << root) - 1;
                let members = 1u64 << root;
                let frame = Frame {
                    members,
                    candidates: self.graph.adjacent(root).bits() & !below,
                    excluded: below,
                };
                self.stack.push(frame);
                return Some(self.emit(members));
            };
            if top.candidates == 0 {
                self.stack.pop();
                continue;
            }
            let pick = top.candidates & top.candidates.wrapping_neg();
            top.candidates &= !pick;
            let excluded = top.excluded;
            top.excluded |= pick;
            let node = pick.trailing_zeros() as usize;
            let members = top.members | pick;
            let fresh = self.graph.adjacent(node).bits() & !members & !excluded & !top.candidates;
            let child = Frame {
                members,
                candidates: top.candidates | fresh,
                excluded,
            };
            self.stack.push(child);
            return Some(self.emit(members));
        }
    }
}

/// Convenience wrapper over [`ConnectedCoalitions`].
pub fn enumerate_connected(graph: &Graph) -> ConnectedCoalitions<'_> {
    ConnectedCoalitions::new(graph)
}

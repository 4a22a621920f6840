//! Text format: a header line `n <count>` followed by one `<u> <v>` line per
//! undirected edge. Output lists edges with `u < v` in lexicographic order.

use std::fmt::Write as _;
use std::str::FromStr;

use super::Graph;
use crate::{Error, Result};

impl Graph {
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.node_count());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").expect("write to string");
        }
        out
    }

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n <count>` header"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad node count `{count}`")))?,
            _ => return Err(Error::parse(line_no, format!("expected `n <count>`, got `{header}`"))),
        };
        let mut g = Graph::new(n).map_err(|e| Error::parse(line_no, e.to_string()))?;

        for (line_no, line) in lines {
            let (u, v) = match line.split_whitespace().collect::<Vec<_>>()[..] {
                [u, v] => (
                    parse_index(u, n, line_no)?,
                    parse_index(v, n, line_no)?,
                ),
                _ => return Err(Error::parse(line_no, format!("expected `<u> <v>`, got `{line}`"))),
            };
            if u == v {
                return Err(Error::parse(line_no, format!("self-loop at node {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

fn parse_index(token: &str, n: usize, line: usize) -> Result<usize> {
    let index: usize = token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad node index `{token}`")))?;
    if index >= n {
        return Err(Error::parse(
            line,
            format!("node index {index} out of range for {n} nodes"),
        ));
    }
    Ok(index)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        Graph::parse(s)
    }
}

//! Concrete graphs: constructors, distance-regularity verification, edge
//! partitions and the brute-force counterparts of the array-level formulas.

mod counts;
mod distance;
mod families;
mod homogeneous;
mod local;
mod partition;
mod report;
mod tight_edge;

pub use counts::{verify_count_formulas, CountReport};
pub use distance::{bfs, verify_distance_regular, DistanceTable, VerifyOptions, MAX_VERTICES};
pub use families::{construct, Family};
pub use homogeneous::{check_all_edges, check_one_homogeneous, HomogeneityCertificate, Violation};
pub use local::{local_graph, srg_parameters};
pub use partition::{compute_f, edge_partition, EdgePartition, FCount};
pub use report::{verify_graph, FormulaCheck, GraphCheckOptions, GraphReport, HomogeneitySummary, LocalCheck, RankSummary};
pub use tight_edge::{gram_matrix, tight_edge_test, tightness_rank, RankResult, TightEdge};

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Simple undirected graph on `0..n` with sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// endpoints out of range.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::ParamOutOfRange(format!("edge {u} {v} with n = {n}")));
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MultiEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Common valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs(self, 0).iter().all(|&d| d != u32::MAX)
    }

    /// The same graph without the edge `uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.is_adjacent(u, v) {
            return Err(Error::NotAdjacent(u, v));
        }
        Graph::from_edges(self.n(), self.edges().filter(|&e| e != (u.min(v), u.max(v))))
    }

    /// Induced subgraph on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            adj[i] = self.adj[v].iter().map(|&w| index[w]).filter(|&j| j != usize::MAX).collect();
            adj[i].sort_unstable();
        }
        Graph { adj }
    }

    /// Edge-list text: a header `n m`, then one `u v` line per edge, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Parses edge-list text and checks that the result is connected.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let bad = |detail: &str| Error::GraphParse { line, detail: format!("{detail}: {l:?}") };
            let mut it = l.split_whitespace();
            let a = it.next().ok_or_else(|| bad("expected two integers"))?;
            let b = it.next().ok_or_else(|| bad("expected two integers"))?;
            if it.next().is_some() {
                return Err(bad("trailing tokens"));
            }
            let a = a.parse().map_err(|_| bad("not an integer"))?;
            let b = b.parse().map_err(|_| bad("not an integer"))?;
            Ok((a, b))
        };
        let (hl, header) = lines.next().ok_or(Error::GraphParse { line: 1, detail: "empty input".into() })?;
        let (n, m) = pair(hl, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = pair(line, l)?;
            if u >= n || v >= n {
                return Err(Error::GraphParse { line, detail: format!("vertex out of range 0..{n}") });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::GraphParse {
                line: hl,
                detail: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        let g = Graph::from_edges(n, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }
}

/// Reads an edge-list file.
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    Graph::parse_edge_list(&std::fs::read_to_string(path)?)
}

//! Finite simple connected graphs and their symmetric arcs.
//!
//! Vertices are dense indices `0..n`. Arcs are ordered lexicographically by
//! `(origin, terminus)` and every matrix in the crate uses that order.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
}

impl Arc {
    pub const fn new(origin: usize, terminus: usize) -> Self {
        Arc { origin, terminus }
    }

    /// The inverse arc `ā`.
    pub const fn reverse(self) -> Self {
        Arc {
            origin: self.terminus,
            terminus: self.origin,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.origin, self.terminus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Normalized `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges, out-of-range indices
    /// and disconnected vertex sets.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let line = i + 1;
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::LoopEdge { line, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { line, u, v });
            }
        }
        Self::from_checked(n, seen.into_iter().collect())
    }

    fn from_checked(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let g = Graph {
            n,
            edges,
            neighbors,
            labels: None,
        };
        let components = g.component_count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(g)
    }

    fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut components = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.neighbors[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        components
    }

    /// Attaches cosmetic vertex labels; indices remain authoritative.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_arcs(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.neighbors[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.neighbors[x].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> ArcSet {
        ArcSet::new(self)
    }

    /// Adjacency matrix `A` and degree matrix `D`.
    pub fn adjacency_and_degree(&self) -> (DMatrix<i64>, DMatrix<i64>) {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        let d = DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degree(i) as i64
            } else {
                0
            }
        });
        (a, d)
    }

    /// Canonical edge list, one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// `{"n": int, "edges": [[u,v],...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        Graph::new(json.n, json.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Parses whitespace-separated vertex indices, `width` per non-empty line.
/// `#` starts a comment. Returns `(line number, indices)` pairs.
pub(crate) fn parse_index_lines(text: &str, width: usize) -> Result<Vec<(usize, Vec<usize>)>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw.trim_end_matches('\r'));
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let mut values = Vec::with_capacity(tokens.len());
        for token in &tokens {
            let value = token.parse::<usize>().map_err(|_| Error::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            values.push(value);
        }
        if values.len() != width {
            return Err(Error::MalformedLine {
                line,
                expected: width,
                found: values.len(),
            });
        }
        rows.push((line, values));
    }
    Ok(rows)
}

/// Parses an edge list. The vertex count is one more than the largest index,
/// so an unused index below the maximum is an isolated vertex and the graph
/// is rejected as disconnected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let rows = parse_index_lines(text, 2)?;
    let mut seen = BTreeSet::new();
    let mut n = 0;
    for (line, pair) in &rows {
        let (u, v) = (pair[0], pair[1]);
        if u == v {
            return Err(Error::LoopEdge {
                line: *line,
                vertex: u,
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge { line: *line, u, v });
        }
        n = n.max(u + 1).max(v + 1);
    }
    Graph::from_checked(n, seen.into_iter().collect())
}

/// The complete graph `Kₙ`.
pub fn gen_complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::GeneratorSize {
            family: "complete",
            min: 2,
            n,
        });
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges)
}

/// The cycle `Cₙ` on vertices `0..n`.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::GeneratorSize {
            family: "cycle",
            min: 3,
            n,
        });
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The star `K_{1,leaves}` with center 0.
pub fn gen_star(leaves: usize) -> Result<Graph> {
    if leaves < 1 {
        return Err(Error::GeneratorSize {
            family: "star",
            min: 1,
            n: leaves,
        });
    }
    Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))
}

/// Index of `u₊` in a double cone.
pub const CONE_TOP: usize = 0;
/// Index of `u₋` in a double cone.
pub const CONE_BOTTOM: usize = 1;

/// Index of the cycle vertex `x_{i mod n}` in `Γₙ`.
pub fn cone_cycle_vertex(n: usize, i: usize) -> usize {
    2 + i % n
}

/// The double cone `Γₙ`: two non-adjacent apexes joined to every vertex of
/// `Cₙ`. Vertex order is `u₊, u₋, x₀, …, x_{n−1}`.
pub fn gen_double_cone(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::GeneratorSize {
            family: "double-cone",
            min: 3,
            n,
        });
    }
    let x = |i| cone_cycle_vertex(n, i);
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((CONE_TOP, x(i)));
        edges.push((CONE_BOTTOM, x(i)));
        edges.push((x(i), x(i + 1)));
    }
    let mut labels = vec!["u+".to_string(), "u-".to_string()];
    labels.extend((0..n).map(|i| format!("x{i}")));
    Graph::new(n + 2, edges)?.with_labels(labels)
}

/// All `2|E|` symmetric arcs in canonical order, with index lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    n_vertices: usize,
    arcs: Vec<Arc>,
    reverse: Vec<usize>,
    /// `𝒜(x)`: arcs terminating at `x`.
    incoming: Vec<Vec<usize>>,
}

impl ArcSet {
    pub fn new(g: &Graph) -> Self {
        let mut arcs: Vec<Arc> = g
            .edges()
            .iter()
            .flat_map(|&(u, v)| [Arc::new(u, v), Arc::new(v, u)])
            .collect();
        arcs.sort_unstable();
        let mut incoming = vec![Vec::new(); g.n_vertices()];
        for (i, a) in arcs.iter().enumerate() {
            incoming[a.terminus].push(i);
        }
        let mut set = ArcSet {
            n_vertices: g.n_vertices(),
            arcs,
            reverse: Vec::new(),
            incoming,
        };
        set.reverse = set
            .arcs
            .iter()
            .map(|a| {
                set.index_of(a.reverse())
                    .expect("arc set closed under reversal")
            })
            .collect();
        set
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> Arc {
        self.arcs[index]
    }

    pub fn index_of(&self, arc: Arc) -> Option<usize> {
        self.arcs.binary_search(&arc).ok()
    }

    /// Index of `ā` given the index of `a`.
    pub fn reverse_index(&self, index: usize) -> usize {
        self.reverse[index]
    }

    pub fn reversal(&self) -> &[usize] {
        &self.reverse
    }

    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }
}

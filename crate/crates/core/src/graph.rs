//! Simple undirected graphs, the two code constructions, hop distances and
//! forbidden-subgraph recognition.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::GeneratingCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge list line {line}: {message}")]
    EdgeListSyntax { line: usize, message: String },
    #[error("edge list header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// Which construction rule realizes a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Threshold,
    Chain,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Threshold => "threshold",
            Family::Chain => "chain",
        }
    }
}

/// Independent (0-vertices) or complete (1-vertices) part of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Independent,
    Complete,
}

/// Position of a vertex in the code that built it. `block` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub block: usize,
    pub part: Part,
}

/// A simple undirected graph stored as bitset adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    cells: Option<Vec<Cell>>,
    origin: Option<(GeneratingCode, Family)>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            cells: None,
            origin: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not adjacent.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Cell tags for graphs built from a code.
    pub fn cells(&self) -> Option<&[Cell]> {
        self.cells.as_deref()
    }

    pub fn origin(&self) -> Option<(&GeneratingCode, Family)> {
        self.origin.as_ref().map(|(c, f)| (c, *f))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        bfs(self, 0).iter().all(|d| d.is_some())
    }

    /// `n m` header followed by one `u v` line per edge, 0-indexed.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Graphviz DOT. Vertices built from a code are labelled `u<i>`/`v<i>`
    /// after their string and shaped by part.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for u in 0..self.n {
            match self.cells.as_ref().map(|c| c[u]) {
                Some(Cell { block, part: Part::Independent }) => {
                    let _ = writeln!(out, "  {u} [label=\"u{}\", shape=circle];", block + 1);
                }
                Some(Cell { block, part: Part::Complete }) => {
                    let _ = writeln!(
                        out,
                        "  {u} [label=\"v{}\", shape=circle, style=filled, fillcolor=black, fontcolor=white];",
                        block + 1
                    );
                }
                None => {
                    let _ = writeln!(out, "  {u};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Parses the format written by [`Graph::to_edge_list`]. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let syntax = |line: usize, message: &str| GraphError::EdgeListSyntax {
            line,
            message: message.to_string(),
        };
        let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
        let (n, m) = parse_pair(header).ok_or_else(|| syntax(hline, "expected `n m`"))?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(l).ok_or_else(|| syntax(line, "expected `u v`"))?);
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch { declared: m, found: edges.len() });
        }
        Graph::from_edges(n, edges)
    }

    /// The induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    let a = it.next()?.ok()?;
    let b = it.next()?.ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

fn tag_cells(code: &GeneratingCode) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(code.len());
    for (block, b) in code.blocks().iter().enumerate() {
        cells.extend(std::iter::repeat(Cell { block, part: Part::Independent }).take(b.zeros as usize));
        cells.extend(std::iter::repeat(Cell { block, part: Part::Complete }).take(b.ones as usize));
    }
    cells
}

/// Threshold graph: a 0 adds an isolated vertex, a 1 adds a vertex adjacent
/// to every vertex added before it.
pub fn build_threshold(code: &GeneratingCode) -> Graph {
    build(code, Family::Threshold)
}

/// Chain graph: a 1 is joined only to the 0-vertices added before it.
pub fn build_chain(code: &GeneratingCode) -> Graph {
    build(code, Family::Chain)
}

pub fn build(code: &GeneratingCode, family: Family) -> Graph {
    let bits = code.expand();
    let mut g = Graph::empty(bits.len());
    for (v, &dominating) in bits.iter().enumerate() {
        if !dominating {
            continue;
        }
        for (u, &earlier) in bits[..v].iter().enumerate() {
            if family == Family::Threshold || !earlier {
                g.add_edge(u, v);
            }
        }
    }
    g.cells = Some(tag_cells(code));
    g.origin = Some((code.clone(), family));
    g
}

/// All-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn eccentricity(&self, u: usize) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }
}

fn bfs(g: &Graph, src: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Breadth-first search from every vertex.
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.n();
    let mut data = Vec::with_capacity(n * n);
    for u in 0..n {
        for d in bfs(g, u) {
            data.push(d.ok_or(GraphError::DisconnectedGraph)?);
        }
    }
    Ok(DistanceMatrix { n, data })
}

/// Shape of a small induced subgraph, identified by edge count and sorted
/// degree sequence.
fn signature(g: &Graph, vertices: &[usize]) -> (usize, Vec<usize>) {
    let mut degrees: Vec<usize> = vertices
        .iter()
        .map(|&a| vertices.iter().filter(|&&b| a != b && g.has_edge(a, b)).count())
        .collect();
    degrees.sort_unstable();
    (degrees.iter().sum::<usize>() / 2, degrees)
}

fn is_p4(sig: &(usize, Vec<usize>)) -> bool {
    sig.0 == 3 && sig.1 == [1, 1, 2, 2]
}

fn is_c4(sig: &(usize, Vec<usize>)) -> bool {
    sig.0 == 4 && sig.1 == [2, 2, 2, 2]
}

fn is_2k2(sig: &(usize, Vec<usize>)) -> bool {
    sig.0 == 2 && sig.1 == [1, 1, 1, 1]
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `true`. Returns whether any call did.
pub(crate) fn any_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff `g` has no induced P4, C4 or 2K2.
pub fn recognize_threshold(g: &Graph) -> bool {
    !any_subset(g.n(), 4, |q| {
        let sig = signature(g, q);
        is_p4(&sig) || is_c4(&sig) || is_2k2(&sig)
    })
}

/// True iff `g` has no induced 2K2, C3 or C5.
pub fn recognize_chain(g: &Graph) -> bool {
    let triangle = any_subset(g.n(), 3, |q| signature(g, q).0 == 3);
    if triangle {
        return false;
    }
    let two_k2 = any_subset(g.n(), 4, |q| is_2k2(&signature(g, q)));
    if two_k2 {
        return false;
    }
    // A 2-regular graph on five vertices is C5.
    !any_subset(g.n(), 5, |q| {
        let sig = signature(g, q);
        sig.0 == 5 && sig.1 == [2, 2, 2, 2, 2]
    })
}

//! Simple undirected graphs, standard families and the edge-list format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::SplitMix64;

const PAIRING_RETRY_CAP: usize = 1000;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored canonically as `(j, k)` with `j < k`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and canonicalizes an edge set. Self-loops, out-of-range
    /// endpoints and repeated edges (in either orientation) are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self::from_canonical(n, set.into_iter().collect()))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "relabeling has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(
                    "relabeling is not a permutation".into(),
                ));
            }
        }
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Relabels so that `marked` becomes vertex 0 (swapping it with 0).
    pub fn with_marked_first(&self, marked: usize) -> Result<Self> {
        if marked >= self.n {
            return Err(Error::InvalidInput(format!(
                "marked vertex {marked} outside 0..{}",
                self.n
            )));
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.swap(0, marked);
        self.relabel(&perm)
    }

    /// Deletes `v` and its edges, shifting higher labels down by one.
    pub fn without_vertex(&self, v: usize) -> Self {
        assert!(v < self.n);
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)))
            .collect();
        Self::from_canonical(self.n - 1, edges)
    }
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    let edges = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .collect();
    Ok(Graph::from_canonical(n, edges))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|j| (j, (j + 1) % n)))
}

/// `dim`-dimensional hypercube; vertices adjacent iff labels differ in one bit.
pub fn hypercube_graph(dim: usize) -> Result<Graph> {
    if !(1..=24).contains(&dim) {
        return Err(Error::InvalidSize(format!(
            "hypercube dimension must be in 1..=24, got {dim}"
        )));
    }
    let n = 1usize << dim;
    let edges = (0..n)
        .flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, w)| u < w);
    Graph::new(n, edges)
}

/// Square lattice with periodic boundaries; vertex `(r, c)` is `r * cols + c`.
pub fn torus_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::InvalidSize(format!(
            "torus needs rows, cols >= 3, got {rows}x{cols}"
        )));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((id(r, c), id(r, (c + 1) % cols)));
            edges.push((id(r, c), id((r + 1) % rows, c)));
        }
    }
    Graph::new(rows * cols, edges)
}

/// Uniform-ish random `d`-regular graph from the pairing model, rejecting
/// pairings that produce loops or multi-edges.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidSize(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    if d == 0 {
        return Graph::new(n, []);
    }
    let mut rng = SplitMix64::new(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_RETRY_CAP {
        rng.shuffle(&mut points);
        let mut set = BTreeSet::new();
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !set.insert((u, v)) {
                continue 'attempt;
            }
        }
        return Ok(Graph::from_canonical(n, set.into_iter().collect()));
    }
    Err(Error::RetryExhausted {
        attempts: PAIRING_RETRY_CAP,
        what: format!("pairing model for {d}-regular graph on {n} vertices"),
    })
}

/// Erdős–Rényi `G(n, p)` with the repo's deterministic generator.
pub fn gnp_random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            if rng.next_f64() < p {
                edges.push((j, k));
            }
        }
    }
    Ok(Graph::from_canonical(n, edges))
}

/// New vertex 0 joined to every vertex of a regular `base` (relabeled `1..=n`).
pub fn apex_join(base: &Graph) -> Result<Graph> {
    if base.vertex_count() == 0 || base.regular_degree().is_none() {
        return Err(Error::InvalidInput(
            "apex join needs a non-empty regular base graph".into(),
        ));
    }
    let n = base.vertex_count();
    let edges = (1..=n)
        .map(|v| (0, v))
        .chain(base.edges().iter().map(|&(u, v)| (u + 1, v + 1)))
        .collect::<Vec<_>>();
    Graph::new(n + 1, edges)
}

/// Five-vertex fixture whose partition `{0}, {1,4}, {2,3}` has quotient
/// degrees `[[0,2,0],[1,0,2],[0,2,1]]`.
pub fn paper_example_graph() -> Graph {
    Graph::from_canonical(
        5,
        vec![(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
    )
}

/// Real 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> ComplexMatrix {
    let n = g.vertex_count();
    let mut m = ComplexMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        m[(u, v)] = Complex64::new(1.0, 0.0);
        m[(v, u)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Directed arcs of a graph: each edge `(j, k)` contributes `j→k` and `k→j`.
///
/// Arcs are sorted by `(source, target)`, so the arcs leaving `j` are a
/// contiguous slice whose targets are `g.neighbors(j)` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSpace {
    arcs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    reverse: Vec<usize>,
}

impl ArcSpace {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut arcs = Vec::with_capacity(2 * g.edge_count());
        let mut offsets = Vec::with_capacity(n + 1);
        for j in 0..n {
            offsets.push(arcs.len());
            arcs.extend(g.neighbors(j).iter().map(|&k| (j, k)));
        }
        offsets.push(arcs.len());
        let mut space = Self {
            arcs,
            offsets,
            reverse: Vec::new(),
        };
        space.reverse = space
            .arcs
            .iter()
            .map(|&(j, k)| space.index_of(k, j).expect("reverse arc present"))
            .collect();
        space
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    /// Index range of arcs leaving `v`.
    pub fn outgoing(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    /// Index of the reversed arc.
    pub fn reverse(&self, index: usize) -> usize {
        self.reverse[index]
    }

    pub fn index_of(&self, source: usize, target: usize) -> Option<usize> {
        if source >= self.vertex_count() {
            return None;
        }
        let range = self.outgoing(source);
        let start = range.start;
        self.arcs[range]
            .binary_search_by_key(&target, |&(_, k)| k)
            .ok()
            .map(|i| start + i)
    }
}

pub fn arc_space(g: &Graph) -> ArcSpace {
    ArcSpace::new(g)
}

/// Parses the edge-list format: `#` comment lines, a header `n m`, then `m`
/// lines `u v`. Blank lines are ignored.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing header line \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut set = BTreeSet::new();
    for _ in 0..m {
        let (line, content) = lines.next().ok_or_else(|| Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} edges, found {}", set.len()),
        })?;
        let [u, v] = parse_pair(line, content)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("endpoint out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if !set.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line,
                message: format!("repeated edge ({u}, {v})"),
            });
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected content after {m} edges"),
        });
    }
    Ok(Graph::from_canonical(n, set.into_iter().collect()))
}

fn parse_pair(line: usize, content: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, got {:?}", content),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("not a non-negative integer: {s:?}"),
        })
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}

/// Canonical edge-list text (edges sorted, smaller endpoint first).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

//! Simple undirected graphs, neighbourhood extraction and path enumeration.
//!
//! Throughout, `P_j` denotes the path on `j` vertices. A fan `F_k` is a
//! `P_{k-1}` together with a hub adjacent to every path vertex, so fans with
//! hub `u` correspond one-to-one with copies of `P_{k-1}` inside `G[N(u)]`.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("path order k must be at least 3 (got {0})")]
    PathOrder(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Unordered vertex pair, stored with the smaller endpoint first.
///
/// The derived order is the lexicographic order on `(lo, hi)` used for all
/// "lowest-indexed edge" tie-breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            assert_eq!(self.1, v, "{v} is not an endpoint of {self}");
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

/// An induced (or edge-deleted) subgraph together with the map back to its host.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `host[i]` is the host vertex represented by local vertex `i`; increasing.
    pub host: Vec<Vertex>,
}

impl Subgraph {
    pub fn local_of(&self, host_vertex: Vertex) -> Option<Vertex> {
        self.host.binary_search(&host_vertex).ok()
    }
}

/// A copy of a path, in canonical orientation (first vertex < last vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathCopy {
    pub vertices: Vec<Vertex>,
}

impl PathCopy {
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = Edge::new(u, v);
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    fn from_edge_set(n: usize, set: BTreeSet<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &set {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            adj,
            edges: set.into_iter().collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let set = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge(u, v)))
            .collect();
        Self::from_edge_set(n, set)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let set = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
        Self::from_edge_set(n, set)
    }

    pub fn path(n: usize) -> Self {
        let set = (1..n).map(|i| Edge(i - 1, i)).collect();
        Self::from_edge_set(n, set)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbours(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Subgraph {
        let mut host = vertices.to_vec();
        host.sort_unstable();
        host.dedup();
        let set = self
            .edges
            .iter()
            .filter_map(|e| {
                let a = host.binary_search(&e.0).ok()?;
                let b = host.binary_search(&e.1).ok()?;
                Some(Edge::new(a, b))
            })
            .collect();
        Subgraph {
            graph: Self::from_edge_set(host.len(), set),
            host,
        }
    }

    /// `G[N(u)]` with the vertex map back to `self`.
    pub fn neighbourhood_subgraph(&self, u: Vertex) -> Subgraph {
        self.induced_subgraph(&self.adj[u])
    }

    /// Same vertex set with the given edges deleted; absent edges are ignored.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let drop: BTreeSet<Edge> = removed.iter().copied().collect();
        let set = self
            .edges
            .iter()
            .copied()
            .filter(|e| !drop.contains(e))
            .collect();
        Self::from_edge_set(self.n(), set)
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Vertices at distance at most `radius` from `u`, sorted.
    pub fn ball(&self, u: Vertex, radius: usize) -> Vec<Vertex> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[u] = 0;
        let mut frontier = vec![u];
        let mut all = vec![u];
        for r in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = r;
                        next.push(w);
                    }
                }
            }
            all.extend_from_slice(&next);
            frontier = next;
        }
        all.sort_unstable();
        all
    }

    /// Reads the `p <n> <m>` / `e <u> <v>` text format (0-based ids; `c` lines are comments).
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut set = BTreeSet::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
            let mut toks = line.split_whitespace();
            let parse_err = |msg: &str| GraphError::Parse {
                line: lineno,
                msg: msg.to_string(),
            };
            match toks.next() {
                None | Some("c") => continue,
                Some("p") => {
                    if header.is_some() {
                        return Err(parse_err("duplicate header"));
                    }
                    let n = parse_usize(toks.next(), lineno)?;
                    let m = parse_usize(toks.next(), lineno)?;
                    header = Some((n, m));
                }
                Some("e") => {
                    let (n, _) = header.ok_or_else(|| parse_err("edge before header"))?;
                    let u = parse_usize(toks.next(), lineno)?;
                    let v = parse_usize(toks.next(), lineno)?;
                    for w in [u, v] {
                        if w >= n {
                            return Err(GraphError::VertexOutOfRange { vertex: w, n });
                        }
                    }
                    if u == v {
                        return Err(GraphError::SelfLoop(u));
                    }
                    if !set.insert(Edge::new(u, v)) {
                        return Err(GraphError::DuplicateEdge(Edge::new(u, v)));
                    }
                }
                Some(other) => return Err(parse_err(&format!("unknown line type {other:?}"))),
            }
            if toks.next().is_some() {
                return Err(parse_err("trailing tokens"));
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        if set.len() != m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header announces {m} edges, found {}", set.len()),
            });
        }
        Ok(Self::from_edge_set(n, set))
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "p {} {}", self.n(), self.m())?;
        for e in &self.edges {
            writeln!(w, "e {} {}", e.0, e.1)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let tok = tok.ok_or(GraphError::Parse {
        line,
        msg: "missing integer".into(),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("bad integer {tok:?}"),
    })
}

fn check_order(k: usize) -> Result<usize, GraphError> {
    if k < 3 {
        Err(GraphError::PathOrder(k))
    } else {
        Ok(k - 1)
    }
}

/// Depth-first extension of simple paths; calls `visit` on every path with
/// exactly `target` vertices. Starts and extensions are tried in increasing
/// vertex order, so complete paths are produced in lexicographic order.
fn for_each_path<F: FnMut(&[Vertex])>(g: &Graph, target: usize, visit: &mut F) {
    fn extend<F: FnMut(&[Vertex])>(
        g: &Graph,
        target: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        visit: &mut F,
    ) {
        if path.len() == target {
            visit(path);
            return;
        }
        let last = *path.last().expect("nonempty");
        for &w in g.neighbours(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(g, target, path, on_path, visit);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    if target == 0 {
        return;
    }
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::with_capacity(target);
    for s in 0..g.n() {
        on_path[s] = true;
        path.push(s);
        extend(g, target, &mut path, &mut on_path, visit);
        path.pop();
        on_path[s] = false;
    }
}

/// Every copy of `P_{k-1}` in `f`, once each, in lexicographic order.
pub fn enumerate_path_copies(f: &Graph, k: usize) -> Result<Vec<PathCopy>, GraphError> {
    let target = check_order(k)?;
    let mut out = Vec::new();
    for_each_path(f, target, &mut |p| {
        if p[0] < p[p.len() - 1] {
            out.push(PathCopy {
                vertices: p.to_vec(),
            });
        }
    });
    Ok(out)
}

/// Number of copies of `P_{k-1}` in `f`.
pub fn count_path_copies(f: &Graph, k: usize) -> Result<usize, GraphError> {
    let target = check_order(k)?;
    let mut count = 0;
    for_each_path(f, target, &mut |p| {
        if p[0] < p[p.len() - 1] {
            count += 1;
        }
    });
    Ok(count)
}

/// Whether `f` contains a path on `j` vertices (`j >= 1`).
pub fn has_path_on(f: &Graph, j: usize) -> bool {
    fn extend(g: &Graph, need: usize, last: Vertex, on_path: &mut [bool]) -> bool {
        if need == 0 {
            return true;
        }
        for &w in g.neighbours(last) {
            if !on_path[w] {
                on_path[w] = true;
                let found = extend(g, need - 1, w, on_path);
                on_path[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    if j == 0 {
        return true;
    }
    if j > f.n() {
        return false;
    }
    let mut on_path = vec![false; f.n()];
    (0..f.n()).any(|s| {
        on_path[s] = true;
        let found = extend(f, j - 1, s, &mut on_path);
        on_path[s] = false;
        found
    })
}

/// Whether `f` has no copy of `P_{k-1}`.
pub fn is_path_free(f: &Graph, k: usize) -> Result<bool, GraphError> {
    Ok(!has_path_on(f, check_order(k)?))
}

/// A longest path of a connected graph: the lexicographically least vertex
/// sequence among all paths of maximum length.
pub fn longest_path(f: &Graph) -> Result<Vec<Vertex>, GraphError> {
    if f.n() == 0 {
        return Err(GraphError::Empty);
    }
    if !f.is_connected() {
        return Err(GraphError::Disconnected);
    }
    struct Search<'a> {
        g: &'a Graph,
        on_path: Vec<bool>,
        path: Vec<Vertex>,
        best: Vec<Vertex>,
    }
    impl Search<'_> {
        // Returns true once a Hamiltonian path is found; nothing can beat it.
        fn extend(&mut self) -> bool {
            if self.path.len() > self.best.len() {
                self.best.clone_from(&self.path);
                if self.best.len() == self.g.n() {
                    return true;
                }
            }
            let last = *self.path.last().expect("nonempty");
            for &w in self.g.neighbours(last) {
                if !self.on_path[w] {
                    self.on_path[w] = true;
                    self.path.push(w);
                    let done = self.extend();
                    self.path.pop();
                    self.on_path[w] = false;
                    if done {
                        return true;
                    }
                }
            }
            false
        }
    }
    let mut s = Search {
        g: f,
        on_path: vec![false; f.n()],
        path: Vec::new(),
        best: Vec::new(),
    };
    for start in 0..f.n() {
        s.on_path[start] = true;
        s.path.push(start);
        let done = s.extend();
        s.path.pop();
        s.on_path[start] = false;
        if done {
            break;
        }
    }
    Ok(s.best)
}

/// For each vertex `u`, the number of `P_{k-1}` copies in `G[N(u)]`, i.e. the
/// number of fans `F_k` with hub `u`.
pub fn count_fans_per_vertex(g: &Graph, k: usize) -> Result<Vec<usize>, GraphError> {
    check_order(k)?;
    (0..g.n())
        .map(|u| count_path_copies(&g.neighbourhood_subgraph(u).graph, k))
        .collect()
}

/// `2|E|/|V|` as an exact fraction.
pub fn average_degree(f: &Graph) -> Result<Ratio<usize>, GraphError> {
    if f.n() == 0 {
        return Err(GraphError::Empty);
    }
    Ok(Ratio::new(2 * f.m(), f.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel(rim: usize) -> Graph {
        let mut edges: Vec<_> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
        edges.extend((0..rim).map(|i| (rim, i)));
        Graph::from_edges(rim + 1, edges).unwrap()
    }

    #[test]
    fn neighbourhoods() {
        let k3 = Graph::complete(3);
        let s = k3.neighbourhood_subgraph(0);
        assert_eq!(s.host, vec![1, 2]);
        assert_eq!(s.graph.edges(), &[Edge::new(0, 1)]);

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = star.neighbourhood_subgraph(0);
        assert_eq!((s.graph.n(), s.graph.m()), (3, 0));

        let s = Graph::cycle(5).neighbourhood_subgraph(0);
        assert_eq!(s.host, vec![1, 4]);
        assert_eq!(s.graph.m(), 0);
    }

    #[test]
    fn path_copies() {
        assert_eq!(
            enumerate_path_copies(&Graph::complete(3), 3).unwrap().len(),
            3
        );
        let p = enumerate_path_copies(&Graph::path(3), 4).unwrap();
        assert_eq!(
            p,
            vec![PathCopy {
                vertices: vec![0, 1, 2]
            }]
        );
        assert_eq!(
            enumerate_path_copies(&Graph::complete(4), 5).unwrap().len(),
            12
        );
        assert_eq!(
            enumerate_path_copies(&Graph::complete(3), 2),
            Err(GraphError::PathOrder(2))
        );
        for copy in enumerate_path_copies(&Graph::complete(5), 5).unwrap() {
            assert!(copy.vertices[0] < *copy.vertices.last().unwrap());
        }
    }

    #[test]
    fn fan_counts() {
        assert_eq!(
            count_fans_per_vertex(&Graph::complete(4), 3).unwrap(),
            vec![3; 4]
        );
        assert_eq!(
            count_fans_per_vertex(&Graph::cycle(5), 3).unwrap(),
            vec![0; 5]
        );
        let w = wheel(5);
        assert_eq!(count_fans_per_vertex(&w, 6).unwrap()[5], 5);
        // a rim vertex sees hub plus two rim neighbours: a P_3 only
        assert_eq!(count_fans_per_vertex(&w, 4).unwrap()[0], 1);
    }

    #[test]
    fn longest_paths() {
        assert_eq!(longest_path(&Graph::path(5)).unwrap(), vec![0, 1, 2, 3, 4]);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(longest_path(&star).unwrap(), vec![1, 0, 2]);
        assert_eq!(longest_path(&Graph::complete(3)).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            longest_path(&Graph::empty(2)),
            Err(GraphError::Disconnected)
        );
        assert_eq!(longest_path(&Graph::empty(0)), Err(GraphError::Empty));
        assert_eq!(longest_path(&Graph::empty(1)).unwrap(), vec![0]);
    }

    #[test]
    fn average_degrees() {
        assert_eq!(
            average_degree(&Graph::complete(4)).unwrap(),
            Ratio::from_integer(3)
        );
        assert_eq!(
            average_degree(&Graph::empty(5)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(average_degree(&Graph::path(3)).unwrap(), Ratio::new(4, 3));
        assert_eq!(average_degree(&Graph::empty(0)), Err(GraphError::Empty));
    }

    #[test]
    fn text_format() {
        let g = Graph::cycle(5);
        let text = g.to_text();
        assert!(text.starts_with("p 5 5\n"));
        assert_eq!(Graph::read_text(text.as_bytes()).unwrap(), g);

        let dup = "p 3 2\ne 0 1\ne 1 0\n";
        assert!(matches!(
            Graph::read_text(dup.as_bytes()),
            Err(GraphError::DuplicateEdge(_))
        ));
        let looped = "p 3 1\ne 1 1\n";
        assert_eq!(
            Graph::read_text(looped.as_bytes()),
            Err(GraphError::SelfLoop(1))
        );
        let short = "p 3 2\ne 0 1\n";
        assert!(Graph::read_text(short.as_bytes()).is_err());
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
    }

    #[test]
    fn ball_and_components() {
        let g = Graph::path(6);
        assert_eq!(g.ball(2, 2), vec![0, 1, 2, 3, 4]);
        let h = g.without_edges(&[Edge::new(2, 3)]);
        assert_eq!(h.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}

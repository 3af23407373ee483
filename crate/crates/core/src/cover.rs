//! Covers `(L, H)` of a base graph, partial colourings and their residual covers.
//!
//! Colours are the vertices of `H`, numbered densely. Each colour belongs to
//! exactly one base vertex (its owner) and carries a natural-number label; in
//! a list-cover two colours are cross-adjacent exactly when their owners are
//! adjacent and their labels agree. Edges inside a list are never stored: a
//! partial colouring picks at most one colour per vertex, which is all that
//! list cliques express.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, Subgraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Colour(pub u32);

impl Colour {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CoverError {
    #[error("expected {expected} lists, got {got}")]
    ListCount { expected: usize, got: usize },
    #[error("list of vertex {vertex} repeats natural {natural}")]
    RepeatedNatural { vertex: Vertex, natural: u64 },
    #[error("cross edge {0}-{1} joins colours of non-adjacent vertices")]
    CrossEdgeOffBase(Colour, Colour),
    #[error("cross edges at colour {0} towards vertex {1} do not form a matching")]
    NotAMatching(Colour, Vertex),
    #[error("colour {0} does not exist")]
    UnknownColour(Colour),
    #[error("colour {0} has been eliminated by the partial colouring")]
    ColourEliminated(Colour),
    #[error("invalid partial colouring at vertex {vertex}: {msg}")]
    InvalidColouring { vertex: Vertex, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    base: Graph,
    lists: Vec<Vec<Colour>>,
    owner: Vec<Vertex>,
    label: Vec<u64>,
    partners: Vec<Vec<Colour>>,
}

/// Maps a compacted cover back to the cover it was cut from.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverMap {
    pub vertex_host: Vec<Vertex>,
    pub colour_host: Vec<Colour>,
}

impl CoverMap {
    pub fn host_colour(&self, c: Colour) -> Colour {
        self.colour_host[c.index()]
    }
}

impl Cover {
    /// List-cover from per-vertex lists of naturals.
    ///
    /// Colours are numbered vertex by vertex, each list in increasing natural
    /// order; copies of equal naturals on adjacent vertices are matched.
    pub fn from_lists(base: Graph, lists: &[Vec<u64>]) -> Result<Self, CoverError> {
        if lists.len() != base.n() {
            return Err(CoverError::ListCount {
                expected: base.n(),
                got: lists.len(),
            });
        }
        let mut cover_lists = Vec::with_capacity(base.n());
        let mut owner = Vec::new();
        let mut label = Vec::new();
        let mut by_label: Vec<HashMap<u64, Colour>> = Vec::with_capacity(base.n());
        for (u, list) in lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(CoverError::RepeatedNatural {
                    vertex: u,
                    natural: w[0],
                });
            }
            let mut ids = Vec::with_capacity(sorted.len());
            let mut index = HashMap::with_capacity(sorted.len());
            for nat in sorted {
                let c = Colour(owner.len() as u32);
                owner.push(u);
                label.push(nat);
                ids.push(c);
                index.insert(nat, c);
            }
            cover_lists.push(ids);
            by_label.push(index);
        }
        let mut partners = vec![Vec::new(); owner.len()];
        for e in base.edges() {
            for &x in &cover_lists[e.lo()] {
                if let Some(&y) = by_label[e.hi()].get(&label[x.index()]) {
                    partners[x.index()].push(y);
                    partners[y.index()].push(x);
                }
            }
        }
        for p in &mut partners {
            p.sort_unstable();
        }
        Ok(Cover {
            base,
            lists: cover_lists,
            owner,
            label,
            partners,
        })
    }

    /// General cover: `list_labels[u]` gives the labels of `u`'s colours (numbered
    /// as in [`Cover::from_lists`]) and `cross` the edges of `H*`.
    pub fn with_cross_edges(
        base: Graph,
        list_labels: &[Vec<u64>],
        cross: &[(Colour, Colour)],
    ) -> Result<Self, CoverError> {
        let mut cover = Self::from_lists(Graph::empty(base.n()), list_labels)?;
        cover.base = base;
        let n_colours = cover.owner.len();
        for &(x, y) in cross {
            for c in [x, y] {
                if c.index() >= n_colours {
                    return Err(CoverError::UnknownColour(c));
                }
            }
            let (u, v) = (cover.owner(x), cover.owner(y));
            if u == v || !cover.base.has_edge(u, v) {
                return Err(CoverError::CrossEdgeOffBase(x, y));
            }
            for (a, b, towards) in [(x, y, v), (y, x, u)] {
                let clash = cover.partners[a.index()]
                    .iter()
                    .any(|&p| cover.owner(p) == towards && p != b);
                if clash {
                    return Err(CoverError::NotAMatching(a, towards));
                }
            }
            if !cover.partners[x.index()].contains(&y) {
                cover.partners[x.index()].push(y);
                cover.partners[y.index()].push(x);
            }
        }
        for p in &mut cover.partners {
            p.sort_unstable();
        }
        Ok(cover)
    }

    /// The hard-core model on a plain graph, as a cover with one colour per vertex.
    pub fn of_graph(g: &Graph) -> Self {
        let lists = vec![vec![0u64]; g.n()];
        Self::from_lists(g.clone(), &lists).expect("singleton lists are valid")
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn n_colours(&self) -> usize {
        self.owner.len()
    }

    pub fn list(&self, u: Vertex) -> &[Colour] {
        &self.lists[u]
    }

    pub fn owner(&self, x: Colour) -> Vertex {
        self.owner[x.index()]
    }

    pub fn label(&self, x: Colour) -> u64 {
        self.label[x.index()]
    }

    /// Neighbours of `x` in `H*` (cross edges only), increasing.
    pub fn partners(&self, x: Colour) -> &[Colour] {
        &self.partners[x.index()]
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> {
        (0..self.owner.len() as u32).map(Colour)
    }

    pub fn are_adjacent(&self, x: Colour, y: Colour) -> bool {
        if x == y {
            return false;
        }
        self.owner(x) == self.owner(y) || self.partners(x).binary_search(&y).is_ok()
    }

    /// Matching of `H` across base edge `e`, as pairs `(x in L(lo), y in L(hi))`.
    pub fn cross_edges(&self, e: Edge) -> Vec<(Colour, Colour)> {
        self.lists[e.lo()]
            .iter()
            .flat_map(|&x| {
                self.partners(x)
                    .iter()
                    .filter(move |&&y| self.owner(y) == e.hi())
                    .map(move |&y| (x, y))
            })
            .collect()
    }

    /// Number of edges of `H*`.
    pub fn n_cross_edges(&self) -> usize {
        self.partners.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `Some(q)` when every list has exactly `q` colours.
    pub fn uniform_list_size(&self) -> Option<usize> {
        let q = self.lists.first().map_or(0, Vec::len);
        self.lists.iter().all(|l| l.len() == q).then_some(q)
    }

    /// Whether a colour set is independent in `H`.
    pub fn is_independent(&self, set: &[Colour]) -> bool {
        let mut owners = BTreeSet::new();
        let members: BTreeSet<Colour> = set.iter().copied().collect();
        set.iter().all(|&x| {
            owners.insert(self.owner(x)) && self.partners(x).iter().all(|y| !members.contains(y))
        })
    }

    /// Compacting copy on `vertices` (sorted, deduplicated), keeping colours
    /// for which `keep` holds and dropping cross edges over `dropped` base edges
    /// (given in host ids; those edges also leave the base graph).
    pub fn restrict<F>(&self, vertices: &[Vertex], keep: F, dropped: &[Edge]) -> (Cover, CoverMap)
    where
        F: Fn(Colour) -> bool,
    {
        let Subgraph { graph, host } = self.base.induced_subgraph(vertices);
        let local_drop: Vec<Edge> = dropped
            .iter()
            .filter_map(|e| {
                let a = host.binary_search(&e.lo()).ok()?;
                let b = host.binary_search(&e.hi()).ok()?;
                Some(Edge::new(a, b))
            })
            .collect();
        let graph = if local_drop.is_empty() {
            graph
        } else {
            graph.without_edges(&local_drop)
        };
        let mut local_of: HashMap<Colour, Colour> = HashMap::new();
        let mut lists = Vec::with_capacity(host.len());
        let mut owner = Vec::new();
        let mut label = Vec::new();
        let mut colour_host = Vec::new();
        for (lu, &u) in host.iter().enumerate() {
            let mut ids = Vec::new();
            for &x in &self.lists[u] {
                if keep(x) {
                    let c = Colour(owner.len() as u32);
                    local_of.insert(x, c);
                    owner.push(lu);
                    label.push(self.label(x));
                    colour_host.push(x);
                    ids.push(c);
                }
            }
            lists.push(ids);
        }
        let mut partners = vec![Vec::new(); owner.len()];
        for (i, &x) in colour_host.iter().enumerate() {
            let lu = owner[i];
            for y in self.partners(x) {
                if let Some(&ly) = local_of.get(y) {
                    if graph.has_edge(lu, owner[ly.index()]) {
                        partners[i].push(ly);
                    }
                }
            }
            partners[i].sort_unstable();
        }
        (
            Cover {
                base: graph,
                lists,
                owner,
                label,
                partners,
            },
            CoverMap {
                vertex_host: host,
                colour_host,
            },
        )
    }
}

/// Value of a partial colouring at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    Blank,
    Coloured(Colour),
    /// Uncoloured, remembering the incident edge that caused it.
    Uncoloured(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialColouring {
    slots: Vec<Slot>,
}

impl PartialColouring {
    pub fn all_blank(n: usize) -> Self {
        PartialColouring {
            slots: vec![Slot::Blank; n],
        }
    }

    pub fn from_slots(slots: Vec<Slot>) -> Self {
        PartialColouring { slots }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, u: Vertex) -> Slot {
        self.slots[u]
    }

    pub fn is_blank(&self, u: Vertex) -> bool {
        self.slots[u] == Slot::Blank
    }

    pub fn is_coloured(&self, u: Vertex) -> bool {
        matches!(self.slots[u], Slot::Coloured(_))
    }

    pub fn blank_vertices(&self) -> Vec<Vertex> {
        self.select(|s| matches!(s, Slot::Blank))
    }

    pub fn coloured_vertices(&self) -> Vec<Vertex> {
        self.select(|s| matches!(s, Slot::Coloured(_)))
    }

    pub fn uncoloured_vertices(&self) -> Vec<Vertex> {
        self.select(|s| matches!(s, Slot::Uncoloured(_)))
    }

    fn select(&self, pred: impl Fn(&Slot) -> bool) -> Vec<Vertex> {
        (0..self.slots.len())
            .filter(|&u| pred(&self.slots[u]))
            .collect()
    }

    /// `ind(σ)`: the chosen colours.
    pub fn chosen(&self) -> Vec<Colour> {
        self.slots
            .iter()
            .filter_map(|s| match s {
                Slot::Coloured(x) => Some(*x),
                _ => None,
            })
            .collect()
    }

    /// Checks the two defining conditions against `cover`.
    pub fn validate(&self, cover: &Cover) -> Result<(), CoverError> {
        let bad = |vertex, msg: &str| CoverError::InvalidColouring {
            vertex,
            msg: msg.to_string(),
        };
        if self.slots.len() != cover.base().n() {
            return Err(bad(0, "length differs from vertex count"));
        }
        for (u, slot) in self.slots.iter().enumerate() {
            match *slot {
                Slot::Blank => {}
                Slot::Coloured(x) => {
                    if x.index() >= cover.n_colours() || cover.owner(x) != u {
                        return Err(bad(u, "colour outside its list"));
                    }
                    let clash = cover
                        .partners(x)
                        .iter()
                        .any(|&y| self.slots[cover.owner(y)] == Slot::Coloured(y));
                    if clash {
                        return Err(bad(u, "chosen colours are adjacent in H"));
                    }
                }
                Slot::Uncoloured(e) => {
                    if !e.contains(u) || !cover.base().has_edge(e.lo(), e.hi()) {
                        return Err(bad(u, "uncoloured marker is not an incident edge"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The residual cover `H_σ` as a view: colours eliminated by `σ` are tombstoned.
///
/// `blocked[x]` counts chosen colours cross-adjacent to `x`; a colour survives
/// (lies in `L_σ(owner)`) iff its owner is not coloured and nothing blocks it.
/// Updates through [`Residual::set`] are incremental.
#[derive(Clone, Debug)]
pub struct Residual<'c> {
    cover: &'c Cover,
    sigma: PartialColouring,
    blocked: Vec<u32>,
}

/// `residual_cover(c, σ)`.
pub fn residual_cover(cover: &Cover, sigma: PartialColouring) -> Residual<'_> {
    Residual::new(cover, sigma)
}

impl<'c> Residual<'c> {
    pub fn new(cover: &'c Cover, sigma: PartialColouring) -> Self {
        assert_eq!(
            sigma.len(),
            cover.base().n(),
            "colouring/cover size mismatch"
        );
        let mut blocked = vec![0u32; cover.n_colours()];
        for x in sigma.chosen() {
            for y in cover.partners(x) {
                blocked[y.index()] += 1;
            }
        }
        Residual {
            cover,
            sigma,
            blocked,
        }
    }

    pub fn cover(&self) -> &'c Cover {
        self.cover
    }

    pub fn sigma(&self) -> &PartialColouring {
        &self.sigma
    }

    pub fn into_sigma(self) -> PartialColouring {
        self.sigma
    }

    #[inline]
    pub fn is_alive(&self, x: Colour) -> bool {
        self.blocked[x.index()] == 0 && !self.sigma.is_coloured(self.cover.owner(x))
    }

    /// `L_σ(u)`.
    pub fn list(&self, u: Vertex) -> impl Iterator<Item = Colour> + '_ {
        self.cover
            .list(u)
            .iter()
            .copied()
            .filter(move |&x| self.is_alive(x))
    }

    pub fn list_len(&self, u: Vertex) -> usize {
        self.list(u).count()
    }

    /// Degree of `x` in `H*_σ`, without checking that `x` survives.
    pub fn deg_star_unchecked(&self, x: Colour) -> usize {
        self.cover
            .partners(x)
            .iter()
            .filter(|&&y| self.sigma.is_blank(self.cover.owner(y)) && self.is_alive(y))
            .count()
    }

    /// Degree of `x` in `H*_σ`.
    pub fn deg_star(&self, x: Colour) -> Result<usize, CoverError> {
        if x.index() >= self.cover.n_colours() {
            return Err(CoverError::UnknownColour(x));
        }
        if !self.is_alive(x) {
            return Err(CoverError::ColourEliminated(x));
        }
        Ok(self.deg_star_unchecked(x))
    }

    /// Changes the slot at `u`, keeping the elimination counts current.
    pub fn set(&mut self, u: Vertex, slot: Slot) {
        if let Slot::Coloured(old) = self.sigma.slots[u] {
            for y in self.cover.partners(old) {
                self.blocked[y.index()] -= 1;
            }
        }
        if let Slot::Coloured(new) = slot {
            debug_assert_eq!(self.cover.owner(new), u);
            for y in self.cover.partners(new) {
                self.blocked[y.index()] += 1;
            }
        }
        self.sigma.slots[u] = slot;
    }

    /// Compacted `ℋ_σ` on `G[bla(σ)]`.
    pub fn compact(&self) -> (Cover, CoverMap) {
        let blank = self.sigma.blank_vertices();
        self.cover.restrict(&blank, |x| self.is_alive(x), &[])
    }

    /// Whether `B_u` holds.
    pub fn is_b_flawed(&self, u: Vertex, ell: f64) -> bool {
        if self.sigma.is_coloured(u) {
            return false;
        }
        let mut size = 0usize;
        for x in self.list(u) {
            if self.deg_star_unchecked(x) as f64 > ell / 8.0 {
                return true;
            }
            size += 1;
        }
        (size as f64) < ell
    }

    /// The least flaw present, by full scan.
    pub fn least_flaw(&self, ell: f64) -> Option<Flaw> {
        let n = self.sigma.len();
        if let Some(u) = (0..n).find(|&u| self.is_b_flawed(u, ell)) {
            return Some(Flaw::B(u));
        }
        (0..n).find_map(|u| match self.sigma.get(u) {
            Slot::Uncoloured(e) => Some(Flaw::U(u, e)),
            _ => None,
        })
    }
}

/// `deg*` of a surviving colour under `σ`.
pub fn deg_star(cover: &Cover, sigma: &PartialColouring, x: Colour) -> Result<usize, CoverError> {
    Residual::new(cover, sigma.clone()).deg_star(x)
}

pub fn is_b_flawed(cover: &Cover, sigma: &PartialColouring, u: Vertex, ell: f64) -> bool {
    Residual::new(cover, sigma.clone()).is_b_flawed(u, ell)
}

pub fn least_flaw(cover: &Cover, sigma: &PartialColouring, ell: f64) -> Option<Flaw> {
    Residual::new(cover, sigma.clone()).least_flaw(ell)
}

/// Flaws, ordered: every `B` before every `U`; `B` by vertex; `U` by vertex then edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flaw {
    B(Vertex),
    U(Vertex, Edge),
}

/// Per-vertex natural-number lists, read from and written as a JSON object
/// `{"<vertex>": [naturals...]}`.
pub fn lists_from_json(text: &str, n: usize) -> Result<Vec<Vec<u64>>, String> {
    let map: BTreeMap<String, Vec<u64>> =
        serde_json::from_str(text).map_err(|e| format!("list file: {e}"))?;
    let mut lists = vec![None; n];
    for (key, list) in map {
        let v: usize = key
            .parse()
            .map_err(|_| format!("list file: bad vertex id {key:?}"))?;
        if v >= n {
            return Err(format!("list file: vertex {v} out of range"));
        }
        lists[v] = Some(list);
    }
    lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| format!("list file: no list for vertex {v}")))
        .collect()
}

pub fn lists_to_json(lists: &[Vec<u64>]) -> String {
    let map: BTreeMap<usize, &Vec<u64>> = lists.iter().enumerate().collect();
    serde_json::to_string(&map).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_cover(a: Vec<u64>, b: Vec<u64>) -> Cover {
        Cover::from_lists(Graph::complete(2), &[a, b]).unwrap()
    }

    #[test]
    fn list_cover_matching() {
        assert_eq!(edge_cover(vec![1, 2], vec![2, 3]).n_cross_edges(), 1);
        assert_eq!(edge_cover(vec![1, 2], vec![3, 4]).n_cross_edges(), 0);
        let tri = Cover::from_lists(Graph::complete(3), &vec![vec![1, 2]; 3]).unwrap();
        for e in tri.base().edges() {
            assert_eq!(tri.cross_edges(*e).len(), 2);
        }
        assert_eq!(
            Cover::from_lists(Graph::empty(1), &[vec![4, 4]]),
            Err(CoverError::RepeatedNatural {
                vertex: 0,
                natural: 4
            })
        );
    }

    #[test]
    fn general_cover_validation() {
        let g = Graph::path(3);
        let labels = vec![vec![0, 1], vec![0, 1], vec![0, 1]];
        // colours: v0 -> c0,c1 ; v1 -> c2,c3 ; v2 -> c4,c5
        let ok = Cover::with_cross_edges(g.clone(), &labels, &[(Colour(0), Colour(3))]);
        assert!(ok.is_ok());
        let off_base = Cover::with_cross_edges(g.clone(), &labels, &[(Colour(0), Colour(4))]);
        assert!(matches!(off_base, Err(CoverError::CrossEdgeOffBase(..))));
        let not_matching = Cover::with_cross_edges(
            g,
            &labels,
            &[(Colour(0), Colour(2)), (Colour(0), Colour(3))],
        );
        assert!(matches!(not_matching, Err(CoverError::NotAMatching(..))));
    }

    #[test]
    fn residual_examples() {
        let c = edge_cover(vec![1, 2], vec![1, 3]);
        let blank = Residual::new(&c, PartialColouring::all_blank(2));
        assert_eq!(blank.list_len(0), 2);
        assert_eq!(blank.list_len(1), 2);

        let mut r = Residual::new(&c, PartialColouring::all_blank(2));
        r.set(0, Slot::Coloured(c.list(0)[0]));
        assert_eq!(r.list(1).collect::<Vec<_>>(), vec![c.list(1)[1]]);

        // u and w both coloured with copies of the natural matched to y at v
        let p = Cover::from_lists(Graph::path(3), &[vec![5], vec![5, 6], vec![5]]).unwrap();
        let mut r = Residual::new(&p, PartialColouring::all_blank(3));
        r.set(0, Slot::Coloured(p.list(0)[0]));
        r.set(2, Slot::Coloured(p.list(2)[0]));
        assert_eq!(r.list_len(1), 1);
        let (compact, map) = r.compact();
        assert_eq!(compact.base().n(), 1);
        assert_eq!(map.vertex_host, vec![1]);
        assert_eq!(compact.label(compact.list(0)[0]), 6);
    }

    #[test]
    fn deg_star_examples() {
        let iso = Cover::from_lists(Graph::empty(1), &[vec![1, 2]]).unwrap();
        let s = PartialColouring::all_blank(1);
        assert_eq!(deg_star(&iso, &s, Colour(0)), Ok(0));

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = Cover::from_lists(star, &[vec![7], vec![7, 1], vec![7], vec![7, 2]]).unwrap();
        assert_eq!(
            deg_star(&c, &PartialColouring::all_blank(4), Colour(0)),
            Ok(3)
        );

        // x in L(u) matched to y in L(v); v coloured with z != y
        let c = edge_cover(vec![1], vec![1, 2]);
        let mut s = PartialColouring::all_blank(2);
        s = {
            let mut r = Residual::new(&c, s);
            r.set(1, Slot::Coloured(c.list(1)[1]));
            r.into_sigma()
        };
        assert_eq!(deg_star(&c, &s, Colour(0)), Ok(0));
        // the eliminated colour of a coloured vertex
        assert_eq!(
            deg_star(&c, &s, c.list(1)[0]),
            Err(CoverError::ColourEliminated(c.list(1)[0]))
        );
    }

    #[test]
    fn b_flaw_examples() {
        let c = Cover::from_lists(Graph::empty(1), &[vec![1, 2, 3, 4]]).unwrap();
        let mut s = PartialColouring::all_blank(1);
        assert!(!is_b_flawed(&c, &s, 0, 4.0));
        assert!(is_b_flawed(&c, &s, 0, 5.0));
        s = PartialColouring::from_slots(vec![Slot::Coloured(Colour(0))]);
        assert!(!is_b_flawed(&c, &s, 0, 100.0));
    }

    #[test]
    fn flaw_order() {
        let g = Graph::path(4);
        let c = Cover::from_lists(g, &vec![vec![1, 2, 3]; 4]).unwrap();
        let s = PartialColouring::all_blank(4);
        // with ell = 3 every blank vertex with a neighbour has deg* >= 1 > 3/8
        assert_eq!(least_flaw(&c, &s, 3.0), Some(Flaw::B(0)));

        let lonely = Cover::from_lists(Graph::empty(3), &vec![vec![1, 2]; 3]).unwrap();
        assert_eq!(
            least_flaw(&lonely, &PartialColouring::all_blank(3), 2.0),
            None
        );

        let c2 = Cover::from_lists(Graph::path(2), &[vec![1], vec![2]]).unwrap();
        let s = PartialColouring::from_slots(vec![
            Slot::Uncoloured(Edge::new(0, 1)),
            Slot::Coloured(Colour(1)),
        ]);
        assert_eq!(least_flaw(&c2, &s, 0.5), Some(Flaw::U(0, Edge::new(0, 1))));

        assert!(Flaw::B(3) < Flaw::U(1, Edge::new(1, 2)));
        assert!(Flaw::U(1, Edge::new(1, 2)) < Flaw::U(2, Edge::new(0, 2)));
    }

    #[test]
    fn validation_rejects_adjacent_choice() {
        let c = edge_cover(vec![1], vec![1]);
        let s = PartialColouring::from_slots(vec![
            Slot::Coloured(Colour(0)),
            Slot::Coloured(Colour(1)),
        ]);
        assert!(s.validate(&c).is_err());
        let s = PartialColouring::from_slots(vec![Slot::Coloured(Colour(1)), Slot::Blank]);
        assert!(s.validate(&c).is_err());
    }

    #[test]
    fn list_json_round_trip() {
        let lists = vec![vec![1, 2], vec![3]];
        let text = lists_to_json(&lists);
        assert_eq!(lists_from_json(&text, 2).unwrap(), lists);
        assert!(lists_from_json(&text, 3).is_err());
    }
}

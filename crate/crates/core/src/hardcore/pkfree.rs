//! Exact partition function and sampler for the hard-core model on a cover
//! whose base graph has no path on `k - 1` vertices.
//!
//! The recursion works one connected component of the base at a time. A
//! component with a single vertex contributes `1 + λ·(alive colours)`. Any
//! other component has a longest path `P`; we enumerate the independent sets
//! `J` of the cover restricted to `P`, and for each one recurse on the rest of
//! the component with the neighbours of `J` removed. Deleting a longest path
//! from a connected graph without `P_j` leaves a graph without `P_{j-1}`, so the
//! depth is at most `k - 3`.
//!
//! Subproblems are memoised by (vertex set, alive colours).

use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;
use smallvec::SmallVec;

use super::{check_lambda, HardCoreError};
use crate::bitset::BitSet;
use crate::cover::{Colour, Cover};
use crate::graph::{self, Vertex};

struct Branching {
    path: Rc<Vec<Vertex>>,
    rest: BitSet,
    options: Vec<PathOption>,
    total: f64,
}

struct PathOption {
    chosen: SmallVec<[usize; 4]>,
    alive_after: BitSet,
    weight: f64,
}

/// Marginal law of the colours chosen on one top-level longest path.
#[derive(Clone, Debug)]
pub struct PathMarginal {
    pub path: Vec<Vertex>,
    pub outcomes: Vec<(Vec<Colour>, f64)>,
}

pub struct PkFreeSampler<'c> {
    cover: &'c Cover,
    lambda: f64,
    k: usize,
    vertex_adj: Vec<BitSet>,
    vertex_lists: Vec<BitSet>,
    conflicts: Vec<BitSet>,
    components: HashMap<BitSet, Rc<Vec<BitSet>>>,
    paths: HashMap<BitSet, Rc<Vec<Vertex>>>,
    branchings: HashMap<(BitSet, BitSet), Rc<Branching>>,
}

impl<'c> PkFreeSampler<'c> {
    pub fn new(cover: &'c Cover, lambda: f64, k: usize) -> Result<Self, HardCoreError> {
        let lambda = check_lambda(lambda)?;
        if !graph::is_path_free(cover.base(), k)? {
            return Err(HardCoreError::NotPathFree { k });
        }
        let n = cover.base().n();
        let nc = cover.n_colours();
        let vertex_adj = (0..n)
            .map(|u| BitSet::from_iter(n, cover.base().neighbours(u).iter().copied()))
            .collect();
        let vertex_lists = (0..n)
            .map(|u| BitSet::from_iter(nc, cover.list(u).iter().map(|x| x.index())))
            .collect();
        let conflicts = cover
            .colours()
            .map(|x| BitSet::from_iter(nc, cover.partners(x).iter().map(|y| y.index())))
            .collect();
        Ok(PkFreeSampler {
            cover,
            lambda,
            k,
            vertex_adj,
            vertex_lists,
            conflicts,
            components: HashMap::new(),
            paths: HashMap::new(),
            branchings: HashMap::new(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn all_vertices(&self) -> BitSet {
        BitSet::full(self.cover.base().n())
    }

    fn all_colours(&self) -> BitSet {
        BitSet::full(self.cover.n_colours())
    }

    /// The partition function `Z_H(λ)`.
    pub fn partition_function(&mut self) -> f64 {
        let (vs, alive) = (self.all_vertices(), self.all_colours());
        self.z(&vs, &alive)
    }

    /// An exact draw from the hard-core distribution, as sorted colour ids.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Vec<Colour> {
        let (vs, alive) = (self.all_vertices(), self.all_colours());
        let mut out = Vec::new();
        self.sample_into(&vs, &alive, rng, &mut out);
        out.sort_unstable();
        out.into_iter().map(|i| Colour(i as u32)).collect()
    }

    /// `P[I]` under the hard-core distribution, computed from the recursion's
    /// conditional laws. Zero when `set` is not independent.
    pub fn probability(&mut self, set: &[Colour]) -> f64 {
        let nc = self.cover.n_colours();
        if set.iter().any(|x| x.index() >= nc) {
            return 0.0;
        }
        let chosen = BitSet::from_iter(nc, set.iter().map(|x| x.index()));
        if chosen.len() != set.len() {
            return 0.0;
        }
        let (vs, alive) = (self.all_vertices(), self.all_colours());
        self.probability_of(&vs, &alive, &chosen)
    }

    /// For every top-level component with an edge, the law of the colours
    /// chosen on its longest path.
    pub fn path_marginals(&mut self) -> Vec<PathMarginal> {
        let (vs, alive) = (self.all_vertices(), self.all_colours());
        let comps = self.components_of(&vs);
        let mut out = Vec::new();
        for c in comps.iter() {
            if c.len() < 2 {
                continue;
            }
            let alive_c = self.alive_on(c, &alive);
            let br = self.branching(c, &alive_c);
            out.push(PathMarginal {
                path: br.path.as_ref().clone(),
                outcomes: br
                    .options
                    .iter()
                    .map(|o| {
                        (
                            o.chosen.iter().map(|&i| Colour(i as u32)).collect(),
                            o.weight / br.total,
                        )
                    })
                    .collect(),
            });
        }
        out
    }

    /// Number of memoised branchings; useful for cost accounting.
    pub fn memo_size(&self) -> usize {
        self.branchings.len()
    }

    fn alive_on(&self, vs: &BitSet, alive: &BitSet) -> BitSet {
        let mut lists = BitSet::new(self.cover.n_colours());
        for v in vs.iter() {
            lists.union_with(&self.vertex_lists[v]);
        }
        lists.intersect_with(alive);
        lists
    }

    fn components_of(&mut self, vs: &BitSet) -> Rc<Vec<BitSet>> {
        if let Some(c) = self.components.get(vs) {
            return Rc::clone(c);
        }
        let mut left = vs.clone();
        let mut comps = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = BitSet::new(self.cover.base().n());
            let mut stack = vec![start];
            comp.insert(start);
            left.remove(start);
            while let Some(v) = stack.pop() {
                for w in self.vertex_adj[v].intersection(&left).iter() {
                    left.remove(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            comps.push(comp);
        }
        let comps = Rc::new(comps);
        self.components.insert(vs.clone(), Rc::clone(&comps));
        comps
    }

    fn longest_path_of(&mut self, comp: &BitSet) -> Rc<Vec<Vertex>> {
        if let Some(p) = self.paths.get(comp) {
            return Rc::clone(p);
        }
        let vertices: Vec<Vertex> = comp.iter().collect();
        let sub = self.cover.base().induced_subgraph(&vertices);
        let local = graph::longest_path(&sub.graph).expect("component is connected and nonempty");
        let path = Rc::new(local.into_iter().map(|v| sub.host[v]).collect::<Vec<_>>());
        debug_assert!(
            path.len() + 2 <= self.k,
            "longest path too long for k={}",
            self.k
        );
        self.paths.insert(comp.clone(), Rc::clone(&path));
        path
    }

    fn z(&mut self, vs: &BitSet, alive: &BitSet) -> f64 {
        let comps = self.components_of(vs);
        let mut z = 1.0;
        for c in comps.iter() {
            z *= self.component_z(c, alive);
        }
        z
    }

    fn component_z(&mut self, c: &BitSet, alive: &BitSet) -> f64 {
        let alive_c = self.alive_on(c, alive);
        if c.len() == 1 {
            1.0 + self.lambda * alive_c.len() as f64
        } else {
            self.branching(c, &alive_c).total
        }
    }

    fn branching(&mut self, c: &BitSet, alive_c: &BitSet) -> Rc<Branching> {
        let key = (c.clone(), alive_c.clone());
        if let Some(b) = self.branchings.get(&key) {
            return Rc::clone(b);
        }
        let path = self.longest_path_of(c);
        let mut rest = c.clone();
        let mut path_colours = BitSet::new(self.cover.n_colours());
        for &v in path.iter() {
            rest.remove(v);
            path_colours.union_with(&self.vertex_lists[v]);
        }
        let mut base_alive = alive_c.clone();
        base_alive.difference_with(&path_colours);

        let mut sets = Vec::new();
        self.independent_on_path(&path, 0, alive_c, &mut SmallVec::new(), &mut sets);

        let mut options = Vec::with_capacity(sets.len());
        let mut total = 0.0;
        for chosen in sets {
            let mut alive_after = base_alive.clone();
            for &x in &chosen {
                alive_after.difference_with(&self.conflicts[x]);
            }
            let weight = self.lambda.powi(chosen.len() as i32) * self.z(&rest, &alive_after);
            total += weight;
            options.push(PathOption {
                chosen,
                alive_after,
                weight,
            });
        }
        let br = Rc::new(Branching {
            path,
            rest,
            options,
            total,
        });
        self.branchings.insert(key, Rc::clone(&br));
        br
    }

    /// All independent sets of the cover restricted to the alive colours of
    /// `path[i..]`, extending `current`.
    fn independent_on_path(
        &self,
        path: &[Vertex],
        i: usize,
        alive: &BitSet,
        current: &mut SmallVec<[usize; 4]>,
        out: &mut Vec<SmallVec<[usize; 4]>>,
    ) {
        if i == path.len() {
            out.push(current.clone());
            return;
        }
        self.independent_on_path(path, i + 1, alive, current, out);
        for x in self.vertex_lists[path[i]].intersection(alive).iter() {
            if current.iter().all(|&y| !self.conflicts[x].contains(y)) {
                current.push(x);
                self.independent_on_path(path, i + 1, alive, current, out);
                current.pop();
            }
        }
    }

    fn sample_into<R: Rng + ?Sized>(
        &mut self,
        vs: &BitSet,
        alive: &BitSet,
        rng: &mut R,
        out: &mut Vec<usize>,
    ) {
        let comps = self.components_of(vs);
        for c in comps.iter() {
            let alive_c = self.alive_on(c, alive);
            if c.len() == 1 {
                let m = alive_c.len();
                if rng.gen::<f64>() * (1.0 + self.lambda * m as f64) >= 1.0 {
                    let pick = rng.gen_range(0..m);
                    out.push(alive_c.iter().nth(pick).expect("pick < m"));
                }
                continue;
            }
            let br = self.branching(c, &alive_c);
            let mut r = rng.gen::<f64>() * br.total;
            // falls back to the last option if rounding leaves r positive
            let mut idx = br.options.len() - 1;
            for (i, o) in br.options.iter().enumerate() {
                if r < o.weight {
                    idx = i;
                    break;
                }
                r -= o.weight;
            }
            let o = &br.options[idx];
            out.extend(o.chosen.iter().copied());
            let (rest, alive_after) = (br.rest.clone(), o.alive_after.clone());
            self.sample_into(&rest, &alive_after, rng, out);
        }
    }

    fn probability_of(&mut self, vs: &BitSet, alive: &BitSet, chosen: &BitSet) -> f64 {
        let comps = self.components_of(vs);
        let mut p = 1.0;
        for c in comps.iter() {
            let alive_c = self.alive_on(c, alive);
            let mut lists = BitSet::new(self.cover.n_colours());
            for v in c.iter() {
                lists.union_with(&self.vertex_lists[v]);
            }
            let here = chosen.intersection(&lists);
            if !here.intersection(&alive_c).eq(&here) {
                return 0.0;
            }
            if c.len() == 1 {
                let m = alive_c.len() as f64;
                p *= match here.len() {
                    0 => 1.0 / (1.0 + self.lambda * m),
                    1 => self.lambda / (1.0 + self.lambda * m),
                    _ => return 0.0,
                };
                continue;
            }
            let br = self.branching(c, &alive_c);
            let mut on_path = BitSet::new(self.cover.n_colours());
            for &v in br.path.iter() {
                on_path.union_with(&self.vertex_lists[v]);
            }
            let want: SmallVec<[usize; 4]> = here.intersection(&on_path).iter().collect();
            let Some(o) = br.options.iter().find(|o| {
                let mut got = o.chosen.clone();
                got.sort_unstable();
                got == want
            }) else {
                return 0.0;
            };
            p *= o.weight / br.total;
            let (rest, alive_after) = (br.rest.clone(), o.alive_after.clone());
            p *= self.probability_of(&rest, &alive_after, chosen);
            if p == 0.0 {
                return 0.0;
            }
        }
        p
    }
}

/// `Z_H(λ)` for a cover of a `P_{k-1}`-free graph.
pub fn partition_function_pkfree(
    cover: &Cover,
    lambda: f64,
    k: usize,
) -> Result<f64, HardCoreError> {
    Ok(PkFreeSampler::new(cover, lambda, k)?.partition_function())
}

/// One exact hard-core sample from a cover of a `P_{k-1}`-free graph.
pub fn sample_hardcore<R: Rng + ?Sized>(
    cover: &Cover,
    lambda: f64,
    k: usize,
    rng: &mut R,
) -> Result<Vec<Colour>, HardCoreError> {
    Ok(PkFreeSampler::new(cover, lambda, k)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hardcore::{partition_function_bruteforce, HardCoreInstance};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute(c: &Cover, lambda: f64) -> f64 {
        partition_function_bruteforce(&HardCoreInstance::new(c, lambda).unwrap())
            .unwrap()
            .z
    }

    #[test]
    fn edgeless_base_with_k3() {
        let c = Cover::from_lists(Graph::empty(3), &[vec![1], vec![1, 2], vec![1, 2, 3]]).unwrap();
        let z = partition_function_pkfree(&c, 0.5, 3).unwrap();
        assert!((z - 1.5 * 2.0 * 2.5).abs() < 1e-12);
    }

    #[test]
    fn rejects_long_paths() {
        let c = Cover::from_lists(Graph::path(3), &vec![vec![1, 2]; 3]).unwrap();
        assert!(matches!(
            PkFreeSampler::new(&c, 1.0, 4),
            Err(HardCoreError::NotPathFree { k: 4 })
        ));
        assert!(PkFreeSampler::new(&c, 1.0, 5).is_ok());
    }

    #[test]
    fn matches_brute_force_on_triangle_and_star() {
        let tri = Cover::from_lists(Graph::complete(3), &vec![vec![1, 2]; 3]).unwrap();
        let star = Cover::from_lists(
            Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
            &[vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        for lambda in [0.2, 1.0, 3.0] {
            let z = partition_function_pkfree(&tri, lambda, 5).unwrap();
            assert!((z - brute(&tri, lambda)).abs() < 1e-9 * z);
            let z = partition_function_pkfree(&star, lambda, 5).unwrap();
            assert!((z - brute(&star, lambda)).abs() < 1e-9 * z);
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let c = Cover::from_lists(Graph::complete(3), &vec![vec![1, 2]; 3]).unwrap();
        let mut s = PkFreeSampler::new(&c, 0.7, 5).unwrap();
        let mut total = 0.0;
        for mask in 0u32..(1 << c.n_colours()) {
            let set: Vec<Colour> = (0..c.n_colours() as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(Colour)
                .collect();
            let p = s.probability(&set);
            if c.is_independent(&set) {
                let want = 0.7f64.powi(set.len() as i32) / s.partition_function();
                assert!((p - want).abs() < 1e-12);
            } else {
                assert_eq!(p, 0.0);
            }
            total += p;
        }
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn samples_are_independent_and_deterministic() {
        let c = Cover::from_lists(Graph::complete(4), &vec![vec![1, 2, 3]; 4]).unwrap();
        let mut s = PkFreeSampler::new(&c, 1.3, 6).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x = s.sample(&mut a);
            assert!(c.is_independent(&x));
            assert_eq!(x, s.sample(&mut b));
        }
    }

    #[test]
    fn path_marginals_are_distributions() {
        let c = Cover::from_lists(Graph::cycle(4), &vec![vec![1, 2]; 4]).unwrap();
        let mut s = PkFreeSampler::new(&c, 1.0, 6).unwrap();
        let m = s.path_marginals();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].path, vec![0, 1, 2, 3]);
        let total: f64 = m[0].outcomes.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

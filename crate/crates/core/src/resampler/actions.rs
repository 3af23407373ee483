//! The two resampling actions.

use rand::Rng;

use super::remove::select_removed_edges;
use super::ResampleError;
use crate::cover::{Colour, Cover, PartialColouring, Residual, Slot};
use crate::graph::{Edge, Vertex};
use crate::hardcore::PkFreeSampler;

/// What one `AddressB` call did.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AddressBStep {
    /// `R`, in host vertex ids.
    pub removed: Vec<Edge>,
    /// Neighbours left uncoloured, in the order the loop uncoloured them.
    pub uncoloured: Vec<Vertex>,
    pub coloured: usize,
}

/// `AddressB(u, σ)` applied in place to `state`.
///
/// Neighbours of `u` that are not uncoloured are blanked; the hard-core
/// model is sampled on the cover of the blank neighbourhood `F` after
/// `Remove`; then the edges of `F` are scanned in increasing order and, for
/// every edge `vw` (`v < w`) whose sampled colours still conflict, `v` is
/// marked uncoloured and loses its colour.
pub fn address_b_in_place<R: Rng + ?Sized>(
    state: &mut Residual<'_>,
    u: Vertex,
    k: usize,
    lambda: f64,
    rng: &mut R,
) -> Result<AddressBStep, ResampleError> {
    let cover = state.cover();
    debug_assert!(
        !state.sigma().is_coloured(u),
        "AddressB at a coloured vertex"
    );
    for &v in cover.base().neighbours(u) {
        if state.sigma().is_coloured(v) {
            state.set(v, Slot::Blank);
        }
    }
    let f_vertices: Vec<Vertex> = cover
        .base()
        .neighbours(u)
        .iter()
        .copied()
        .filter(|&v| state.sigma().is_blank(v))
        .collect();
    if f_vertices.is_empty() {
        return Ok(AddressBStep::default());
    }
    let f = cover.base().induced_subgraph(&f_vertices);
    let (removed_local, _) = select_removed_edges(&f.graph, k)?;
    let removed: Vec<Edge> = removed_local
        .iter()
        .map(|e| Edge::new(f.host[e.lo()], f.host[e.hi()]))
        .collect();
    let (hat, map) = cover.restrict(&f_vertices, |x| state.is_alive(x), &removed);
    let mut sampler = PkFreeSampler::new(&hat, lambda, k)?;
    let mut chosen: Vec<Option<Colour>> = vec![None; f_vertices.len()];
    for x in sampler.sample(rng) {
        chosen[hat.owner(x)] = Some(map.host_colour(x));
    }

    let mut step = AddressBStep {
        removed,
        ..AddressBStep::default()
    };
    // Edges of F in increasing order; local order agrees with host order.
    for e in f.graph.edges() {
        let (v, w) = (e.lo(), e.hi());
        if let (Some(x), Some(y)) = (chosen[v], chosen[w]) {
            if cover.are_adjacent(x, y) {
                let (hv, hw) = (f.host[v], f.host[w]);
                debug_assert!(step.removed.contains(&Edge::new(hv, hw)));
                state.set(hv, Slot::Uncoloured(Edge::new(hv, hw)));
                step.uncoloured.push(hv);
                chosen[v] = None;
            }
        }
    }
    for (v, x) in chosen.iter().enumerate() {
        if let Some(x) = *x {
            state.set(f.host[v], Slot::Coloured(x));
            step.coloured += 1;
        }
    }
    debug_assert!(step.uncoloured.len() <= step.removed.len());
    debug_assert!(local_validity(state, u).is_ok());
    Ok(step)
}

/// Checks that no chosen colour on `N[u]` conflicts with another chosen colour.
fn local_validity(state: &Residual<'_>, u: Vertex) -> Result<(), Vertex> {
    let cover = state.cover();
    let sigma = state.sigma();
    let mut around = cover.base().neighbours(u).to_vec();
    around.push(u);
    for v in around {
        if let Slot::Coloured(x) = sigma.get(v) {
            if cover
                .partners(x)
                .iter()
                .any(|&y| sigma.get(cover.owner(y)) == Slot::Coloured(y))
            {
                return Err(v);
            }
        }
    }
    Ok(())
}

/// Resamples `σ(u)` for a flaw `U_u^e`: blank with probability
/// `1/(1+|L_σ(u)|λ)`, otherwise a uniform colour of `L_σ(u)`.
pub fn address_u_in_place<R: Rng + ?Sized>(
    state: &mut Residual<'_>,
    u: Vertex,
    lambda: f64,
    rng: &mut R,
) -> Slot {
    debug_assert!(matches!(state.sigma().get(u), Slot::Uncoloured(_)));
    let alive: Vec<Colour> = state.list(u).collect();
    let m = alive.len() as f64;
    let slot = if rng.gen::<f64>() * (1.0 + m * lambda) < 1.0 {
        Slot::Blank
    } else {
        Slot::Coloured(alive[rng.gen_range(0..alive.len())])
    };
    state.set(u, slot);
    slot
}

/// `AddressB` on a copy of `sigma`.
pub fn address_b<R: Rng + ?Sized>(
    cover: &Cover,
    sigma: &PartialColouring,
    u: Vertex,
    k: usize,
    lambda: f64,
    rng: &mut R,
) -> Result<(PartialColouring, AddressBStep), ResampleError> {
    let mut state = Residual::new(cover, sigma.clone());
    let step = address_b_in_place(&mut state, u, k, lambda, rng)?;
    Ok((state.into_sigma(), step))
}

/// The `U`-flaw action on a copy of `sigma`.
pub fn address_u<R: Rng + ?Sized>(
    cover: &Cover,
    sigma: &PartialColouring,
    u: Vertex,
    lambda: f64,
    rng: &mut R,
) -> PartialColouring {
    let mut state = Residual::new(cover, sigma.clone());
    address_u_in_place(&mut state, u, lambda, rng);
    state.into_sigma()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_neighbourhood_changes_nothing() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let c = Cover::from_lists(g, &vec![vec![1, 2]; 3]).unwrap();
        let sigma = PartialColouring::from_slots(vec![
            Slot::Blank,
            Slot::Uncoloured(Edge::new(0, 1)),
            Slot::Uncoloured(Edge::new(0, 2)),
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (tau, step) = address_b(&c, &sigma, 0, 3, 1.0, &mut rng).unwrap();
        assert_eq!(tau, sigma);
        assert_eq!(step, AddressBStep::default());
    }

    #[test]
    fn edgeless_neighbourhood_keeps_every_sample() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = Cover::from_lists(g, &vec![vec![1, 2, 3]; 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (tau, step) =
                address_b(&c, &PartialColouring::all_blank(4), 0, 3, 2.0, &mut rng).unwrap();
            assert!(step.uncoloured.is_empty());
            assert!(tau.uncoloured_vertices().is_empty());
            assert_eq!(tau.get(0), Slot::Blank);
            tau.validate(&c).unwrap();
        }
    }

    #[test]
    fn triangle_neighbourhood_uncolours_lower_endpoint() {
        // K4 with hub 0: F is a triangle, and k = 3 removes all three edges.
        let c = Cover::from_lists(Graph::complete(4), &vec![vec![1]; 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut saw = false;
        for _ in 0..200 {
            let (tau, step) =
                address_b(&c, &PartialColouring::all_blank(4), 0, 3, 5.0, &mut rng).unwrap();
            tau.validate(&c).unwrap();
            assert_eq!(step.removed.len(), 3);
            assert!(tau.coloured_vertices().len() <= 1);
            for v in step.uncoloured {
                saw = true;
                match tau.get(v) {
                    Slot::Uncoloured(e) => assert_eq!(e.lo(), v),
                    s => panic!("vertex {v} is {s:?}"),
                }
            }
        }
        assert!(saw);
    }

    #[test]
    fn u_action_frequencies() {
        let g = Graph::complete(2);
        let c = Cover::from_lists(g, &[vec![1, 2, 3, 4], vec![9]]).unwrap();
        let sigma =
            PartialColouring::from_slots(vec![Slot::Uncoloured(Edge::new(0, 1)), Slot::Blank]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20_000;
        let blanks = (0..n)
            .filter(|_| address_u(&c, &sigma, 0, 0.5, &mut rng).get(0) == Slot::Blank)
            .count();
        assert!((blanks as f64 / n as f64 - 1.0 / 3.0).abs() < 0.015);
    }

    #[test]
    fn u_action_with_empty_list_blanks() {
        let c = Cover::from_lists(Graph::complete(2), &[vec![1], vec![1]]).unwrap();
        let sigma = PartialColouring::from_slots(vec![
            Slot::Uncoloured(Edge::new(0, 1)),
            Slot::Coloured(Colour(1)),
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            assert_eq!(address_u(&c, &sigma, 0, 3.0, &mut rng).get(0), Slot::Blank);
        }
    }
}

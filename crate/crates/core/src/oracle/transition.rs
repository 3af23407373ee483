use std::collections::BTreeMap;

use super::paths::oracle_path_copies;
use super::{cap, check_fugacity, OracleError};
use crate::cover::{Colour, Cover, PartialColouring, Slot};
use crate::graph::{Edge, Vertex};

pub const TRANSITION_CAP: usize = 12;

/// Exact law of the state after `AddressB(u, σ)`.
///
/// Rebuilds every stage from the definitions: the blanked neighbourhood,
/// the surviving colours, the removed base edges (the least edge of each
/// lexicographically ordered `P_{k-1}` copy that no earlier choice already
/// hits), every independent set of the pruned cover with weight `λ^{|J|}`,
/// and the uncolouring loop that repeatedly takes the lowest conflicting
/// edge `vw` and uncolours `v`.
pub fn address_b_transition_oracle(
    cover: &Cover,
    sigma: &PartialColouring,
    u: Vertex,
    k: usize,
    lambda: f64,
) -> Result<BTreeMap<PartialColouring, f64>, OracleError> {
    check_fugacity(lambda)?;
    let g = cover.base();
    if sigma.len() != g.n() || u >= g.n() {
        return Err(OracleError::Domain(
            "colouring does not match the cover".into(),
        ));
    }
    let mut slots: Vec<Slot> = sigma.slots().to_vec();
    for &v in g.neighbours(u) {
        if matches!(slots[v], Slot::Coloured(_)) {
            slots[v] = Slot::Blank;
        }
    }
    let f: Vec<Vertex> = g
        .neighbours(u)
        .iter()
        .copied()
        .filter(|&v| slots[v] == Slot::Blank)
        .collect();

    let taken: Vec<Colour> = slots
        .iter()
        .filter_map(|s| match s {
            Slot::Coloured(x) => Some(*x),
            _ => None,
        })
        .collect();
    let alive: Vec<Colour> = f
        .iter()
        .flat_map(|&v| cover.list(v).iter().copied())
        .filter(|x| !taken.iter().any(|&y| cover.partners(*x).contains(&y)))
        .collect();
    cap(
        "colours in the neighbourhood cover",
        alive.len(),
        TRANSITION_CAP,
    )?;

    // G[F] relabelled 0..|F| in increasing host order.
    let local = crate::graph::Graph::from_edges(
        f.len(),
        (0..f.len())
            .flat_map(|i| (i + 1..f.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| g.has_edge(f[i], f[j])),
    )
    .expect("simple");
    let mut removed: Vec<Edge> = Vec::new();
    for copy in oracle_path_copies(&local, k)? {
        let copy_edges: Vec<Edge> = copy
            .windows(2)
            .map(|w| Edge::new(f[w[0]], f[w[1]]))
            .collect();
        if !copy_edges.iter().any(|e| removed.contains(e)) {
            removed.push(*copy_edges.iter().min().expect("copy has an edge"));
        }
    }

    let conflict = |x: Colour, y: Colour| {
        let (a, b) = (cover.owner(x), cover.owner(y));
        a == b || (cover.partners(x).contains(&y) && !removed.contains(&Edge::new(a, b)))
    };
    let mut sets: Vec<Vec<Colour>> = Vec::new();
    enumerate(&alive, 0, &mut Vec::new(), &conflict, &mut sets);
    let z: f64 = sets.iter().map(|s| lambda.powi(s.len() as i32)).sum();

    let mut law: BTreeMap<PartialColouring, f64> = BTreeMap::new();
    for j in sets {
        let weight = lambda.powi(j.len() as i32) / z;
        let mut chosen: BTreeMap<Vertex, Colour> = j.iter().map(|&x| (cover.owner(x), x)).collect();
        let mut tau = slots.clone();
        loop {
            let clash = local
                .edges()
                .iter()
                .map(|e| (f[e.lo()], f[e.hi()]))
                .find(|(v, w)| match (chosen.get(v), chosen.get(w)) {
                    (Some(&x), Some(&y)) => cover.partners(x).contains(&y),
                    _ => false,
                });
            match clash {
                Some((v, w)) => {
                    tau[v] = Slot::Uncoloured(Edge::new(v, w));
                    chosen.remove(&v);
                }
                None => break,
            }
        }
        for (v, x) in chosen {
            tau[v] = Slot::Coloured(x);
        }
        *law.entry(PartialColouring::from_slots(tau)).or_insert(0.0) += weight;
    }
    Ok(law)
}

fn enumerate<C: Fn(Colour, Colour) -> bool>(
    colours: &[Colour],
    i: usize,
    current: &mut Vec<Colour>,
    conflict: &C,
    out: &mut Vec<Vec<Colour>>,
) {
    if i == colours.len() {
        out.push(current.clone());
        return;
    }
    enumerate(colours, i + 1, current, conflict, out);
    let x = colours[i];
    if current.iter().all(|&y| !conflict(x, y)) {
        current.push(x);
        enumerate(colours, i + 1, current, conflict, out);
        current.pop();
    }
}

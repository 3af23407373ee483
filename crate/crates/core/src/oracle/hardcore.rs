use std::collections::BTreeMap;

use super::{cap, check_fugacity, OracleError};
use crate::cover::{Colour, Cover};
use crate::graph::Graph;

pub const HARDCORE_CAP: usize = 20;

/// The hard-core distribution on the independent sets of `cover`, by listing
/// every independent set (at most one colour per vertex, no cross edge).
/// Keys are sorted colour sets.
pub fn exact_hardcore_distribution(
    cover: &Cover,
    lambda: f64,
) -> Result<BTreeMap<Vec<Colour>, f64>, OracleError> {
    check_fugacity(lambda)?;
    cap("number of colours", cover.n_colours(), HARDCORE_CAP)?;
    let colours: Vec<Colour> = cover.colours().collect();
    let mut weights = Vec::new();
    let mut current = Vec::new();
    list_sets(cover, &colours, 0, &mut current, &mut weights);
    let z: f64 = weights
        .iter()
        .map(|s: &Vec<Colour>| lambda.powi(s.len() as i32))
        .sum();
    Ok(weights
        .into_iter()
        .map(|s| {
            let p = lambda.powi(s.len() as i32) / z;
            (s, p)
        })
        .collect())
}

fn list_sets(
    cover: &Cover,
    colours: &[Colour],
    i: usize,
    current: &mut Vec<Colour>,
    out: &mut Vec<Vec<Colour>>,
) {
    if i == colours.len() {
        out.push(current.clone());
        return;
    }
    list_sets(cover, colours, i + 1, current, out);
    let x = colours[i];
    let clash = current
        .iter()
        .any(|&y| cover.owner(y) == cover.owner(x) || cover.partners(x).contains(&y));
    if !clash {
        current.push(x);
        list_sets(cover, colours, i + 1, current, out);
        current.pop();
    }
}

/// `(Z, λZ')` of the hard-core model on the vertices of `g`, summing over
/// every independent vertex set.
pub fn graph_partition_sums(g: &Graph, lambda: f64) -> Result<(f64, f64), OracleError> {
    check_fugacity(lambda)?;
    cap("number of vertices", g.n(), 24)?;
    let n = g.n();
    let mut z = 0.0;
    let mut dz = 0.0;
    for mask in 0u32..(1u32 << n) {
        let independent = g
            .edges()
            .iter()
            .all(|e| mask & (1 << e.lo()) == 0 || mask & (1 << e.hi()) == 0);
        if independent {
            let size = mask.count_ones() as i32;
            let w = lambda.powi(size);
            z += w;
            dz += size as f64 * w;
        }
    }
    Ok((z, dz))
}

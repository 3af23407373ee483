use super::{cap, OracleError};
use crate::graph::{Graph, Vertex};

pub const LIST_COLOURING_CAP: usize = 30;

/// A proper colouring from `lists` if one exists, `None` once the search is
/// exhausted. Backtracks on the uncoloured vertex with the fewest colours
/// left, lowest index first.
pub fn exact_list_colouring(
    g: &Graph,
    lists: &[Vec<u64>],
) -> Result<Option<Vec<u64>>, OracleError> {
    cap("number of vertices", g.n(), LIST_COLOURING_CAP)?;
    if lists.len() != g.n() {
        return Err(OracleError::Domain(format!(
            "{} lists for {} vertices",
            lists.len(),
            g.n()
        )));
    }
    let mut colour: Vec<Option<u64>> = vec![None; g.n()];
    Ok(if search(g, lists, &mut colour) {
        Some(colour.into_iter().map(|c| c.expect("complete")).collect())
    } else {
        None
    })
}

fn options(g: &Graph, lists: &[Vec<u64>], colour: &[Option<u64>], v: Vertex) -> Vec<u64> {
    let mut out: Vec<u64> = lists[v]
        .iter()
        .copied()
        .filter(|&c| g.neighbours(v).iter().all(|&w| colour[w] != Some(c)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn search(g: &Graph, lists: &[Vec<u64>], colour: &mut [Option<u64>]) -> bool {
    let next = (0..g.n())
        .filter(|&v| colour[v].is_none())
        .map(|v| (options(g, lists, colour, v), v))
        .min_by_key(|(opts, v)| (opts.len(), *v));
    let Some((opts, v)) = next else {
        return true;
    };
    for c in opts {
        colour[v] = Some(c);
        if search(g, lists, colour) {
            return true;
        }
    }
    colour[v] = None;
    false
}

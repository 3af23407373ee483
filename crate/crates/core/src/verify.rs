//! Independent checker for list colourings, working on naturals only.

use std::fmt;

use serde::Serialize;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Monochromatic { edge: Edge, colour: u64 },
    OutsideList { vertex: Vertex, colour: u64 },
    WrongLength { expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Monochromatic { edge, colour } => {
                write!(f, "edge {edge} has both ends coloured {colour}")
            }
            Violation::OutsideList { vertex, colour } => {
                write!(
                    f,
                    "vertex {vertex} has colour {colour}, which is not in its list"
                )
            }
            Violation::WrongLength { expected, got } => {
                write!(f, "colouring covers {got} vertices, graph has {expected}")
            }
        }
    }
}

/// Every violation of "proper and within lists", edges in increasing order.
pub fn check_list_colouring(g: &Graph, lists: &[Vec<u64>], colouring: &[u64]) -> Vec<Violation> {
    if colouring.len() != g.n() || lists.len() != g.n() {
        return vec![Violation::WrongLength {
            expected: g.n(),
            got: colouring.len().min(lists.len()),
        }];
    }
    let mut out: Vec<Violation> = (0..g.n())
        .filter(|&v| !lists[v].contains(&colouring[v]))
        .map(|v| Violation::OutsideList {
            vertex: v,
            colour: colouring[v],
        })
        .collect();
    out.extend(
        g.edges()
            .iter()
            .filter(|e| colouring[e.lo()] == colouring[e.hi()])
            .map(|&edge| Violation::Monochromatic {
                edge,
                colour: colouring[edge.lo()],
            }),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let g = Graph::cycle(3);
        let lists = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
        assert!(check_list_colouring(&g, &lists, &[1, 2, 3]).is_empty());
        assert_eq!(
            check_list_colouring(&g, &lists, &[1, 3, 1]),
            vec![Violation::Monochromatic {
                edge: Edge::new(0, 2),
                colour: 1
            }]
        );
        assert_eq!(
            check_list_colouring(&g, &lists, &[3, 3, 1]),
            vec![
                Violation::OutsideList {
                    vertex: 0,
                    colour: 3
                },
                Violation::Monochromatic {
                    edge: Edge::new(0, 1),
                    colour: 3
                },
            ]
        );
        assert!(matches!(
            check_list_colouring(&g, &lists, &[1, 2])[..],
            [Violation::WrongLength {
                expected: 3,
                got: 2
            }]
        ));
    }
}

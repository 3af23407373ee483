//! Exhaustive ground truth for the probabilistic and combinatorial parts.
//!
//! Nothing here calls into the sampler, the occupancy engine or the
//! resampler; only the `Graph` and `Cover` types are shared. Everything is
//! exponential and guarded by hard caps.

mod colouring;
mod graphs;
mod hardcore;
mod paths;
mod transition;

pub use colouring::{exact_list_colouring, LIST_COLOURING_CAP};
pub use graphs::{connected_graphs_on, graphs_on, max_average_degree, SMALL_GRAPH_CAP};
pub use hardcore::{exact_hardcore_distribution, graph_partition_sums, HARDCORE_CAP};
pub use paths::{
    min_edges_to_pkfree, min_edges_to_pkfree_with_cap, oracle_path_copies, MIN_EDGES_CAP,
};
pub use transition::{address_b_transition_oracle, TRANSITION_CAP};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("{what} is {size}, above the oracle cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("{0}")]
    Domain(String),
}

fn cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        Err(OracleError::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

fn check_fugacity(lambda: f64) -> Result<(), OracleError> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(OracleError::Domain(format!(
            "fugacity must be positive and finite (got {lambda})"
        )))
    }
}

//! Phase one: flaw-driven resampling from the all-blank partial colouring to
//! a flawless one.

mod actions;
mod params;
mod phase1;
mod remove;

use thiserror::Error;

use crate::graph::GraphError;
use crate::hardcore::HardCoreError;

pub use actions::{address_b, address_b_in_place, address_u, address_u_in_place, AddressBStep};
pub use params::{derive_params, manual_params, r_value, Hypothesis, Mode, Params};
pub use phase1::{run_phase1, Phase1Outcome, Phase1Run, Phase1Stats};
pub use remove::{remove_edges, select_removed_edges, RemoveResult};

#[derive(Debug, Error)]
pub enum ResampleError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error(transparent)]
    Sampler(#[from] HardCoreError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

//! List colouring of locally sparse graphs by flaw resampling, with an exact
//! hard-core sampler as the resampling oracle.
//!
//! The pipeline: build a [`cover::Cover`] from a graph and its lists, run
//! [`resampler::run_phase1`] to reach a partial colouring with every residual
//! list long and every residual degree small, then [`finisher::run_phase2`] to
//! complete it.

pub mod bitset;
pub mod cover;
pub mod finisher;
pub mod generate;
pub mod graph;
pub mod hardcore;
pub mod oracle;
pub mod pipeline;
pub mod resampler;
pub mod verify;

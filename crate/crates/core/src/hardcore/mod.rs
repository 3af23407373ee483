//! The hard-core model on covers and graphs: partition functions, the exact
//! sampler for covers of path-free graphs, and local-occupancy certificates.

mod bruteforce;
mod lambert;
mod occupancy;
mod pkfree;

use thiserror::Error;

use crate::cover::Cover;
use crate::graph::{GraphError, Vertex};

pub use bruteforce::{
    evaluate_exact, graph_independence_polynomial, independence_polynomial,
    partition_function_bruteforce, PartitionSums, DEFAULT_BRUTE_FORCE_CAP,
};
pub use lambert::lambert_w;
pub use occupancy::{
    check_strong_local_occupancy, derive_occupancy_certificate, log_z_lower_bounds,
    occupancy_fraction, DerivedCertificate, LogZBounds, OccupancyCertificate, OccupancyCheck,
    OccupancyChecker, OccupancyWitness, DEFAULT_NEIGHBOURHOOD_CAP,
};
pub use pkfree::{partition_function_pkfree, sample_hardcore, PathMarginal, PkFreeSampler};

#[derive(Debug, Error, PartialEq)]
pub enum HardCoreError {
    #[error("fugacity must be positive and finite (got {0})")]
    Fugacity(f64),
    #[error("{what} has size {size}, above the exhaustive cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("base graph contains a path on {} vertices", .k - 1)]
    NotPathFree { k: usize },
    #[error("Lambert W is undefined below -1/e (got {0})")]
    LambertDomain(f64),
    #[error("certificate parameters out of domain: {0}")]
    CertificateDomain(String),
    #[error("closed-form identity failed: {0}")]
    IdentityMismatch(String),
    #[error("average degree {actual} exceeds the bound {bound}")]
    AverageDegree { actual: f64, bound: f64 },
    #[error("neighbourhood of vertex {0} is too large for exhaustive checking")]
    NeighbourhoodCap(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn check_lambda(lambda: f64) -> Result<f64, HardCoreError> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(lambda)
    } else {
        Err(HardCoreError::Fugacity(lambda))
    }
}

/// A cover together with a fugacity.
#[derive(Clone, Copy, Debug)]
pub struct HardCoreInstance<'a> {
    pub cover: &'a Cover,
    pub lambda: f64,
}

impl<'a> HardCoreInstance<'a> {
    pub fn new(cover: &'a Cover, lambda: f64) -> Result<Self, HardCoreError> {
        Ok(HardCoreInstance {
            cover,
            lambda: check_lambda(lambda)?,
        })
    }
}

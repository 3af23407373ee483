//! Occupancy fractions, local-occupancy certificates and the sparse lower
//! bounds on `log Z`.

use std::collections::HashMap;

use serde::Serialize;

use super::bruteforce::{graph_independence_polynomial, PartitionSums, DEFAULT_BRUTE_FORCE_CAP};
use super::{check_lambda, lambert_w, HardCoreError};
use crate::graph::{Edge, Graph, Vertex};

pub const DEFAULT_NEIGHBOURHOOD_CAP: usize = 8;

const IDENTITY_TOLERANCE: f64 = 1e-9;
const CHECK_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OccupancyCertificate {
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl OccupancyCertificate {
    pub fn new(beta: f64, gamma: f64, lambda: f64) -> Result<Self, HardCoreError> {
        let lambda = check_lambda(lambda)?;
        if !(beta > 0.0 && gamma > 0.0 && beta.is_finite() && gamma.is_finite()) {
            return Err(HardCoreError::CertificateDomain(format!(
                "beta={beta}, gamma={gamma}"
            )));
        }
        Ok(OccupancyCertificate {
            beta,
            gamma,
            lambda,
        })
    }

    /// Left-hand side of the local-occupancy inequality for one `F`.
    pub fn lhs(&self, sums: PartitionSums) -> f64 {
        let l = self.lambda;
        self.beta * (l / (1.0 + l)) / sums.z + self.gamma * sums.lambda_z_prime / sums.z
    }

    /// The occupancy-fraction lower bound `1/(β+γΔ)`.
    pub fn fraction_bound(&self, max_degree: usize) -> f64 {
        1.0 / (self.beta + self.gamma * max_degree as f64)
    }
}

/// The optimised certificate for neighbourhoods of average degree at most `a`
/// and the quantities used to check it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivedCertificate {
    pub certificate: OccupancyCertificate,
    pub a: f64,
    pub d: f64,
    /// `D = d(1+λ)^a log(1+λ)`.
    pub big_d: f64,
    pub w: f64,
    pub beta_plus_gamma_d: f64,
    /// `((1+λ)/λ)·D/W(D)`.
    pub closed_form_sum: f64,
    pub stationary_y: f64,
    pub g_at_stationary: f64,
}

impl DerivedCertificate {
    /// `g(y) = (λ/(1+λ))(β(1+λ)^{-y} + γy(1+λ)^{-a})`.
    pub fn g(&self, y: f64) -> f64 {
        let c = &self.certificate;
        let l1 = 1.0 + c.lambda;
        (c.lambda / l1) * (c.beta * l1.powf(-y) + c.gamma * y * l1.powf(-self.a))
    }
}

fn relative_gap(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

pub fn derive_occupancy_certificate(
    a: f64,
    d: f64,
    lambda: f64,
) -> Result<DerivedCertificate, HardCoreError> {
    let lambda = check_lambda(lambda)?;
    if !(a >= 0.0 && a.is_finite()) {
        return Err(HardCoreError::CertificateDomain(format!("a={a}")));
    }
    let l1 = 1.0 + lambda;
    let log1 = lambda.ln_1p();
    let big_d = d * l1.powf(a) * log1;
    if !(big_d > 0.0 && big_d.is_finite()) {
        return Err(HardCoreError::CertificateDomain(format!(
            "D={big_d} (d={d})"
        )));
    }
    let w = lambert_w(big_d)?;
    let gamma = (l1 / lambda) * l1.powf(a) * log1 / (1.0 + w);
    // β = γ(1+λ)^{E-a}/(e log(1+λ)) with E = (1+λ)^{1+a}/(γλ), in log space
    let exponent = l1.powf(1.0 + a) / (gamma * lambda);
    let beta = (gamma.ln() + (exponent - a) * log1 - 1.0 - log1.ln()).exp();

    let beta_closed = (l1 / lambda) * big_d / (w * (1.0 + w));
    if relative_gap(beta, beta_closed) > IDENTITY_TOLERANCE {
        return Err(HardCoreError::IdentityMismatch(format!(
            "beta={beta} but closed form gives {beta_closed}"
        )));
    }
    let beta_plus_gamma_d = beta + gamma * d;
    let closed_form_sum = (l1 / lambda) * big_d / w;
    if relative_gap(beta_plus_gamma_d, closed_form_sum) > IDENTITY_TOLERANCE {
        return Err(HardCoreError::IdentityMismatch(format!(
            "beta+gamma*d={beta_plus_gamma_d} but closed form gives {closed_form_sum}"
        )));
    }
    let mut out = DerivedCertificate {
        certificate: OccupancyCertificate::new(beta, gamma, lambda)?,
        a,
        d,
        big_d,
        w,
        beta_plus_gamma_d,
        closed_form_sum,
        stationary_y: w / log1,
        g_at_stationary: 0.0,
    };
    out.g_at_stationary = out.g(out.stationary_y);
    if (out.g_at_stationary - 1.0).abs() > IDENTITY_TOLERANCE {
        return Err(HardCoreError::IdentityMismatch(format!(
            "g(y*)={} instead of 1",
            out.g_at_stationary
        )));
    }
    Ok(out)
}

/// A subgraph `F` of `G[N(u)]` on which the inequality fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OccupancyWitness {
    pub vertex: Vertex,
    pub f_vertices: Vec<Vertex>,
    pub f_edges: Vec<Edge>,
    pub lhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OccupancyCheck {
    pub holds: bool,
    pub subgraphs_checked: u64,
    /// Smallest left-hand side seen.
    pub min_lhs: f64,
    pub witness: Option<OccupancyWitness>,
}

/// Exhaustive checker for strong local occupancy, caching `(Z, λZ')` of small
/// labelled graphs across calls at one fugacity.
pub struct OccupancyChecker {
    lambda: f64,
    cap: usize,
    cache: HashMap<(u8, u32), PartitionSums>,
}

impl OccupancyChecker {
    pub fn new(lambda: f64, cap: usize) -> Result<Self, HardCoreError> {
        Ok(OccupancyChecker {
            lambda: check_lambda(lambda)?,
            cap: cap.min(DEFAULT_NEIGHBOURHOOD_CAP),
            cache: HashMap::new(),
        })
    }

    /// `(Z, λZ')` of the graph on `s` vertices whose edges are the set bits of
    /// `mask` (pair `(i, j)`, `i < j`, at bit `j(j-1)/2 + i`).
    fn sums(&mut self, s: usize, mask: u32) -> PartitionSums {
        let lambda = self.lambda;
        *self.cache.entry((s as u8, mask)).or_insert_with(|| {
            let mut adj = [0u32; DEFAULT_NEIGHBOURHOOD_CAP];
            for j in 1..s {
                for i in 0..j {
                    if mask >> (j * (j - 1) / 2 + i) & 1 == 1 {
                        adj[i] |= 1 << j;
                        adj[j] |= 1 << i;
                    }
                }
            }
            let mut counts = [0u64; DEFAULT_NEIGHBOURHOOD_CAP + 1];
            for set in 0u32..(1 << s) {
                let independent = (0..s).all(|v| set >> v & 1 == 0 || adj[v] & set == 0);
                if independent {
                    counts[set.count_ones() as usize] += 1;
                }
            }
            PartitionSums::from_polynomial(&counts[..=s], lambda)
        })
    }

    pub fn check(
        &mut self,
        g: &Graph,
        cert: &OccupancyCertificate,
    ) -> Result<OccupancyCheck, HardCoreError> {
        if (cert.lambda - self.lambda).abs() > 0.0 {
            return Err(HardCoreError::CertificateDomain(format!(
                "checker built for lambda={} but certificate has {}",
                self.lambda, cert.lambda
            )));
        }
        let mut result = OccupancyCheck {
            holds: true,
            subgraphs_checked: 0,
            min_lhs: f64::INFINITY,
            witness: None,
        };
        for u in 0..g.n() {
            let nb = g.neighbours(u);
            if nb.len() > self.cap {
                return Err(HardCoreError::NeighbourhoodCap(u));
            }
            for vmask in 1u32..(1 << nb.len()) {
                let verts: Vec<Vertex> = (0..nb.len())
                    .filter(|&i| vmask >> i & 1 == 1)
                    .map(|i| nb[i])
                    .collect();
                let s = verts.len();
                let mut local_edges = Vec::new();
                for j in 1..s {
                    for i in 0..j {
                        if g.has_edge(verts[i], verts[j]) {
                            local_edges.push((i, j));
                        }
                    }
                }
                for emask in 0u32..(1 << local_edges.len()) {
                    let mut mask = 0u32;
                    for (b, &(i, j)) in local_edges.iter().enumerate() {
                        if emask >> b & 1 == 1 {
                            mask |= 1 << (j * (j - 1) / 2 + i);
                        }
                    }
                    let lhs = cert.lhs(self.sums(s, mask));
                    result.subgraphs_checked += 1;
                    result.min_lhs = result.min_lhs.min(lhs);
                    if lhs < 1.0 - CHECK_SLACK {
                        result.holds = false;
                        result.witness = Some(OccupancyWitness {
                            vertex: u,
                            f_vertices: verts.clone(),
                            f_edges: local_edges
                                .iter()
                                .enumerate()
                                .filter(|(b, _)| emask >> b & 1 == 1)
                                .map(|(_, &(i, j))| Edge::new(verts[i], verts[j]))
                                .collect(),
                            lhs,
                        });
                        return Ok(result);
                    }
                }
            }
        }
        Ok(result)
    }
}

/// Whether every nonempty subgraph `F` of every neighbourhood satisfies the
/// local-occupancy inequality for `cert`.
pub fn check_strong_local_occupancy(
    g: &Graph,
    cert: &OccupancyCertificate,
    exhaustive_cap: usize,
) -> Result<OccupancyCheck, HardCoreError> {
    OccupancyChecker::new(cert.lambda, exhaustive_cap)?.check(g, cert)
}

/// Exact `E|I|/n` under the hard-core model on `g`.
pub fn occupancy_fraction(g: &Graph, lambda: f64) -> Result<f64, HardCoreError> {
    let lambda = check_lambda(lambda)?;
    if g.n() == 0 {
        return Err(HardCoreError::Graph(crate::graph::GraphError::Empty));
    }
    let poly = graph_independence_polynomial(g, DEFAULT_BRUTE_FORCE_CAP)?;
    let sums = PartitionSums::from_polynomial(&poly, lambda);
    Ok(sums.mean_size() / g.n() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogZBounds {
    pub log_z: f64,
    /// `(y/a)(1-(1+λ)^{-a})`, read as `y·log(1+λ)` when `a = 0`.
    pub sparse_bound: f64,
    /// `y·log(1+λ)(1-(a/2)log(1+λ))`.
    pub quadratic_bound: f64,
    pub mean_size: f64,
    /// `(λ/(1+λ))·y·(1+λ)^{-a}`.
    pub mean_bound: f64,
}

pub fn log_z_lower_bounds(f: &Graph, lambda: f64, a: f64) -> Result<LogZBounds, HardCoreError> {
    let lambda = check_lambda(lambda)?;
    let y = f.n() as f64;
    if y == 0.0 {
        return Err(HardCoreError::Graph(crate::graph::GraphError::Empty));
    }
    let avg = 2.0 * f.m() as f64 / y;
    if !(a >= 0.0) || avg > a * (1.0 + 1e-12) {
        return Err(HardCoreError::AverageDegree {
            actual: avg,
            bound: a,
        });
    }
    let poly = graph_independence_polynomial(f, DEFAULT_BRUTE_FORCE_CAP)?;
    let sums = PartitionSums::from_polynomial(&poly, lambda);
    let log1 = lambda.ln_1p();
    let l1 = 1.0 + lambda;
    let sparse_bound = if a == 0.0 {
        y * log1
    } else {
        // 1-(1+λ)^{-a} = -expm1(-a·log(1+λ))
        (y / a) * -(-a * log1).exp_m1()
    };
    Ok(LogZBounds {
        log_z: sums.z.ln(),
        sparse_bound,
        quadratic_bound: y * log1 * (1.0 - a / 2.0 * log1),
        mean_size: sums.mean_size(),
        mean_bound: (lambda / l1) * y * l1.powf(-a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn trivial_single_vertex_lhs() {
        // triangle-free: every neighbourhood is edgeless
        let g = Graph::cycle(5);
        let cert = OccupancyCertificate::new(2.0, 1.0, 1.0).unwrap();
        let r = check_strong_local_occupancy(&g, &cert, 8).unwrap();
        assert!(r.holds);
        assert!((r.min_lhs - 1.0).abs() < 1e-12);
        let weaker = OccupancyCertificate::new(1.9, 1.0, 1.0).unwrap();
        let r = check_strong_local_occupancy(&g, &weaker, 8).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().f_vertices.len(), 1);
    }

    #[test]
    fn lambert_example_certificate() {
        let c = derive_occupancy_certificate(0.0, 1.0, E - 1.0).unwrap();
        assert!((c.big_d - 1.0).abs() < 1e-12);
        let omega = 0.567_143_290_409_783_8;
        assert!((c.beta_plus_gamma_d - (E / (E - 1.0)) / omega).abs() < 1e-9);
        assert!((c.g_at_stationary - 1.0).abs() < 1e-9);
    }

    #[test]
    fn identities_across_grid() {
        for a in [0.0, 0.5, 1.0, 2.0, 3.5] {
            for d in [0.5, 1.0, 7.0, 1e3, 1e6] {
                for lambda in [0.01, 0.2, 1.0, 4.0] {
                    let c = derive_occupancy_certificate(a, d, lambda).unwrap();
                    assert!(relative_gap(c.beta_plus_gamma_d, c.closed_form_sum) < 1e-9);
                    // y* is the minimiser of g
                    let y = c.stationary_y;
                    assert!(c.g(y + 1e-3) >= c.g(y) - 1e-12);
                    assert!(c.g(y - 1e-3) >= c.g(y) - 1e-12);
                }
            }
        }
        assert!(derive_occupancy_certificate(-1.0, 1.0, 1.0).is_err());
        assert!(derive_occupancy_certificate(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn occupancy_fraction_examples() {
        assert!((occupancy_fraction(&Graph::empty(1), 0.7).unwrap() - 0.7 / 1.7).abs() < 1e-12);
        assert!((occupancy_fraction(&Graph::complete(2), 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_z_examples() {
        let b = log_z_lower_bounds(&Graph::empty(4), 1.0, 0.0).unwrap();
        assert!((b.log_z - 4.0 * 2f64.ln()).abs() < 1e-12);
        assert!((b.quadratic_bound - b.log_z).abs() < 1e-12);
        let b = log_z_lower_bounds(&Graph::complete(2), 1.0, 1.0).unwrap();
        assert!((b.log_z - 3f64.ln()).abs() < 1e-12);
        assert!((b.sparse_bound - 1.0).abs() < 1e-12);
        assert!(matches!(
            log_z_lower_bounds(&Graph::complete(3), 1.0, 1.0),
            Err(HardCoreError::AverageDegree { .. })
        ));
    }
}

//! Exhaustive partition functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{HardCoreError, HardCoreInstance};
use crate::cover::Cover;
use crate::graph::Graph;

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 24;

/// `Z(λ)` and `λZ'(λ) = Σ |I| λ^{|I|}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionSums {
    pub z: f64,
    pub lambda_z_prime: f64,
}

impl PartitionSums {
    pub fn from_polynomial(coeffs: &[u64], lambda: f64) -> Self {
        let mut z = 0.0;
        let mut dz = 0.0;
        let mut pow = 1.0;
        for (i, &c) in coeffs.iter().enumerate() {
            let c = c as f64;
            z += c * pow;
            dz += i as f64 * c * pow;
            pow *= lambda;
        }
        PartitionSums {
            z,
            lambda_z_prime: dz,
        }
    }

    /// Expected size of a hard-core sample.
    pub fn mean_size(&self) -> f64 {
        self.lambda_z_prime / self.z
    }
}

/// Number of independent sets of `H` of each size.
pub fn independence_polynomial(cover: &Cover, cap: usize) -> Result<Vec<u64>, HardCoreError> {
    if cover.n_colours() > cap {
        return Err(HardCoreError::CapExceeded {
            what: "cover",
            size: cover.n_colours(),
            cap,
        });
    }
    fn rec(cover: &Cover, u: usize, chosen: &mut Vec<bool>, size: usize, counts: &mut Vec<u64>) {
        if u == cover.base().n() {
            counts[size] += 1;
            return;
        }
        rec(cover, u + 1, chosen, size, counts);
        for &x in cover.list(u) {
            if cover.partners(x).iter().all(|y| !chosen[y.index()]) {
                chosen[x.index()] = true;
                rec(cover, u + 1, chosen, size + 1, counts);
                chosen[x.index()] = false;
            }
        }
    }
    let mut counts = vec![0u64; cover.base().n() + 1];
    let mut chosen = vec![false; cover.n_colours()];
    rec(cover, 0, &mut chosen, 0, &mut counts);
    Ok(counts)
}

/// `Z` and `λZ'` by enumerating every independent set of `H`.
pub fn partition_function_bruteforce(
    inst: &HardCoreInstance<'_>,
) -> Result<PartitionSums, HardCoreError> {
    let poly = independence_polynomial(inst.cover, DEFAULT_BRUTE_FORCE_CAP)?;
    Ok(PartitionSums::from_polynomial(&poly, inst.lambda))
}

/// Exact `(Z, λZ')` at a rational fugacity.
pub fn evaluate_exact(coeffs: &[u64], lambda: &BigRational) -> (BigRational, BigRational) {
    let mut z = BigRational::zero();
    let mut dz = BigRational::zero();
    let mut pow = BigRational::one();
    for (i, &c) in coeffs.iter().enumerate() {
        let term = &pow * BigRational::from_integer(BigInt::from(c));
        dz += &term * BigRational::from_integer(BigInt::from(i));
        z += term;
        pow = &pow * lambda;
    }
    (z, dz)
}

/// Independent-set counts by size for a plain graph.
pub fn graph_independence_polynomial(g: &Graph, cap: usize) -> Result<Vec<u64>, HardCoreError> {
    let n = g.n();
    if n > cap.min(63) {
        return Err(HardCoreError::CapExceeded {
            what: "graph",
            size: n,
            cap: cap.min(63),
        });
    }
    let closed: Vec<u64> = (0..n)
        .map(|u| {
            g.neighbours(u)
                .iter()
                .fold(1u64 << u, |m, &w| m | (1u64 << w))
        })
        .collect();
    fn rec(closed: &[u64], avail: u64, size: usize, counts: &mut [u64]) {
        if avail == 0 {
            counts[size] += 1;
            return;
        }
        let v = avail.trailing_zeros() as usize;
        rec(closed, avail & !(1u64 << v), size, counts);
        rec(closed, avail & !closed[v], size + 1, counts);
    }
    let mut counts = vec![0u64; n + 1];
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    rec(&closed, all, 0, &mut counts);
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Colour;

    #[test]
    fn single_vertex_two_colours() {
        let c = Cover::from_lists(Graph::empty(1), &[vec![1, 2]]).unwrap();
        for lambda in [0.3, 1.0, 2.5] {
            let z =
                partition_function_bruteforce(&HardCoreInstance::new(&c, lambda).unwrap()).unwrap();
            assert!((z.z - (1.0 + 2.0 * lambda)).abs() < 1e-12);
        }
    }

    #[test]
    fn edgeless_product() {
        let c = Cover::from_lists(Graph::empty(2), &[vec![1, 2], vec![1, 2, 3]]).unwrap();
        let z = partition_function_bruteforce(&HardCoreInstance::new(&c, 1.0).unwrap()).unwrap();
        assert_eq!(z.z, 12.0);
    }

    #[test]
    fn one_cross_edge() {
        // lists {x1,x2}, {y1,y2}; only x1y1 conflicts
        let c = Cover::with_cross_edges(
            Graph::complete(2),
            &[vec![0, 1], vec![0, 1]],
            &[(Colour(0), Colour(2))],
        )
        .unwrap();
        assert_eq!(independence_polynomial(&c, 24).unwrap(), vec![1, 4, 3]);
        let z = partition_function_bruteforce(&HardCoreInstance::new(&c, 1.0).unwrap()).unwrap();
        assert_eq!(z.z, 8.0);
        assert_eq!(z.lambda_z_prime, 10.0);
    }

    #[test]
    fn cap_is_enforced() {
        let c = Cover::from_lists(Graph::empty(5), &vec![vec![1, 2, 3, 4, 5]; 5]).unwrap();
        assert!(matches!(
            independence_polynomial(&c, 24),
            Err(HardCoreError::CapExceeded { .. })
        ));
        assert!(HardCoreInstance::new(&c, 0.0).is_err());
    }

    #[test]
    fn graph_polynomial_matches_cover_polynomial() {
        let g = Graph::cycle(5);
        assert_eq!(
            graph_independence_polynomial(&g, 24).unwrap(),
            vec![1, 5, 5, 0, 0, 0]
        );
        let via_cover = independence_polynomial(&Cover::of_graph(&g), 24).unwrap();
        assert_eq!(via_cover, vec![1, 5, 5, 0, 0, 0]);
    }

    #[test]
    fn exact_rational_evaluation() {
        let lambda = BigRational::new(BigInt::from(1), BigInt::from(2));
        let (z, dz) = evaluate_exact(&[1, 4, 3], &lambda);
        assert_eq!(z, BigRational::new(BigInt::from(15), BigInt::from(4)));
        assert_eq!(dz, BigRational::new(BigInt::from(7), BigInt::from(2)));
    }
}

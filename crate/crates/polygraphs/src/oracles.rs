//! Independent brute-force routes to the quantities the fast paths compute.
//!
//! Everything here is deliberately naive — different algorithms, sharing no
//! code with the production implementations — so that agreement between the
//! two routes is meaningful evidence of correctness. All functions are
//! exponential in the number of vertices and are intended for small inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{GraphError, PolynomialGraph};
use crate::numerics::{permanent_naive, DEFAULT_DIMENSION_CAP};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("independent computations disagree:\n{0}")]
    Disagreement(String),
}

/// Count of a polynomial graph computed as a normalized coefficient: expand
/// `∏_i (Σ_{j : i→j} λ_j)` over squarefree monomials by a subset dynamic
/// program, read off the coefficient of `λ_1 ⋯ λ_d`, and divide by the
/// product of the block-size factorials (computed inline, not shared with
/// the fast path).
///
/// Panics if `d > 24` — the table has `2^d` entries.
pub fn mixed_volume_coefficient(graph: &PolynomialGraph) -> BigInt {
    let d = graph.d();
    assert!(d <= 24, "coefficient oracle is exponential; d = {d} is too large");
    if d == 0 {
        return BigInt::one();
    }
    let full: usize = (1usize << d) - 1;
    let mut table = vec![BigInt::zero(); 1 << d];
    table[0] = BigInt::one();
    for i in 0..d {
        let mut next = vec![BigInt::zero(); 1 << d];
        for (mask, coeff) in table.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for j in 0..d {
                if mask & (1 << j) == 0 && graph.has_edge(i, j) {
                    next[mask | (1 << j)] += coeff;
                }
            }
        }
        table = next;
    }
    let coefficient = table[full].clone();

    let mut divisor = BigInt::one();
    for &size in graph.block_sizes() {
        for k in 2..=size {
            divisor *= BigInt::from(k);
        }
    }
    let (q, r) = coefficient.div_rem(&divisor);
    assert!(
        r.is_zero(),
        "coefficient {coefficient} of the full monomial is not divisible by {divisor}"
    );
    q
}

/// Decides whether the vertex–out-neighborhood bipartite graph has a perfect
/// matching by trying every one of the `d!` assignments outright. No
/// pruning, no augmenting paths: each permutation is checked edge by edge.
pub fn exhaustive_matching(graph: &PolynomialGraph) -> bool {
    let d = graph.d();
    assert!(d <= 10, "matching oracle enumerates d! permutations; d = {d} is too large");
    let mut image = vec![0usize; d];
    let mut used = vec![false; d];
    try_permutations(graph, 0, &mut image, &mut used)
}

fn try_permutations(
    graph: &PolynomialGraph,
    row: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let d = graph.d();
    if row == d {
        return (0..d).all(|i| graph.has_edge(i, image[i]));
    }
    for j in 0..d {
        if !used[j] {
            used[j] = true;
            image[row] = j;
            if try_permutations(graph, row + 1, image, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Every quantity of a count, computed twice by unrelated algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    /// Inclusion–exclusion permanent (production path).
    pub permanent_fast: BigInt,
    /// Permanent by summing all `d!` permutation products.
    pub permanent_naive: BigInt,
    /// Count via the fast permanent divided by the block factorials.
    pub count: BigInt,
    /// Count via subset-DP coefficient extraction.
    pub count_coefficient: BigInt,
    /// Perfect-matching feasibility by augmenting paths.
    pub matching_fast: bool,
    /// Perfect-matching feasibility by trying all permutations.
    pub matching_exhaustive: bool,
}

/// Computes the count of `graph` along every route and errors unless they
/// all agree. On success the returned report carries the (identical) values.
pub fn cross_check_count(graph: &PolynomialGraph) -> Result<CrossCheck, OracleError> {
    let report = graph.count(DEFAULT_DIMENSION_CAP)?;
    let naive = permanent_naive(&graph.adjacency_matrix());
    let coefficient_count = mixed_volume_coefficient(graph);
    let matching = exhaustive_matching(graph);

    let check = CrossCheck {
        permanent_fast: report.permanent.clone(),
        permanent_naive: naive,
        count: report.count.clone(),
        count_coefficient: coefficient_count,
        matching_fast: report.matching_feasible,
        matching_exhaustive: matching,
    };

    let mut mismatches = Vec::new();
    if check.permanent_fast != check.permanent_naive {
        mismatches.push(format!(
            "permanent: inclusion-exclusion gives {}, permutation sum gives {}",
            check.permanent_fast, check.permanent_naive
        ));
    }
    if check.count != check.count_coefficient {
        mismatches.push(format!(
            "count: permanent route gives {}, coefficient route gives {}",
            check.count, check.count_coefficient
        ));
    }
    if check.matching_fast != check.matching_exhaustive {
        mismatches.push(format!(
            "matching feasibility: augmenting paths say {}, exhaustive search says {}",
            check.matching_fast, check.matching_exhaustive
        ));
    }
    let positive = check.count > BigInt::zero();
    if positive != check.matching_exhaustive {
        mismatches.push(format!(
            "count {} is {}positive but a perfect matching {}",
            check.count,
            if positive { "" } else { "not " },
            if check.matching_exhaustive { "exists" } else { "does not exist" },
        ));
    }
    if mismatches.is_empty() {
        Ok(check)
    } else {
        Err(OracleError::Disagreement(mismatches.join("\n")))
    }
}

/// Deterministically samples a valid polynomial graph with at most `max_d`
/// vertices: block sizes are drawn first, then for every vertex and every
/// *other* block a biased coin decides whether the whole bundle of edges into
/// that block is present. The bias itself varies from sample to sample so the
/// corpus mixes sparse graphs (usually count zero) with dense ones. Self-loops
/// and partial bundles never occur, so the result always satisfies the
/// block-edge property.
pub fn sample_polygraph(seed: u64, max_d: usize) -> PolynomialGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    assert!(max_d >= 1, "graphs need at least one vertex");

    let mut sizes = Vec::new();
    let mut d = 0;
    let n_blocks = rng.gen_range(1..=4);
    for _ in 0..n_blocks {
        let size = rng.gen_range(1..=3.min(max_d - d).max(1));
        if d + size > max_d {
            break;
        }
        sizes.push(size);
        d += size;
    }
    if sizes.is_empty() {
        sizes.push(1);
        d = 1;
    }

    let mut blocks = Vec::new();
    let mut start = 0;
    for &size in &sizes {
        blocks.push((start..start + size).collect::<Vec<_>>());
        start += size;
    }
    let block_of = |v: usize| {
        let mut acc = 0;
        for (b, &size) in sizes.iter().enumerate() {
            acc += size;
            if v < acc {
                return b;
            }
        }
        unreachable!()
    };

    let density = rng.gen_range(0.35..0.95);
    let mut edges = Vec::new();
    for v in 0..d {
        for (b, block) in blocks.iter().enumerate() {
            if b == block_of(v) {
                continue;
            }
            if rng.gen_bool(density) {
                edges.extend(block.iter().map(|&w| (v, w)));
            }
        }
    }
    PolynomialGraph::validate(&blocks, &edges, None).expect("construction is valid by design")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests_support::{block_cycle, complete_partite};

    #[test]
    fn coefficient_route_matches_known_counts() {
        assert_eq!(
            mixed_volume_coefficient(&complete_partite(&[2, 2, 2, 2])),
            BigInt::from(297)
        );
        assert_eq!(
            mixed_volume_coefficient(&complete_partite(&[1, 1, 1, 1])),
            BigInt::from(9)
        );
        assert_eq!(
            mixed_volume_coefficient(&complete_partite(&[1, 1])),
            BigInt::from(1)
        );
        assert_eq!(
            mixed_volume_coefficient(&block_cycle(&[2, 2, 2, 2])),
            BigInt::from(1)
        );
    }

    #[test]
    fn exhaustive_matching_agrees_with_structure() {
        assert!(exhaustive_matching(&complete_partite(&[2, 2])));
        // a graph with an isolated vertex has no perfect matching
        let graph = PolynomialGraph::validate(&[vec![0], vec![1]], &[(0, 1)], None).unwrap();
        assert!(!exhaustive_matching(&graph));
    }

    #[test]
    fn cross_check_reports_consistent_values() {
        let check = cross_check_count(&complete_partite(&[2, 2, 2, 2])).unwrap();
        assert_eq!(check.count, BigInt::from(297));
        assert_eq!(check.permanent_fast, BigInt::from(4752));
        assert_eq!(check.permanent_fast, check.permanent_naive);
        assert!(check.matching_fast && check.matching_exhaustive);
    }

    #[test]
    fn cross_check_handles_zero_counts() {
        let graph = PolynomialGraph::validate(&[vec![0], vec![1]], &[(0, 1)], None).unwrap();
        let check = cross_check_count(&graph).unwrap();
        assert_eq!(check.count, BigInt::zero());
        assert!(!check.matching_exhaustive);
    }

    #[test]
    fn empty_graph_counts_one() {
        let graph = PolynomialGraph::validate(&[], &[], None).unwrap();
        assert_eq!(mixed_volume_coefficient(&graph), BigInt::one());
        assert!(exhaustive_matching(&graph));
        let check = cross_check_count(&graph).unwrap();
        assert_eq!(check.count, BigInt::one());
    }
}

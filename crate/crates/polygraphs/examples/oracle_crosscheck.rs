//! Randomized agreement of every counting route the crate implements.
//!
//! Each sampled graph is counted four independent ways — inclusion–exclusion
//! permanent, naive permutation-sum permanent, subset-DP coefficient
//! extraction, and (for feasibility) both augmenting paths and exhaustive
//! permutation search. Any disagreement is a bug in at least one route, so
//! a clean pass over hundreds of graphs is strong evidence for all of them.

use std::time::Instant;

use num_traits::Zero;
use polygraphs::oracles::{cross_check_count, sample_polygraph};

fn main() {
    let runs = 300usize;
    let started = Instant::now();
    let mut zero_counts = 0usize;
    let mut largest = (0usize, num_bigint::BigInt::from(0));

    for seed in 0..runs as u64 {
        let graph = sample_polygraph(seed, 8);
        let check = match cross_check_count(&graph) {
            Ok(check) => check,
            Err(e) => panic!("graph from seed {seed} exposed a disagreement:\n{e}"),
        };
        if check.count.is_zero() {
            zero_counts += 1;
        }
        if check.count > largest.1 {
            largest = (seed as usize, check.count.clone());
        }
    }

    println!("checked {runs} random graphs in {:?}", started.elapsed());
    println!("  zero counts (no perfect matching): {zero_counts}");
    println!("  largest count seen: {} (seed {})", largest.1, largest.0);

    // One graph in full detail.
    let graph = sample_polygraph(largest.0 as u64, 8);
    let check = cross_check_count(&graph).unwrap();
    println!("\ndetail for seed {}:", largest.0);
    println!("  blocks: {:?}", graph.block_sizes());
    println!("  edges:  {:?}", graph.edges());
    println!(
        "  permanent {} (inclusion–exclusion) = {} (permutation sum)",
        check.permanent_fast, check.permanent_naive
    );
    println!(
        "  count {} (permanent route) = {} (coefficient route)",
        check.count, check.count_coefficient
    );
    println!(
        "  perfect matching: {} (augmenting paths) = {} (exhaustive)",
        check.matching_fast, check.matching_exhaustive
    );
}

//! The permanent evaluator against its brute-force oracle.
//!
//! The count of a polynomial graph is a matrix permanent divided by block
//! factorials, so everything rests on computing permanents exactly. This
//! example exercises the inclusion–exclusion evaluator on random 0/1
//! matrices, confirms it against the naive permutation sum, and times a
//! dense 20×20 instance that would be hopeless naively (20! ≈ 2.4·10^18
//! products).

use std::time::Instant;

use num_bigint::BigInt;
use polygraphs::numerics::{permanent_naive, permanent_ryser};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| BigInt::from(u8::from(rng.gen_bool(density))))
                .collect()
        })
        .collect()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    println!("cross-checking on random 0/1 matrices up to 8×8:");
    let mut checked = 0;
    for n in 0..=8 {
        for _ in 0..25 {
            let m = random_matrix(&mut rng, n, 0.6);
            let fast = permanent_ryser(&m).unwrap();
            let naive = permanent_naive(&m);
            assert_eq!(fast, naive, "mismatch on an {n}×{n} matrix");
            checked += 1;
        }
    }
    println!("  {checked} matrices, inclusion-exclusion == permutation sum on all\n");

    // the all-ones matrix has permanent n! — an easy closed form to display
    for n in [4, 8, 12] {
        let ones = vec![vec![BigInt::from(1); n]; n];
        println!("  per(J_{n}) = {} (= {n}!)", permanent_ryser(&ones).unwrap());
    }

    println!("\ndense 20×20 instance:");
    let m = random_matrix(&mut rng, 20, 0.9);
    let start = Instant::now();
    let value = permanent_ryser(&m).unwrap();
    let elapsed = start.elapsed();
    println!("  permanent = {value}");
    println!("  computed in {elapsed:?} — the permutation sum would need 20! terms");
}

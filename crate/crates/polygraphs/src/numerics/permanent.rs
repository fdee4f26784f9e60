//! Permanents of square integer matrices.
//!
//! [`permanent_ryser`] is the production path: inclusion-exclusion over
//! column subsets, enumerated in Gray-code order so consecutive subsets
//! differ in a single column and the row sums update in O(n). The subset
//! range is split into fixed chunks; exact integer arithmetic makes the
//! result bit-identical for any chunking.
//!
//! [`permanent_naive`] is the independent oracle: a direct sum over all n!
//! permutations with no shortcuts. The two share no code.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default dimension cap for [`permanent_ryser`]: 2^n column subsets are
/// enumerated, so this is a desk-scale ceiling.
pub const DEFAULT_DIMENSION_CAP: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermanentError {
    #[error("matrix dimension {n} exceeds the cap {cap} (2^n column subsets would be enumerated)")]
    DimensionCap { n: usize, cap: usize },
}

fn check_square(m: &[Vec<BigInt>]) -> usize {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "permanent requires a square matrix");
    }
    n
}

/// Exact permanent via Ryser's formula with the default dimension cap.
pub fn permanent_ryser(m: &[Vec<BigInt>]) -> Result<BigInt, PermanentError> {
    permanent_ryser_with_cap(m, DEFAULT_DIMENSION_CAP)
}

/// Exact permanent via Ryser's formula:
/// per(m) = Σ over nonempty column subsets S of (−1)^(n−|S|) · ∏ᵢ Σ_{j∈S} m\[i\]\[j\].
pub fn permanent_ryser_with_cap(m: &[Vec<BigInt>], cap: usize) -> Result<BigInt, PermanentError> {
    let n = check_square(m);
    if n > cap {
        return Err(PermanentError::DimensionCap { n, cap });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(ryser_chunked(m, 16))
}

/// Evaluates the Ryser sum over `nchunks` consecutive subset ranges.
/// Exposed shape (rather than a single loop) so tests can pin down that the
/// split has no effect on the result.
fn ryser_chunked(m: &[Vec<BigInt>], nchunks: u64) -> BigInt {
    let n = m.len();
    let total: u64 = 1 << n;
    let chunk = ((total - 1) / nchunks + 1).max(1);
    let bounds = |c: u64| -> (u64, u64) { (1 + c * chunk, (1 + (c + 1) * chunk).min(total)) };

    if let Some(small) = i64_matrix_with_safe_bound(m) {
        let mut acc: i128 = 0;
        let mut c = 0;
        while 1 + c * chunk < total {
            let (lo, hi) = bounds(c);
            acc += ryser_range_i128(&small, lo, hi);
            c += 1;
        }
        BigInt::from(acc)
    } else {
        let mut acc = BigInt::zero();
        let mut c = 0;
        while 1 + c * chunk < total {
            let (lo, hi) = bounds(c);
            acc += ryser_range_big(m, lo, hi);
            c += 1;
        }
        acc
    }
}

/// Returns the matrix as i64 entries when every intermediate value of the
/// Ryser recurrence provably fits in i128: each term is a product of row
/// sums bounded by ∏ᵢ Σⱼ |m[i][j]|, and at most 2^n terms accumulate.
fn i64_matrix_with_safe_bound(m: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut small = Vec::with_capacity(n);
    let mut product_bound = BigInt::one();
    for row in m {
        let mut small_row = Vec::with_capacity(n);
        let mut row_bound = BigInt::zero();
        for e in row {
            small_row.push(e.to_i64()?);
            row_bound += e.abs();
        }
        product_bound *= row_bound.max(BigInt::one());
        small.push(small_row);
    }
    let total_bound: BigInt = product_bound << n;
    (total_bound < BigInt::from(i128::MAX / 2)).then_some(small)
}

fn gray(s: u64) -> u64 {
    s ^ (s >> 1)
}

fn ryser_range_i128(m: &[Vec<i64>], lo: u64, hi: u64) -> i128 {
    let n = m.len();
    let mut rowsums = vec![0i128; n];
    let start = gray(lo);
    for j in 0..n {
        if start >> j & 1 == 1 {
            for i in 0..n {
                rowsums[i] += m[i][j] as i128;
            }
        }
    }
    let mut bits = start.count_ones();
    let mut acc = 0i128;
    for s in lo..hi {
        if s != lo {
            // gray(s) and gray(s-1) differ exactly in bit trailing_zeros(s)
            let j = s.trailing_zeros() as usize;
            if gray(s) >> j & 1 == 1 {
                for i in 0..n {
                    rowsums[i] += m[i][j] as i128;
                }
                bits += 1;
            } else {
                for i in 0..n {
                    rowsums[i] -= m[i][j] as i128;
                }
                bits -= 1;
            }
        }
        let mut term = 1i128;
        for &r in &rowsums {
            term *= r;
        }
        if (n as u32 - bits) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn ryser_range_big(m: &[Vec<BigInt>], lo: u64, hi: u64) -> BigInt {
    let n = m.len();
    let mut rowsums = vec![BigInt::zero(); n];
    let start = gray(lo);
    for j in 0..n {
        if start >> j & 1 == 1 {
            for i in 0..n {
                rowsums[i] += &m[i][j];
            }
        }
    }
    let mut bits = start.count_ones();
    let mut acc = BigInt::zero();
    for s in lo..hi {
        if s != lo {
            let j = s.trailing_zeros() as usize;
            if gray(s) >> j & 1 == 1 {
                for i in 0..n {
                    rowsums[i] += &m[i][j];
                }
                bits += 1;
            } else {
                for i in 0..n {
                    rowsums[i] -= &m[i][j];
                }
                bits -= 1;
            }
        }
        if rowsums.iter().any(Zero::is_zero) {
            continue;
        }
        let mut term = BigInt::one();
        for r in &rowsums {
            term *= r;
        }
        if (n as u32 - bits) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact permanent straight from the definition:
/// per(m) = Σ over permutations π of ∏ⱼ m\[j\]\[π(j)\].
///
/// Deliberately unoptimized (full n!-leaf recursion) so it can serve as an
/// independent check on [`permanent_ryser`]. Practical up to n ≈ 10.
pub fn permanent_naive(m: &[Vec<BigInt>]) -> BigInt {
    fn expand(m: &[Vec<BigInt>], row: usize, used: &mut [bool], partial: &BigInt) -> BigInt {
        if row == m.len() {
            return partial.clone();
        }
        let mut acc = BigInt::zero();
        for col in 0..m.len() {
            if !used[col] {
                used[col] = true;
                let next = partial * &m[row][col];
                acc += expand(m, row + 1, used, &next);
                used[col] = false;
            }
        }
        acc
    }
    let n = check_square(m);
    expand(m, 0, &mut vec![false; n], &BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn big_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// J − I on n vertices: ones everywhere except a zero diagonal.
    fn ones_minus_identity(n: usize) -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i != j))).collect())
            .collect()
    }

    /// 0/1 matrix with zero 2x2 diagonal blocks and ones elsewhere (four
    /// blocks of two: the adjacency matrix of the complete 4-partite graph).
    fn complete_four_partite() -> Vec<Vec<BigInt>> {
        (0..8)
            .map(|i: usize| (0..8).map(|j| BigInt::from(u8::from(i / 2 != j / 2))).collect())
            .collect()
    }

    #[test]
    fn fixed_values() {
        assert_eq!(permanent_ryser(&[]).unwrap(), BigInt::one());
        assert_eq!(permanent_ryser(&big_matrix(&[&[7]])).unwrap(), BigInt::from(7));
        assert_eq!(
            permanent_ryser(&big_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            permanent_ryser(&big_matrix(&[&[0, 1], &[1, 0]])).unwrap(),
            BigInt::one()
        );
        // derangement counts
        assert_eq!(permanent_ryser(&ones_minus_identity(4)).unwrap(), BigInt::from(9));
        assert_eq!(permanent_ryser(&ones_minus_identity(5)).unwrap(), BigInt::from(44));
    }

    #[test]
    fn four_partite_block_matrix() {
        let m = complete_four_partite();
        let per = permanent_ryser(&m).unwrap();
        assert_eq!(per, BigInt::from(4752));
        assert_eq!(permanent_naive(&m), per);
    }

    #[test]
    fn naive_matches_ryser_with_negative_entries() {
        let m = big_matrix(&[
            &[2, -1, 0, 1],
            &[-2, 0, 1, 1],
            &[1, 1, -1, 0],
            &[0, 2, 1, -2],
        ]);
        assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m));
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = big_matrix(&[&[0, 0, 0], &[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(permanent_ryser(&m).unwrap(), BigInt::zero());
        assert_eq!(permanent_naive(&m), BigInt::zero());
    }

    #[test]
    fn chunking_does_not_change_the_result() {
        let m = big_matrix(&[
            &[1, 2, 3, -1, 0],
            &[0, 1, -2, 2, 1],
            &[3, 0, 1, 1, -1],
            &[1, 1, 0, -2, 2],
            &[2, -1, 1, 0, 1],
        ]);
        let reference = ryser_chunked(&m, 1);
        for nchunks in [2, 3, 7, 16, 64] {
            assert_eq!(ryser_chunked(&m, nchunks), reference);
        }
        assert_eq!(permanent_naive(&m), reference);
    }

    #[test]
    fn big_integer_path_agrees_with_naive() {
        // entries beyond i64 force the BigInt evaluation path
        let huge = BigInt::from(i64::MAX) * BigInt::from(1000);
        let mut m = big_matrix(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        m[0][0] = huge.clone();
        assert!(i64_matrix_with_safe_bound(&m).is_none());
        assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m));
        for nchunks in [1, 5] {
            assert_eq!(ryser_chunked(&m, nchunks), permanent_naive(&m));
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let m = ones_minus_identity(6);
        assert_eq!(
            permanent_ryser_with_cap(&m, 5),
            Err(PermanentError::DimensionCap { n: 6, cap: 5 })
        );
        assert!(permanent_ryser_with_cap(&m, 6).is_ok());
    }
}

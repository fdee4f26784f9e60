//! Exact rational matrices and linear solving.
//!
//! Gaussian elimination with full pivoting: the pivot is chosen anywhere in
//! the remaining submatrix. Over exact rationals any nonzero pivot is sound,
//! so the search picks the entry of smallest bit size to limit coefficient
//! growth.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    /// Builds from row vectors; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), ncols, "matrix rows must have equal length");
        }
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.data[r * self.cols + c] = value;
    }

    /// Matrix-vector product (exact).
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    /// Exact rank by elimination.
    pub fn rank(&self) -> usize {
        eliminate(self, &[]).rank
    }
}

/// Outcome of [`solve_linear_exact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// The system has exactly one solution.
    Unique(Vec<BigRational>),
    /// No assignment satisfies the system.
    Inconsistent,
    /// The solution set is an affine subspace of positive dimension;
    /// `particular` fixes all free variables to zero.
    Underdetermined {
        rank: usize,
        particular: Vec<BigRational>,
    },
}

struct Echelon {
    /// Augmented matrix after forward elimination (last column is the rhs
    /// when one was supplied).
    mat: Vec<Vec<BigRational>>,
    /// `col_of[k]` = original column index sitting at elimination position k.
    col_of: Vec<usize>,
    rank: usize,
    aug: bool,
}

fn eliminate(a: &RationalMatrix, b: &[BigRational]) -> Echelon {
    let m = a.rows();
    let n = a.cols();
    let aug = !b.is_empty();
    if aug {
        assert_eq!(b.len(), m, "rhs length must match the row count");
    }
    let width = n + usize::from(aug);
    let mut mat: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row: Vec<BigRational> = (0..n).map(|c| a.at(r, c).clone()).collect();
            if aug {
                row.push(b[r].clone());
            }
            row
        })
        .collect();
    let mut col_of: Vec<usize> = (0..n).collect();

    let mut rank = 0;
    while rank < m && rank < n {
        // full pivot search over the remaining submatrix
        let mut best: Option<(u64, usize, usize)> = None;
        for i in rank..m {
            for j in rank..n {
                let e = &mat[i][j];
                if !e.is_zero() {
                    let size = e.numer().bits() + e.denom().bits();
                    if best.map_or(true, |(s, _, _)| size < s) {
                        best = Some((size, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        mat.swap(rank, pi);
        if pj != rank {
            for row in mat.iter_mut() {
                row.swap(rank, pj);
            }
            col_of.swap(rank, pj);
        }
        for i in rank + 1..m {
            if !mat[i][rank].is_zero() {
                let f = &mat[i][rank] / &mat[rank][rank];
                for j in rank..width {
                    let delta = &f * &mat[rank][j];
                    mat[i][j] = &mat[i][j] - delta;
                }
            }
        }
        rank += 1;
    }
    Echelon {
        mat,
        col_of,
        rank,
        aug,
    }
}

/// Solves `a · x = b` exactly and classifies the solution set.
pub fn solve_linear_exact(a: &RationalMatrix, b: &[BigRational]) -> LinearSolution {
    let m = a.rows();
    let n = a.cols();
    let rhs = if m == 0 { vec![] } else { b.to_vec() };
    assert_eq!(b.len(), m, "rhs length must match the row count");
    let ech = eliminate(a, if m == 0 { &[] } else { &rhs });
    let rank = ech.rank;

    // rows beyond the rank must have a zero rhs
    if ech.aug {
        for i in rank..m {
            if !ech.mat[i][n].is_zero() {
                return LinearSolution::Inconsistent;
            }
        }
    }

    // back-substitution with free variables pinned to zero
    let mut pivot_values = vec![BigRational::zero(); rank];
    for k in (0..rank).rev() {
        let mut rhs_k = if ech.aug {
            ech.mat[k][n].clone()
        } else {
            BigRational::zero()
        };
        for j in k + 1..rank {
            rhs_k -= &ech.mat[k][j] * &pivot_values[j];
        }
        pivot_values[k] = rhs_k / &ech.mat[k][k];
    }
    let mut x = vec![BigRational::zero(); n];
    for k in 0..rank {
        x[ech.col_of[k]] = pivot_values[k].clone();
    }

    if rank == n {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Underdetermined { rank, particular: x }
    }
}

#[allow(dead_code)]
fn bigint(n: i64) -> BigInt {
    BigInt::from(n)
}

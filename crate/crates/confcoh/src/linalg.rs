//! Exact linear algebra over the rationals.
//!
//! Everything the cohomology engine needs reduces to four operations on dense
//! rational matrices: rank, kernel basis, pivot columns, and solving a linear
//! system. All four run on one shared elimination core:
//!
//! * each row is first scaled by the least common multiple of its
//!   denominators (row scaling changes neither rank, kernel, nor solution
//!   sets of augmented systems);
//! * the integer matrix is then reduced by fraction-free Bareiss elimination
//!   (every division in the update step is exact), which keeps intermediate
//!   entries determinant-bounded instead of exploding;
//! * pivoting is deterministic: columns are scanned in order, and within a
//!   column the first row of maximal absolute value is chosen, so identical
//!   inputs always yield identical echelon forms, kernels, and solutions.
//!
//! Back-substitution out of the integer echelon form is done over the
//! rationals and is exact.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Result of exact elimination: the rank, a kernel basis, and the pivot
/// columns, all deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub kernel: Vec<Vec<Rational>>,
    pub pivot_columns: Vec<usize>,
}

impl QMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    /// Builds from row vectors (all of equal length).
    pub fn from_rows(data: Vec<Vec<Rational>>) -> QMatrix {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows, cols, data }
    }

    /// Builds from column vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> QMatrix {
        let mut m = QMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    /// The `j`-th column as a vector.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// Appends extra columns given as vectors.
    pub fn hstack_columns(&self, columns: &[Vec<Rational>]) -> QMatrix {
        self.hstack(&QMatrix::from_columns(self.rows, columns))
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (a, b) in row.iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.echelon(self.cols).pivots.len()
    }

    /// Exact rank, kernel basis, and pivot columns.
    pub fn exact_rank(&self) -> RankResult {
        let ech = self.echelon(self.cols);
        let kernel = ech.kernel_basis();
        RankResult {
            rank: ech.pivots.len(),
            pivot_columns: ech.pivots.clone(),
            kernel,
        }
    }

    /// Basis of the right kernel, one vector per free column, in ascending
    /// free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.echelon(self.cols).kernel_basis()
    }

    /// For each target column, whether it lies in the column span of `self`.
    /// One shared elimination answers every membership query: after the
    /// pivot search is restricted to `self`'s columns, the rows below the
    /// rank are zero throughout `self`, so a target belongs to the span
    /// exactly when its entries in those rows all vanish.
    pub fn columns_in_span(&self, targets: &[Vec<Rational>]) -> Vec<bool> {
        let aug = self.hstack_columns(targets);
        let ech = aug.echelon(self.cols);
        let rank = ech.pivots.len();
        (0..targets.len())
            .map(|t| {
                let col = self.cols + t;
                (rank..self.rows).all(|r| ech.mat[r][col].is_zero())
            })
            .collect()
    }

    /// Solves `self * x = rhs` exactly. Returns the particular solution with
    /// all free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let aug = self.hstack_columns(&[rhs.to_vec()]);
        let ech = aug.echelon(self.cols);
        // Inconsistent iff some eliminated row is zero on the coefficient
        // side but nonzero on the augmented side.
        for row in &ech.mat {
            if row[..self.cols].iter().all(Zero::is_zero) && !row[self.cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.mat[r];
            let mut acc = big_to_rat(&row[self.cols]);
            for (entry, value) in row[c + 1..self.cols].iter().zip(&x[c + 1..]) {
                if !entry.is_zero() && !value.is_zero() {
                    acc -= big_to_rat(entry) * value.clone();
                }
            }
            x[c] = acc / big_to_rat(&row[c]);
        }
        Some(x)
    }

    /// Fraction-free row echelon form; pivots are only sought in the first
    /// `pivot_cols` columns (further columns are carried along, which is how
    /// augmented systems are eliminated).
    // The update step reads the pivot row while writing another row of the
    // same matrix, so it must use indices.
    #[allow(clippy::needless_range_loop)]
    fn echelon(&self, pivot_cols: usize) -> Echelon {
        // Clear denominators row by row.
        let mut mat: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|row| {
                let mut lcm = BigInt::from(1);
                for v in row {
                    let d = v.denom();
                    let g = gcd(&lcm, d);
                    lcm = &lcm / &g * d;
                }
                row.iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::from(1);
        let mut r = 0;
        for c in 0..pivot_cols.min(self.cols) {
            if r == self.rows {
                break;
            }
            // First row of maximal absolute value in this column.
            let mut best: Option<(usize, BigInt)> = None;
            for (i, row) in mat.iter().enumerate().skip(r) {
                let a = row[c].abs();
                if a.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, b)) if *b >= a => {}
                    _ => best = Some((i, a)),
                }
            }
            let Some((p, _)) = best else { continue };
            mat.swap(r, p);
            let pivot = mat[r][c].clone();
            for i in r + 1..self.rows {
                if mat[i][c].is_zero() {
                    // Uniform Bareiss update with a zero multiplier: the row
                    // is rescaled so the exact-division invariant holds at
                    // the next step.
                    for j in 0..self.cols {
                        if !mat[i][j].is_zero() {
                            let val = &mat[i][j] * &pivot;
                            debug_assert!((&val % &prev).is_zero(), "inexact division");
                            mat[i][j] = val / &prev;
                        }
                    }
                    continue;
                }
                let factor = mat[i][c].clone();
                for j in 0..self.cols {
                    let val = &mat[i][j] * &pivot - &factor * &mat[r][j];
                    debug_assert!((&val % &prev).is_zero(), "inexact division");
                    mat[i][j] = val / &prev;
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        Echelon {
            mat,
            pivots,
            cols: self.cols,
        }
    }
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    if a.is_zero() {
        BigInt::from(1)
    } else {
        a
    }
}

fn big_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

struct Echelon {
    mat: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Echelon {
    fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let rank = self.pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![Rational::zero(); self.cols];
            x[f] = Rational::from_integer(1.into());
            for r in (0..rank).rev() {
                let c = self.pivots[r];
                let row = &self.mat[r];
                let mut acc = Rational::zero();
                for (entry, value) in row[c + 1..self.cols].iter().zip(&x[c + 1..]) {
                    if !entry.is_zero() && !value.is_zero() {
                        acc += big_to_rat(entry) * value.clone();
                    }
                }
                x[c] = -acc / big_to_rat(&row[c]);
            }
            basis.push(x);
        }
        basis
    }
}

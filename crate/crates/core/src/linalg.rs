//! Dense exact linear algebra over F_p: rank, kernels, solvability.
//!
//! Used for graded-piece computations (exactness certification, brute-force
//! membership and kernel oracles) where each piece is a finite-dimensional
//! vector space.

use crate::field::PrimeField;

/// Row-major dense matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    pub field: PrimeField,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl MatFp {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatFp {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    /// Reduces in place to row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Find a pivot in this column.
            let mut piv = None;
            for r in row..self.rows {
                if self.at(r, col) != 0 {
                    piv = Some(r);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            self.data.swap_chunks(piv, row, self.cols);
            let inv = f.inv(self.at(row, col));
            for c in col..self.cols {
                let v = f.mul(self.at(row, c), inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let factor = self.at(r, col);
                    for c in col..self.cols {
                        let v = f.sub(self.at(r, c), f.mul(factor, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.row_reduce().len()
    }

    /// Dimension of the right kernel.
    pub fn kernel_dim(self) -> usize {
        let cols = self.cols;
        cols - self.rank()
    }

    /// Is `Ax = b` solvable? (Rank test on the augmented matrix.)
    pub fn solvable(&self, b: &[u64]) -> bool {
        assert_eq!(b.len(), self.rows);
        let mut aug = MatFp::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let mut a = self.clone();
        let rank_a = a.row_reduce().len();
        let rank_aug = aug.row_reduce().len();
        rank_a == rank_aug
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for k in 0..width {
            self.swap(a * width + k, b * width + k);
        }
    }
}

//! Small exact linear algebra over the rationals.
//!
//! The matrices here are tiny (dimension ≤ a dozen or so), so plain
//! Gaussian elimination with exact rational pivots is both simple and fast
//! enough; nothing in this module approximates.

use crate::rational::Rat;
use num::{One, Signed, Zero};

/// Dense matrix of exact rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    /// Build a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> QMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix constructor"
        );
        QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    fn row_echelon(mut self) -> (QMatrix, usize, Vec<usize>, i32) {
        // Returns (echelon form, rank, pivot columns, sign of the row swaps).
        let mut pivot_cols = Vec::new();
        let mut sign = 1;
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let found = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let Some(src) = found else { continue };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data.swap(pivot_row * self.cols + c, src * self.cols + c);
                }
                sign = -sign;
            }
            let pivot = self.get(pivot_row, col).clone();
            for r in (pivot_row + 1)..self.rows {
                if self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col) / &pivot;
                for c in col..self.cols {
                    let v = self.get(r, c) - &factor * self.get(pivot_row, c);
                    self.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        let rank = pivot_cols.len();
        (self, rank, pivot_cols, sign)
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.clone().row_echelon().1
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return Rat::one();
        }
        let (ech, rank, _, sign) = self.clone().row_echelon();
        if rank < self.rows {
            return Rat::zero();
        }
        let mut det = if sign < 0 { -Rat::one() } else { Rat::one() };
        for i in 0..self.rows {
            det *= ech.get(i, i);
        }
        det
    }

    /// Solve the square system `self · x = rhs`. Returns `None` when the
    /// matrix is singular.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let n = self.rows;
        // Augmented elimination with back substitution.
        let mut rows: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rat> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let src = (col..n).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, src);
            let pivot = rows[col][col].clone();
            for r in (col + 1)..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &pivot;
                for c in col..=n {
                    let v = &rows[r][c] - &factor * &rows[col][c];
                    rows[r][c] = v;
                }
            }
        }
        let mut x = vec![Rat::zero(); n];
        for r in (0..n).rev() {
            let mut acc = rows[r][n].clone();
            for c in (r + 1)..n {
                acc -= &rows[r][c] * &x[c];
            }
            x[r] = acc / &rows[r][r];
        }
        Some(x)
    }

    /// Basis of the right null space `{x : self · x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Rat>> {
        let (ech, _, pivot_cols, _) = self.clone().row_echelon();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &free in &free_cols {
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            // Back substitute through the pivot rows, bottom up.
            for (row, &pcol) in pivot_cols.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for c in (pcol + 1)..self.cols {
                    acc += ech.get(row, c) * &x[c];
                }
                x[pcol] = -acc / ech.get(row, pcol);
            }
            basis.push(x);
        }
        basis
    }

    /// Negative definiteness of a symmetric matrix, by the alternating sign
    /// of the leading principal minors: (-1)^k det_k > 0 for k = 1..n.
    /// The empty matrix counts as negative definite.
    pub fn is_negative_definite(&self) -> bool {
        assert_eq!(self.rows, self.cols, "definiteness of non-square matrix");
        for k in 1..=self.rows {
            let minor = QMatrix::from_rows(
                (0..k)
                    .map(|r| (0..k).map(|c| self.get(r, c).clone()).collect())
                    .collect(),
            );
            let det = minor.det();
            let expected_positive = k % 2 == 0;
            if expected_positive && !det.is_positive() {
                return false;
            }
            if !expected_positive && !det.is_negative() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.det(), rat_int(-2));

        let b = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(b.rank(), 1);
        assert_eq!(b.det(), rat_int(0));

        let c = m(&[&[2, 0, 1], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(c.det(), rat_int(30));
    }

    #[test]
    fn solve_unique_system() {
        let a = m(&[&[2, 1], &[1, -1]]);
        let x = a.solve(&[rat_int(5), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);

        let singular = m(&[&[1, 1], &[2, 2]]);
        assert!(singular.solve(&[rat_int(1), rat_int(2)]).is_none());
    }

    #[test]
    fn solve_produces_exact_fractions() {
        let a = m(&[&[3]]);
        let x = a.solve(&[rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3)]);
    }

    #[test]
    fn null_space_of_rank_deficient_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = a.null_space();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for r in 0..a.rows() {
                let mut acc = rat_int(0);
                for c in 0..a.cols() {
                    acc += a.get(r, c) * &v[c];
                }
                assert_eq!(acc, rat_int(0), "null vector fails row {r}");
            }
        }

        let full = m(&[&[1, 0], &[0, 1]]);
        assert!(full.null_space().is_empty());
    }

    #[test]
    fn negative_definiteness() {
        // A2 chain with weights -2: negative definite.
        let a2 = m(&[&[-2, 1], &[1, -2]]);
        assert!(a2.is_negative_definite());

        // Chain with a (-1) tip still works out definite.
        let chain = m(&[&[-2, 1], &[1, -1]]);
        assert!(chain.is_negative_definite());

        // Fiber-shaped matrix with determinant 0: not definite.
        let fiber = m(&[&[-1, 1], &[1, -1]]);
        assert!(!fiber.is_negative_definite());
        let indefinite = m(&[&[-2, 2], &[2, -1]]);
        assert!(!indefinite.is_negative_definite());

        let positive = m(&[&[1]]);
        assert!(!positive.is_negative_definite());
        let negative = m(&[&[-1]]);
        assert!(negative.is_negative_definite());
    }
}

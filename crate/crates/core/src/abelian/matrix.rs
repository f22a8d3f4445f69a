use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Signed, Zero};

use crate::arith::Int;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn diagonal<I: IntoIterator<Item = Int>>(diag: I) -> Self {
        let diag: Vec<Int> = diag.into_iter().collect();
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from nested rows.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R, T>(rows: R) -> Self
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<Int>,
    {
        let grid: Vec<Vec<Int>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n_rows = grid.len();
        let n_cols = grid.first().map_or(0, Vec::len);
        assert!(
            grid.iter().all(|r| r.len() == n_cols),
            "ragged rows in matrix literal"
        );
        IntMatrix {
            rows: n_rows,
            cols: n_cols,
            entries: grid.into_iter().flatten().collect(),
        }
    }

    /// Column vector holding `entries`, shaped `len x 1`.
    pub fn column(entries: Vec<Int>) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    /// A single row, shaped `1 x len`.
    pub fn row(entries: Vec<Int>) -> Self {
        IntMatrix {
            rows: 1,
            cols: entries.len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let e = &mut self.entries[i * self.cols + c];
            *e = -std::mem::take(e);
        }
    }

    /// Rows `start..` as a new matrix.
    pub fn rows_from(&self, start: usize) -> Self {
        let start = start.min(self.rows);
        IntMatrix {
            rows: self.rows - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..].to_vec(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics on non-square input.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn max_abs(&self) -> Int {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Int::zero)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;

    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

//! Smith normal form with unimodular transforms.
//!
//! The pivot is always the nonzero entry of least absolute value in the
//! remaining block, which keeps entry growth small on the dense matrices
//! produced by spectral-sequence pages.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::arith::Int;

/// `u * m * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// `d[0][0] | d[1][1] | ...`, all diagonal entries nonnegative.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = least_pivot(&d, t) else {
                return SmithForm {
                    u,
                    d,
                    v,
                    v_inv,
                    rank,
                };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                v_inv.add_row_multiple(t, j, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &Int::from(1));
                    u.add_row_multiple(t, i, &Int::from(1));
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }
    SmithForm {
        u,
        d,
        v,
        v_inv,
        rank,
    }
}

fn least_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Int)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistk::{Int, IntMatrix};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Cofactor expansion along the first row.
fn det(m: &[Vec<Int>]) -> Int {
    match m.len() {
        0 => Int::one(),
        1 => m[0][0].clone(),
        n => {
            let mut total = Int::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Int>> = m[1..]
                    .iter()
                    .map(|row| (0..n).filter(|&j| j != c).map(|j| row[j].clone()).collect())
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and `s_k = d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<Int> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut divisors = vec![Int::one()];
    for k in 1..=rows.min(cols) {
        let mut g = Int::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<Int>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// `count` matrices of random shape up to `max_dim`, entries in `[-bound, bound]`.
pub fn random_matrices(
    seed: u64,
    count: usize,
    max_dim: usize,
    bound: i64,
    square: bool,
) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=max_dim);
            let c = if square {
                r
            } else {
                rng.gen_range(1..=max_dim)
            };
            IntMatrix::from_rows((0..r).map(|_| {
                (0..c)
                    .map(|_| Int::from(rng.gen_range(-bound..=bound)))
                    .collect::<Vec<_>>()
            }))
        })
        .collect()
}

//! The Pontryagin ring `R = K_0(CP^∞)` in the β-basis, and the homology of
//! the principal `CP^∞`-bundle `P_h` over `S^3`.
//!
//! `β_j` is dual to `(γ - 1)^j`, so the product is dual to the coproduct
//! `u ↦ u⊗1 + 1⊗u + u⊗u` with `u = γ - 1`:
//! `β_i β_j = Σ_k c^k_{ij} β_k` where `c^k_{ij}` is the coefficient of
//! `u^i ⊗ u^j` in `((1+u)⊗(1+u) - 1⊗1)^k`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::abelian::{self, AbGroup, AbelianError, IntMatrix};
use crate::arith::{Int, Nat};

/// Truncation used when none is given.
pub const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KhoramiError {
    #[error("truncation N = {0} is too small (need N >= 2)")]
    TruncationTooSmall(usize),
    #[error("twist h must be positive")]
    ZeroTwist,
    #[error("element of length {got} does not fit ring truncated at N = {trunc}")]
    LengthMismatch { got: usize, trunc: usize },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

fn pascal(rows: usize) -> Vec<Vec<Int>> {
    let mut table: Vec<Vec<Int>> = Vec::with_capacity(rows + 1);
    for n in 0..=rows {
        let mut row = vec![Int::one(); n + 1];
        for k in 1..n {
            row[k] = &table[n - 1][k - 1] + &table[n - 1][k];
        }
        table.push(row);
    }
    table
}

fn choose(table: &[Vec<Int>], n: usize, k: usize) -> Int {
    if k > n {
        Int::zero()
    } else {
        table[n][k].clone()
    }
}

// Σ_m (-1)^(k-m) C(k,m) C(m,i) C(m,j); terms with m < max(i,j) vanish.
fn alternating_sum(table: &[Vec<Int>], k: usize, i: usize, j: usize) -> Int {
    let mut total = Int::zero();
    for m in i.max(j)..=k {
        let term = choose(table, k, m) * choose(table, m, i) * choose(table, m, j);
        if (k - m).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `c^k_{ij}`: the `β_k` coefficient of `β_i β_j`.
pub fn structure_constant(k: usize, i: usize, j: usize) -> Int {
    if k < i.max(j) || k > i + j {
        return Int::zero();
    }
    alternating_sum(&pascal(k), k, i, j)
}

/// An element of `R_N`, as coefficients on `β_0, ..., β_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RModuleElt {
    coeffs: Vec<Int>,
}

impl RModuleElt {
    pub fn new(coeffs: Vec<Int>) -> Self {
        RModuleElt { coeffs }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Int) -> RModuleElt {
        RModuleElt {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

/// The augmentation `R → Z`: `β_0, β_1 ↦ 1`, `β_j ↦ 0` for `j > 1`.
pub fn epsilon(v: &RModuleElt) -> Int {
    v.coeffs.iter().take(2).sum()
}

/// `R` modulo the ideal spanned by `β_k`, `k > N`.
///
/// Products only raise β-indices (`c^k_{ij} = 0` for `k < max(i, j)`), so
/// that span is an ideal and `R_N` is an honest quotient ring.
#[derive(Debug, Clone)]
pub struct TruncatedRing {
    trunc: usize,
    // c^k_{ij} at [(k * dim + i) * dim + j], dim = trunc + 1
    constants: Vec<Int>,
}

impl TruncatedRing {
    pub fn new(trunc: usize) -> Self {
        let dim = trunc + 1;
        let table = pascal(trunc);
        let mut constants = vec![Int::zero(); dim * dim * dim];
        for k in 0..dim {
            for i in 0..=k {
                for j in k.saturating_sub(i)..=k {
                    constants[(k * dim + i) * dim + j] = alternating_sum(&table, k, i, j);
                }
            }
        }
        TruncatedRing { trunc, constants }
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn constant(&self, k: usize, i: usize, j: usize) -> &Int {
        let dim = self.trunc + 1;
        assert!(k < dim && i < dim && j < dim, "index beyond truncation");
        &self.constants[(k * dim + i) * dim + j]
    }

    pub fn basis(&self, j: usize) -> RModuleElt {
        let mut coeffs = vec![Int::zero(); self.trunc + 1];
        coeffs[j] = Int::one();
        RModuleElt { coeffs }
    }

    fn check(&self, v: &RModuleElt) -> Result<(), KhoramiError> {
        if v.len() == self.trunc + 1 {
            Ok(())
        } else {
            Err(KhoramiError::LengthMismatch {
                got: v.len(),
                trunc: self.trunc,
            })
        }
    }

    pub fn multiply(&self, a: &RModuleElt, b: &RModuleElt) -> Result<RModuleElt, KhoramiError> {
        self.check(a)?;
        self.check(b)?;
        let dim = self.trunc + 1;
        let mut out = vec![Int::zero(); dim];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, slot) in out.iter_mut().enumerate().skip(i.max(j)) {
                    let c = self.constant(k, i, j);
                    if !c.is_zero() {
                        *slot += c * &xy;
                    }
                }
            }
        }
        Ok(RModuleElt { coeffs: out })
    }

    /// `R/(hβ_1) ⊗_R Z`, computed as `Z` modulo `ε(hβ_1 β_j)` for every `j`.
    pub fn tensor_with_integers(&self, h: &Nat) -> Result<AbGroup, KhoramiError> {
        if h.is_zero() {
            return Err(KhoramiError::ZeroTwist);
        }
        if self.trunc < 2 {
            return Err(KhoramiError::TruncationTooSmall(self.trunc));
        }
        let generator = self.basis(1).scale(&Int::from(h.clone()));
        let relations = (0..=self.trunc)
            .map(|j| Ok(epsilon(&self.multiply(&generator, &self.basis(j))?)))
            .collect::<Result<Vec<Int>, KhoramiError>>()?;
        Ok(abelian::cokernel(&IntMatrix::row(relations)))
    }
}

/// `R/(hβ_1) ⊗_R Z` in the ring truncated at `trunc`.
pub fn tensor_over_r(h: &Nat, trunc: usize) -> Result<AbGroup, KhoramiError> {
    if trunc < 2 {
        return Err(KhoramiError::TruncationTooSmall(trunc));
    }
    TruncatedRing::new(trunc).tensor_with_integers(h)
}

/// Coefficients `a_n` with `d_3(u^n) = a_n u^(n-1) y` in the cohomology Serre
/// spectral sequence of `CP^∞ → P_h → S^3`, for `n = 0..=n_max`.
///
/// `d_3(u) = h y` and `d_3` is a derivation, so `a_n = a_(n-1) + h`.
pub fn serre_d3_coefficients(h: &Nat, n_max: usize) -> Vec<Int> {
    let h = Int::from(h.clone());
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = Int::zero();
    out.push(acc.clone());
    for _ in 1..=n_max {
        // d(u^n) = d(u) u^(n-1) + u d(u^(n-1))
        acc += &h;
        out.push(acc.clone());
    }
    out
}

/// `H_d(P_h; Z)` from the two-column homology Serre spectral sequence.
pub fn serre_homology_ph(h: &Nat, degree: usize) -> Result<AbGroup, KhoramiError> {
    if h.is_zero() {
        return Err(KhoramiError::ZeroTwist);
    }
    let n_max = degree / 2 + 1;
    let d3 = serre_d3_coefficients(h, n_max);
    // Columns 0 and 3 of E^2; every fiber degree is even. The homology d^3
    // runs E_{3, 2n-2} → E_{0, 2n} as multiplication by a_n.
    let mut total = AbGroup::trivial();
    if degree.is_multiple_of(2) {
        let n = degree / 2;
        let incoming = if n == 0 {
            IntMatrix::zeros(1, 0)
        } else {
            abelian::scalar(d3[n].clone())
        };
        let e_inf = abelian::homology_pair(&IntMatrix::zeros(0, 1), &incoming)?;
        total = total.direct_sum(&e_inf);
    }
    if degree >= 3 && (degree - 3).is_multiple_of(2) {
        let n = (degree - 3) / 2 + 1;
        let outgoing = abelian::scalar(d3[n].clone());
        let e_inf = abelian::homology_pair(&outgoing, &IntMatrix::zeros(1, 0))?;
        total = total.direct_sum(&e_inf);
    }
    Ok(total)
}

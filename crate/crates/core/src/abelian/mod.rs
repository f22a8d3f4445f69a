//! Finitely generated abelian groups in invariant-factor form, and the
//! integer linear algebra that produces them.

mod matrix;
mod snf;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, Int, Nat};

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("group has positive free rank, so its order is infinite")]
    InfiniteOrder,
    #[error("not a chain complex: d_out * d_in is nonzero")]
    NotAComplex,
    #[error("cyclic modulus must be at least 1")]
    ZeroModulus,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct AbGroup {
    free_rank: usize,
    invariant_factors: Vec<Nat>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    #[serde(default)]
    free_rank: usize,
    #[serde(default, with = "crate::natser::vec")]
    invariant_factors: Vec<Nat>,
}

impl TryFrom<RawGroup> for AbGroup {
    type Error = String;

    fn try_from(raw: RawGroup) -> Result<Self, String> {
        let chain_ok = raw.invariant_factors.iter().all(|d| *d >= arith::nat(2))
            && raw
                .invariant_factors
                .windows(2)
                .all(|w| w[1].is_multiple_of(&w[0]));
        if !chain_ok {
            return Err("invariant factors must be >= 2 and form a divisibility chain".into());
        }
        Ok(AbGroup {
            free_rank: raw.free_rank,
            invariant_factors: raw.invariant_factors,
        })
    }
}

impl From<AbGroup> for RawGroup {
    fn from(g: AbGroup) -> Self {
        RawGroup {
            free_rank: g.free_rank,
            invariant_factors: g.invariant_factors,
        }
    }
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/m`; `m = 0` gives `Z`, `m = 1` the trivial group.
    pub fn cyclic(m: Nat) -> Self {
        Self::from_cyclic_orders([m])
    }

    /// Direct sum of cyclic groups `Z/m_i` (zero meaning `Z`), normalized.
    pub fn from_cyclic_orders<I: IntoIterator<Item = Nat>>(orders: I) -> Self {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for m in orders {
            if m.is_zero() {
                free_rank += 1;
            } else if !m.is_one() {
                torsion.push(m);
            }
        }
        AbGroup {
            free_rank,
            invariant_factors: to_invariant_factors(torsion),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[Nat] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// At most one cyclic summand (free or finite).
    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.invariant_factors.len() <= 1
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Result<Nat, AbelianError> {
        if self.free_rank > 0 {
            return Err(AbelianError::InfiniteOrder);
        }
        Ok(self.torsion_order())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Nat {
        self.invariant_factors.iter().product()
    }

    /// Every torsion order is a power of `p` (vacuous for the trivial group).
    pub fn is_p_primary(&self, p: &Nat) -> bool {
        self.free_rank == 0
            && self.invariant_factors.iter().all(|d| {
                let mut rest = d.clone();
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
                rest.is_one()
            })
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let torsion = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        AbGroup {
            free_rank: self.free_rank + other.free_rank,
            invariant_factors: to_invariant_factors(torsion),
        }
    }

    /// The `p`-primary component of the torsion subgroup.
    pub fn p_part(&self, p: &Nat) -> Result<AbGroup, AbelianError> {
        if !arith::is_prime(p) {
            return Err(ArithError::NotPrime(p.clone()).into());
        }
        Ok(Self::from_cyclic_orders(self.invariant_factors.iter().map(
            |d| arith::prime_power(p, arith::valuation_unchecked(p, d)),
        )))
    }

    /// `G ⊗ Z/m`.
    pub fn tensor_cyclic(&self, m: &Nat) -> Result<AbGroup, AbelianError> {
        if m.is_zero() {
            return Err(AbelianError::ZeroModulus);
        }
        let free = std::iter::repeat_n(m.clone(), self.free_rank);
        let torsion = self.invariant_factors.iter().map(|d| d.gcd(m));
        Ok(Self::from_cyclic_orders(free.chain(torsion)))
    }

    /// `Tor(G, Z/m)`.
    pub fn tor_cyclic(&self, m: &Nat) -> Result<AbGroup, AbelianError> {
        if m.is_zero() {
            return Err(AbelianError::ZeroModulus);
        }
        Ok(Self::from_cyclic_orders(
            self.invariant_factors.iter().map(|d| d.gcd(m)),
        ))
    }
}

impl fmt::Display for AbGroup {
    /// `0`, `Z^2`, `(Z/2)^3 ⊕ Z/6`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        let t = &self.invariant_factors;
        while i < t.len() {
            let run = t[i..].iter().take_while(|d| **d == t[i]).count();
            if run == 1 {
                parts.push(format!("Z/{}", t[i]));
            } else {
                parts.push(format!("(Z/{})^{run}", t[i]));
            }
            i += run;
        }
        f.write_str(&parts.join(" ⊕ "))
    }
}

// Pairwise gcd/lcm sweep; preserves the product and yields a divisibility chain.
fn to_invariant_factors(mut orders: Vec<Nat>) -> Vec<Nat> {
    orders.sort();
    let n = orders.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = orders[i].gcd(&orders[j]);
            let l = orders[i].lcm(&orders[j]);
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

/// `Z^rows / image(M)` for `M: Z^cols -> Z^rows`.
pub fn cokernel(m: &IntMatrix) -> AbGroup {
    let s = smith_normal_form(m);
    let free = m.rows() - s.rank;
    let torsion = s.invariant_factors().into_iter().map(|d| d.into_parts().1);
    AbGroup::from_cyclic_orders(torsion.chain(std::iter::repeat_n(Nat::zero(), free)))
}

/// `ker(d_out) / im(d_in)` for `Z^k --d_in--> Z^n --d_out--> Z^m`.
pub fn homology_pair(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<AbGroup, AbelianError> {
    if d_out.cols() != d_in.rows() {
        return Err(AbelianError::Shape(format!(
            "d_out is {}x{}, d_in is {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    if !(d_out * d_in).is_zero() {
        return Err(AbelianError::NotAComplex);
    }
    let s = smith_normal_form(d_out);
    // Coordinates of im(d_in) in the basis given by the columns of V; the
    // first `rank` coordinates vanish because im(d_in) lies in ker(d_out).
    let coords = &s.v_inv * d_in;
    debug_assert!((0..s.rank).all(|i| (0..coords.cols()).all(|j| coords[(i, j)].is_zero())));
    Ok(cokernel(&coords.rows_from(s.rank)))
}

/// Convenience: the 1x1 matrix `[x]`.
pub fn scalar(x: Int) -> IntMatrix {
    IntMatrix::from_rows([[x]])
}

//! Orders of the twisted Hurewicz images `π_j(S^3) → K_j(S^3, h)`.
//!
//! Only the conclusions are encoded: for each `(j, p)` the image is cyclic
//! of order `p^min(ν_p(h), cap)`.
//!
//! The `j = 6` entry at `p = 2` is capped at 1. Reading the injectivity
//! statement on the `Z/4` summand as an image of order 4 when `4 | h` would
//! force `c(Sp(2), 4) = 1`, which contradicts both Sp(2) closed forms
//! (`gcd(4, 14) = 2` and `4 / gcd(4, 6) = 2`); only a nonzero image of
//! order 2 is consistent with them.

use serde::{Deserialize, Serialize};

use super::SegalError;
use crate::arith::{self, Nat};

/// `(j, |π_j(S^3)|)` for the degrees the table covers.
pub const SPHERE_HOMOTOPY_ORDERS: [(u32, u64); 3] = [(4, 2), (6, 12), (10, 15)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurewiczEntry {
    pub degree: u32,
    pub prime: u64,
    /// Largest exponent the image can reach at this prime.
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurewiczTable {
    entries: Vec<HurewiczEntry>,
}

impl Default for HurewiczTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl HurewiczTable {
    pub fn standard() -> Self {
        let entry = |degree, prime, cap| HurewiczEntry { degree, prime, cap };
        HurewiczTable {
            entries: vec![
                // π_4 = Z/2: nonzero exactly when h is even.
                entry(4, 2, 1),
                // π_6 = Z/12
                entry(6, 2, 1),
                entry(6, 3, 1),
                // π_10 = Z/15
                entry(10, 3, 1),
                entry(10, 5, 1),
            ],
        }
    }

    pub fn entries(&self) -> &[HurewiczEntry] {
        &self.entries
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.entries.iter().map(|e| e.degree).collect();
        d.dedup();
        d
    }

    /// Image order at prime `p` when `ν_p(h) = nu`.
    pub fn lookup(&self, degree: u32, p: &Nat, nu: u64) -> Result<Nat, SegalError> {
        self.require_degree(degree)?;
        let cap = self
            .entries
            .iter()
            .find(|e| e.degree == degree && arith::nat(e.prime) == *p)
            .map_or(0, |e| e.cap);
        Ok(arith::prime_power(p, nu.min(cap)))
    }

    /// The `p`-primary part of the image order for twist `h`.
    pub fn image_p_part(&self, degree: u32, h: &Nat, p: &Nat) -> Result<Nat, SegalError> {
        let nu = arith::nu_p(p, h)?;
        self.lookup(degree, p, nu)
    }

    /// Full image order for twist `h`.
    pub fn image_order(&self, degree: u32, h: &Nat) -> Result<Nat, SegalError> {
        self.require_degree(degree)?;
        let mut total = arith::nat(1);
        for e in self.entries.iter().filter(|e| e.degree == degree) {
            total *= self.image_p_part(degree, h, &arith::nat(e.prime))?;
        }
        Ok(total)
    }

    fn require_degree(&self, degree: u32) -> Result<(), SegalError> {
        if self.entries.iter().any(|e| e.degree == degree) {
            Ok(())
        } else {
            Err(SegalError::UnsupportedDegree(degree))
        }
    }
}

/// Order of the image of `π_j(S^3) → K_j(S^3, h)` for `j ∈ {4, 6, 10}`.
pub fn hurewicz_image(j: u32, h: &Nat) -> Result<Nat, SegalError> {
    HurewiczTable::standard().image_order(j, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    #[test]
    fn examples() {
        assert_eq!(hurewicz_image(4, &nat(7)).unwrap(), nat(1));
        assert_eq!(hurewicz_image(4, &nat(6)).unwrap(), nat(2));
        assert_eq!(hurewicz_image(6, &nat(12)).unwrap(), nat(6));
        assert_eq!(hurewicz_image(10, &nat(45)).unwrap(), nat(15));
        assert_eq!(hurewicz_image(10, &nat(8)).unwrap(), nat(1));
        assert!(matches!(
            hurewicz_image(5, &nat(8)),
            Err(SegalError::UnsupportedDegree(5))
        ));
    }

    #[test]
    fn entries_divide_sphere_homotopy() {
        let table = HurewiczTable::standard();
        for e in table.entries() {
            let (_, order) = SPHERE_HOMOTOPY_ORDERS
                .iter()
                .find(|(j, _)| *j == e.degree)
                .expect("degree without homotopy data");
            let p = nat(e.prime);
            let p_share = arith::prime_power(&p, arith::nu_p(&p, &nat(*order)).unwrap());
            assert!((&p_share % arith::prime_power(&p, e.cap)) == nat(0));
        }
    }

    #[test]
    fn trivial_away_from_twist() {
        let table = HurewiczTable::standard();
        for j in table.degrees() {
            for h in [1u64, 7, 49, 77, 121] {
                assert_eq!(table.image_order(j, &nat(h)).unwrap(), nat(1));
            }
        }
    }
}

//! Exact computation of twisted K-theory for compact simple Lie groups of
//! rank two.
//!
//! Three independent routes produce the torsion order `c(G, h)`:
//! closed-form gcd/lcm formulas ([`closedform`]), a prime-local Segal
//! spectral-sequence engine driven by Hurewicz-image data ([`segal`]), and
//! the Pontryagin-ring tensor computation for `SU(2)` ([`khorami`]).
//! Everything runs on arbitrary-precision integers.

pub mod abelian;
pub mod arith;
pub mod closedform;
pub mod khorami;
pub mod natser;
pub mod segal;

pub use abelian::{AbGroup, IntMatrix};
pub use arith::{Int, Nat};

pub use closedform::{Family, GroupId, KResult, Route};

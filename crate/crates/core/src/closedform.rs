//! Closed-form answers for `c(G, h)` and full twisted K-groups.
//!
//! Braun's formula `c(G, h) = h / gcd(h, y(G))` covers every simply
//! connected simple group; Douglas's gcd-of-binomials formulas cover the
//! unitary, symplectic and `G2` cases. `PSp(2) = SO(5)` has its own answer
//! for twists that are odd or `2 mod 4`.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::AbGroup;
use crate::arith::{self, ArithError, Int, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("twist h must be positive")]
    ZeroTwist,
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("{0} has no Douglas formula")]
    NoDouglasFormula(GroupId),
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
    /// `SO(5) = PSp(2)`, the one non-simply-connected entry.
    SO5,
}

impl Family {
    fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroupId", into = "RawGroupId")]
pub struct GroupId {
    family: Family,
    rank_param: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawGroupId {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank_param: Option<u32>,
}

impl TryFrom<RawGroupId> for GroupId {
    type Error = ClosedFormError;

    fn try_from(raw: RawGroupId) -> Result<Self, Self::Error> {
        GroupId::new(raw.family, raw.rank_param)
    }
}

impl From<GroupId> for RawGroupId {
    fn from(g: GroupId) -> Self {
        RawGroupId {
            family: g.family,
            rank_param: g.rank_param,
        }
    }
}

impl GroupId {
    pub fn new(family: Family, rank_param: Option<u32>) -> Result<Self, ClosedFormError> {
        match (family.is_classical(), rank_param) {
            (true, None) => Err(ClosedFormError::InvalidGroup(format!(
                "family {family:?} needs a rank parameter"
            ))),
            (true, Some(0)) => Err(ClosedFormError::InvalidGroup(format!(
                "family {family:?} needs rank parameter n >= 1"
            ))),
            (true, Some(n)) if family == Family::D && n <= 3 => Err(ClosedFormError::InvalidGroup(
                format!("D_{n} requires n > 3"),
            )),
            (false, Some(_)) => Err(ClosedFormError::InvalidGroup(format!(
                "family {family:?} takes no rank parameter"
            ))),
            _ => Ok(GroupId { family, rank_param }),
        }
    }

    /// `SU(n+1)`.
    pub fn a(n: u32) -> Result<Self, ClosedFormError> {
        Self::new(Family::A, Some(n))
    }

    /// `Spin(2n+1)`.
    pub fn b(n: u32) -> Result<Self, ClosedFormError> {
        Self::new(Family::B, Some(n))
    }

    /// `Sp(n)`.
    pub fn c(n: u32) -> Result<Self, ClosedFormError> {
        Self::new(Family::C, Some(n))
    }

    /// `Spin(2n)`, `n > 3`.
    pub fn d(n: u32) -> Result<Self, ClosedFormError> {
        Self::new(Family::D, Some(n))
    }

    /// One of the exceptional families or `SO5`.
    pub fn exceptional(family: Family) -> Result<Self, ClosedFormError> {
        Self::new(family, None)
    }

    pub fn g2() -> Self {
        GroupId {
            family: Family::G2,
            rank_param: None,
        }
    }

    pub fn so5() -> Self {
        GroupId {
            family: Family::SO5,
            rank_param: None,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank_param(&self) -> Option<u32> {
        self.rank_param
    }

    /// Rank of the Lie group.
    pub fn rank(&self) -> u32 {
        match self.family {
            Family::A | Family::B | Family::C | Family::D => self.rank_param.unwrap_or(0),
            Family::G2 | Family::SO5 => 2,
            Family::F4 => 4,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
        }
    }

    pub fn is_simply_connected(&self) -> bool {
        self.family != Family::SO5
    }
}

impl fmt::Display for GroupId {
    /// Lower-case group name: `su3`, `sp2`, `spin7`, `g2`, `so5`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank_param.unwrap_or(0);
        match self.family {
            Family::A => write!(f, "su{}", n + 1),
            Family::B => write!(f, "spin{}", 2 * n + 1),
            Family::C => write!(f, "sp{n}"),
            Family::D => write!(f, "spin{}", 2 * n),
            Family::G2 => f.write_str("g2"),
            Family::F4 => f.write_str("f4"),
            Family::E6 => f.write_str("e6"),
            Family::E7 => f.write_str("e7"),
            Family::E8 => f.write_str("e8"),
            Family::SO5 => f.write_str("so5"),
        }
    }
}

/// Which computation produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Braun's table, and the other closed forms derived from it (`SO5`).
    Braun,
    Douglas,
    Segal,
    Khorami,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Braun => "braun",
            Route::Douglas => "douglas",
            Route::Segal => "segal",
            Route::Khorami => "khorami",
        })
    }
}

/// Twisted K-homology of `group` at twist `h`, per parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KResult {
    pub group: GroupId,
    #[serde(with = "crate::natser")]
    pub h: Nat,
    pub even: AbGroup,
    pub odd: AbGroup,
    pub route: Route,
}

fn require_twist(h: &Nat) -> Result<(), ClosedFormError> {
    if h.is_zero() {
        Err(ClosedFormError::ZeroTwist)
    } else {
        Ok(())
    }
}

// Exceptional entries of Braun's table.
const Y_G2: u64 = 60;
const Y_F4: u64 = 27_720;
const Y_E6: u64 = 27_720;
const Y_E7: u64 = 12_252_240;
const Y_E8: u64 = 2_329_089_562_800;

/// `y(G)` from Braun's table; classical entries are computed lcm folds.
pub fn braun_y(g: &GroupId) -> Result<Nat, ClosedFormError> {
    let n = u64::from(g.rank_param.unwrap_or(0));
    let y = match g.family {
        Family::A => arith::lcm_range(1, n)?,
        Family::B | Family::D => arith::lcm_range(1, 2 * n - 1)?,
        // lcm(1, 2, ..., n, 1, 3, ..., 2n-1)
        Family::C => {
            arith::lcm_range(1, n)?.lcm(&arith::lcm_all((1..=n).map(|i| arith::nat(2 * i - 1))))
        }
        Family::G2 => arith::nat(Y_G2),
        Family::F4 => arith::nat(Y_F4),
        Family::E6 => arith::nat(Y_E6),
        Family::E7 => arith::nat(Y_E7),
        Family::E8 => arith::nat(Y_E8),
        Family::SO5 => {
            return Err(ClosedFormError::InvalidGroup(
                "so5 is not simply connected and has no Braun table entry".into(),
            ))
        }
    };
    Ok(y)
}

/// `c(G, h) = h / gcd(h, y(G))`.
pub fn braun_c(g: &GroupId, h: &Nat) -> Result<Nat, ClosedFormError> {
    require_twist(h)?;
    let y = braun_y(g)?;
    Ok(h / h.gcd(&y))
}

fn require_n(n: u32) -> Result<(), ClosedFormError> {
    if n == 0 {
        Err(ClosedFormError::InvalidGroup(
            "rank parameter n must be >= 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `gcd(binom(h+i, i) - 1 : 1 <= i <= n)`, Douglas's formula for `SU(n+1)`.
pub fn douglas_su(n: u32, h: &Nat) -> Result<Nat, ClosedFormError> {
    require_n(n)?;
    require_twist(h)?;
    let h = Int::from(h.clone());
    let terms: Vec<Int> = (1..=u64::from(n))
        .map(|i| arith::binom(&(&h + Int::from(i)), i) - 1)
        .collect();
    Ok(arith::gcd_all(&terms))
}

fn sp_summand(j: &Int, i: u64) -> Int {
    let k = 2 * (i - 1);
    arith::binom(&(Int::from(2) * j + Int::from(k)), k)
}

/// `gcd(Σ_{-h <= j <= -1} binom(2j + 2(i-1), 2(i-1)) : 1 <= i <= n)`,
/// Douglas's formula for `Sp(n)`.
pub fn douglas_sp(n: u32, h: &Nat) -> Result<Nat, ClosedFormError> {
    require_n(n)?;
    require_twist(h)?;
    let h = Int::from(h.clone());
    let sums: Vec<Int> = (1..=u64::from(n))
        .map(|i| {
            let mut total = Int::zero();
            let mut j = -h.clone();
            while j < Int::zero() {
                total += sp_summand(&j, i);
                j += 1;
            }
            total
        })
        .collect();
    Ok(arith::gcd_all(&sums))
}

/// Incremental evaluation of [`douglas_sp`] for `h = 1, 2, 3, ...`.
///
/// Each step adds the `j = -h` summand to running sums, so a sweep up to
/// `H` costs `O(H)` instead of `O(H^2)`.
#[derive(Debug, Clone)]
pub struct DouglasSpSweep {
    n: u64,
    h: u64,
    sums: Vec<Int>,
}

impl DouglasSpSweep {
    pub fn new(n: u32) -> Result<Self, ClosedFormError> {
        require_n(n)?;
        Ok(DouglasSpSweep {
            n: u64::from(n),
            h: 0,
            sums: vec![Int::zero(); n as usize],
        })
    }
}

impl Iterator for DouglasSpSweep {
    /// `(h, douglas_sp(n, h))`
    type Item = (u64, Nat);

    fn next(&mut self) -> Option<Self::Item> {
        self.h += 1;
        let j = -Int::from(self.h);
        for (idx, sum) in self.sums.iter_mut().enumerate() {
            *sum += sp_summand(&j, idx as u64 + 1);
        }
        debug_assert_eq!(self.sums.len() as u64, self.n);
        Some((self.h, arith::gcd_all(&self.sums)))
    }
}

/// `gcd(h, 2 binom(h,3) + binom(h,2))`, the trinomial form for `Sp(2)`.
pub fn douglas_sp2_closed(h: &Nat) -> Result<Nat, ClosedFormError> {
    require_twist(h)?;
    let hi = Int::from(h.clone());
    let t = Int::from(2) * arith::binom(&hi, 3) + arith::binom(&hi, 2);
    Ok(arith::gcd_all([&hi, &t]))
}

/// Douglas's formula for `G2`:
/// `gcd(h, binom(h+2,2) - 1, (h+1)(h+2)(2h+3)(3h+4)(3h+5)/120 - 1)`.
pub fn douglas_g2(h: &Nat) -> Result<Nat, ClosedFormError> {
    require_twist(h)?;
    let hi = Int::from(h.clone());
    let lin = |a: i64, b: i64| Int::from(a) * &hi + Int::from(b);
    let second = arith::binom(&lin(1, 2), 2) - 1;
    let product = lin(1, 1) * lin(1, 2) * lin(2, 3) * lin(3, 4) * lin(3, 5);
    let (quotient, rem) = product.div_rem(&Int::from(120));
    if !rem.is_zero() {
        return Err(ClosedFormError::Inexact(format!(
            "120 does not divide {product} at h = {h}"
        )));
    }
    let third = quotient - 1;
    Ok(arith::gcd_all([&hi, &second, &third]))
}

/// Douglas's `c(G, h)` where a formula exists (`A_n`, `C_n`, `G2`).
pub fn douglas_c(g: &GroupId, h: &Nat) -> Result<Nat, ClosedFormError> {
    match (g.family, g.rank_param) {
        (Family::A, Some(n)) => douglas_su(n, h),
        (Family::C, Some(n)) => douglas_sp(n, h),
        (Family::G2, _) => douglas_g2(h),
        _ => Err(ClosedFormError::NoDouglasFormula(*g)),
    }
}

/// Full twisted K-groups of `SO(5) = PSp(2)` for `h` odd or `h = 2 mod 4`.
pub fn so5_k(h: &Nat) -> Result<KResult, ClosedFormError> {
    require_twist(h)?;
    let two_adic = h.trailing_zeros().unwrap_or(0);
    if two_adic >= 2 {
        return Err(ClosedFormError::OutOfScope(format!(
            "so5 with 4 | h (h = {h}) is not covered"
        )));
    }
    let odd = arith::odd_part(h)? / h.gcd(&arith::nat(3));
    let mut orders = vec![odd];
    if two_adic == 1 {
        orders.extend(std::iter::repeat_n(arith::nat(2), 4));
    }
    let group = AbGroup::from_cyclic_orders(orders);
    Ok(KResult {
        group: GroupId::so5(),
        h: h.clone(),
        even: group.clone(),
        odd: group,
        route: Route::Braun,
    })
}

/// Exterior algebra on `rank - 1` odd generators tensored with `Z/c`,
/// giving `(Z/c)^(2^(rank-2))` in each parity. Rank one is `SU(2)`, with
/// `Z/c` in even degree only.
pub fn assemble_with_order(
    g: &GroupId,
    h: &Nat,
    c: &Nat,
    route: Route,
) -> Result<KResult, ClosedFormError> {
    if !g.is_simply_connected() {
        return Err(ClosedFormError::InvalidGroup(format!(
            "{g} is not simply connected"
        )));
    }
    let rank = g.rank();
    let (even, odd) = if rank == 1 {
        (AbGroup::cyclic(c.clone()), AbGroup::trivial())
    } else {
        let copies = 1usize << (rank - 2);
        let each = AbGroup::from_cyclic_orders(std::iter::repeat_n(c.clone(), copies));
        (each.clone(), each)
    };
    Ok(KResult {
        group: *g,
        h: h.clone(),
        even,
        odd,
        route,
    })
}

/// Full K-groups from Braun's `c(G, h)`.
pub fn assemble_full(g: &GroupId, h: &Nat) -> Result<KResult, ClosedFormError> {
    if g.family == Family::SO5 {
        return Err(ClosedFormError::InvalidGroup(
            "so5 is not simply connected; use so5_k".into(),
        ));
    }
    let c = braun_c(g, h)?;
    assemble_with_order(g, h, &c, Route::Braun)
}

/// Full K-groups from Douglas's `c(G, h)`.
pub fn assemble_douglas(g: &GroupId, h: &Nat) -> Result<KResult, ClosedFormError> {
    let c = douglas_c(g, h)?;
    assemble_with_order(g, h, &c, Route::Douglas)
}

/// Every group id the closed forms accept, for sweeps: the classical
/// families up to rank parameter `max_n`, then the exceptionals.
pub fn simply_connected_catalog(max_n: u32) -> Vec<GroupId> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(GroupId {
            family: Family::A,
            rank_param: Some(n),
        });
        out.push(GroupId {
            family: Family::B,
            rank_param: Some(n),
        });
        out.push(GroupId {
            family: Family::C,
            rank_param: Some(n),
        });
        if n > 3 {
            out.push(GroupId {
                family: Family::D,
                rank_param: Some(n),
            });
        }
    }
    for family in [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8] {
        out.push(GroupId {
            family,
            rank_param: None,
        });
    }
    out
}

impl KResult {
    /// The per-parity torsion orders.
    pub fn orders(&self) -> (Nat, Nat) {
        (self.even.torsion_order(), self.odd.torsion_order())
    }

    /// Both parities trivial.
    pub fn is_trivial(&self) -> bool {
        self.even.is_trivial() && self.odd.is_trivial()
    }
}

impl fmt::Display for KResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even: {}, odd: {}", self.even, self.odd)
    }
}

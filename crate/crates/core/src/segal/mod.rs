//! A prime-local Segal spectral-sequence engine.
//!
//! For a fibration `F → E → B` with a twist restricting isomorphically to
//! the fiber, `E^2_{p,q} = H_p(B; K_q(F, h)) ⇒ K_{p+q}(E, h)`. Everything
//! here is localized at one prime at a time and K-theory is 2-periodic, so
//! a page is a grid indexed by base column and fiber-degree parity.
//!
//! Differentials are not computed from cell structures. Each
//! [`DifferentialRule`] names a page, a source column and the order of the
//! image of `d^r`, which in every catalog entry is a Hurewicz-image order or
//! forced by it. Sources and targets are cyclic, so an image order fully
//! determines kernel and cokernel.

mod catalog;
mod hurewicz;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbGroup, AbelianError};
use crate::arith::{self, ArithError, Nat};
use crate::closedform::{Family, GroupId, KResult, Route};

pub use catalog::{
    builtin, catalog_from_json, catalog_to_json, g2_via_sphere, g2_via_stiefel, so5, sp2, su3,
};
pub use hurewicz::{hurewicz_image, HurewiczEntry, HurewiczTable, SPHERE_HOMOTOPY_ORDERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegalError {
    #[error("invalid fibration spec `{name}`: {reason}")]
    InvalidSpec { name: String, reason: String },
    #[error("inconsistent rule d^{page} from column {column} ({parity}) at p = {prime}: {reason}")]
    InconsistentRule {
        page: usize,
        column: usize,
        parity: Parity,
        prime: Nat,
        reason: String,
    },
    #[error("entry at column {column} ({parity}) is not cyclic: {group}")]
    NonCyclic {
        column: usize,
        parity: Parity,
        group: AbGroup,
    },
    #[error("no Hurewicz data in degree {0}")]
    UnsupportedDegree(u32),
    #[error("no spectral-sequence catalog entry for {0}")]
    UnsupportedGroup(GroupId),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("twist h must be positive")]
    ZeroTwist,
    #[error("catalog JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of `self + n`.
    pub fn shift(self, n: usize) -> Self {
        if n.is_multiple_of(2) {
            self
        } else {
            match self {
                Parity::Even => Parity::Odd,
                Parity::Odd => Parity::Even,
            }
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Order of one fiber K-group as a function of the twist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberOrder {
    Zero,
    /// Cyclic of order `h / gcd(h, y)`.
    Reduced {
        #[serde(with = "crate::natser")]
        y: Nat,
    },
}

impl FiberOrder {
    pub fn evaluate(&self, h: &Nat) -> Nat {
        match self {
            FiberOrder::Zero => Nat::one(),
            FiberOrder::Reduced { y } => h / h.gcd(y),
        }
    }
}

/// Twisted K-homology of the fiber, per fiber-degree parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberK {
    pub even: FiberOrder,
    pub odd: FiberOrder,
}

impl FiberK {
    pub fn get(&self, parity: Parity) -> &FiberOrder {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn evaluate(&self, h: &Nat) -> (AbGroup, AbGroup) {
        (
            AbGroup::cyclic(self.even.evaluate(h)),
            AbGroup::cyclic(self.odd.evaluate(h)),
        )
    }
}

/// Contributes `p^exponent` at `p = prime` once `ν_p(h) >= min_valuation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationGate {
    pub prime: u64,
    pub exponent: u64,
    pub min_valuation: u64,
}

/// How the image order of a differential depends on `h` and the prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImageOrder {
    /// The Hurewicz image in degree `j`.
    Hurewicz {
        j: u32,
    },
    Gated {
        gates: Vec<ValuationGate>,
    },
    /// The differential is injective on its (current) source.
    Full,
    Product {
        factors: Vec<ImageOrder>,
    },
}

impl ImageOrder {
    /// The image order localized at `p`, given the current source order.
    pub fn at_prime(
        &self,
        h: &Nat,
        p: &Nat,
        source_order: &Nat,
        table: &HurewiczTable,
    ) -> Result<Nat, SegalError> {
        Ok(match self {
            ImageOrder::Hurewicz { j } => table.image_p_part(*j, h, p)?,
            ImageOrder::Gated { gates } => {
                let nu = arith::nu_p(p, h)?;
                gates
                    .iter()
                    .filter(|g| arith::nat(g.prime) == *p && nu >= g.min_valuation)
                    .map(|g| arith::prime_power(p, g.exponent))
                    .product()
            }
            ImageOrder::Full => source_order.clone(),
            ImageOrder::Product { factors } => {
                let mut total = Nat::one();
                for f in factors {
                    total *= f.at_prime(h, p, source_order, table)?;
                }
                total
            }
        })
    }
}

/// `d^page` out of `source_column`, mapping `E_{c,q} → E_{c-page, q+page-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRule {
    pub page: usize,
    pub source_column: usize,
    /// Restrict to sources in fiber degrees of this parity; `None` means both.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_parity: Option<Parity>,
    pub image_order: ImageOrder,
}

impl DifferentialRule {
    pub fn new(page: usize, source_column: usize, image_order: ImageOrder) -> Self {
        DifferentialRule {
            page,
            source_column,
            source_parity: None,
            image_order,
        }
    }

    pub fn on_parity(mut self, parity: Parity) -> Self {
        self.source_parity = Some(parity);
        self
    }

    pub fn target_column(&self) -> Option<usize> {
        self.source_column.checked_sub(self.page)
    }
}

/// A fibration `fiber → total → base` with its spectral-sequence data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationSpec {
    pub name: String,
    pub total: GroupId,
    pub fiber: String,
    pub base: String,
    /// `H_0(B), H_1(B), ..., H_dim(B)`.
    pub base_homology: Vec<AbGroup>,
    pub fiber_k: FiberK,
    pub twist_restricts_isomorphically: bool,
    pub rules: Vec<DifferentialRule>,
}

impl FibrationSpec {
    pub fn base_dimension(&self) -> usize {
        self.base_homology.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), SegalError> {
        let bad = |reason: String| SegalError::InvalidSpec {
            name: self.name.clone(),
            reason,
        };
        if !self.twist_restricts_isomorphically {
            return Err(bad(
                "the twist must restrict isomorphically to the fiber on H^3".into(),
            ));
        }
        if self.base_homology.first() != Some(&AbGroup::free(1)) {
            return Err(bad("H_0 of the base must be Z".into()));
        }
        for rule in &self.rules {
            if rule.page < 2 {
                return Err(bad(format!("differential page {} < 2", rule.page)));
            }
            if rule.target_column().is_none() {
                return Err(bad(format!(
                    "d^{} from column {} has a negative target column",
                    rule.page, rule.source_column
                )));
            }
            if rule.source_column > self.base_dimension() + 1 {
                return Err(bad(format!(
                    "source column {} beyond the base",
                    rule.source_column
                )));
            }
        }
        Ok(())
    }
}

/// `H_p(B; Z/m) = H_p(B) ⊗ Z/m ⊕ Tor(H_{p-1}(B), Z/m)` for every `p`.
pub fn coefficient_row(base_homology: &[AbGroup], m: &Nat) -> Result<Vec<AbGroup>, SegalError> {
    let mut row = Vec::with_capacity(base_homology.len() + 1);
    for p in 0..=base_homology.len() {
        let tensor = match base_homology.get(p) {
            Some(g) => g.tensor_cyclic(m)?,
            None => AbGroup::trivial(),
        };
        let tor = match p.checked_sub(1).and_then(|q| base_homology.get(q)) {
            Some(g) => g.tor_cyclic(m)?,
            None => AbGroup::trivial(),
        };
        row.push(tensor.direct_sum(&tor));
    }
    if row.last().is_some_and(AbGroup::is_trivial) {
        row.pop();
    }
    Ok(row)
}

/// One page of the spectral sequence localized at `prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSState {
    #[serde(with = "crate::natser")]
    pub prime: Nat,
    /// The page index `r` of `E^r` this grid represents.
    pub page: usize,
    #[serde(with = "grid_serde")]
    grid: BTreeMap<(usize, Parity), AbGroup>,
}

impl SSState {
    pub fn entry(&self, column: usize, fiber_parity: Parity) -> AbGroup {
        self.grid
            .get(&(column, fiber_parity))
            .cloned()
            .unwrap_or_else(AbGroup::trivial)
    }

    /// Nontrivial entries as `((column, fiber parity), group)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, Parity), &AbGroup)> {
        self.grid.iter().filter(|(_, g)| !g.is_trivial())
    }

    /// Entries contributing to total degree of the given parity.
    pub fn diagonal(&self, total: Parity) -> Vec<AbGroup> {
        self.entries()
            .filter(|((c, q), _)| q.shift(*c) == total)
            .map(|(_, g)| g.clone())
            .collect()
    }

    /// Product of the orders of the entries in total-degree parity `total`.
    pub fn total_order(&self, total: Parity) -> Nat {
        self.diagonal(total)
            .iter()
            .map(AbGroup::torsion_order)
            .product()
    }

    fn set(&mut self, column: usize, parity: Parity, g: AbGroup) {
        self.grid.insert((column, parity), g);
    }
}

mod grid_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Cell {
        column: usize,
        fiber_parity: Parity,
        group: AbGroup,
    }

    pub fn serialize<S: Serializer>(
        grid: &BTreeMap<(usize, Parity), AbGroup>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(grid.iter().map(|(&(column, fiber_parity), group)| Cell {
            column,
            fiber_parity,
            group: group.clone(),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, Parity), AbGroup>, D::Error> {
        let cells: Vec<Cell> = Vec::deserialize(d)?;
        Ok(cells
            .into_iter()
            .map(|c| ((c.column, c.fiber_parity), c.group))
            .collect())
    }
}

/// The `E^2` page localized at `prime`.
pub fn e2_page(spec: &FibrationSpec, h: &Nat, prime: &Nat) -> Result<SSState, SegalError> {
    spec.validate()?;
    if h.is_zero() {
        return Err(SegalError::ZeroTwist);
    }
    if !arith::is_prime(prime) {
        return Err(ArithError::NotPrime(prime.clone()).into());
    }
    let mut state = SSState {
        prime: prime.clone(),
        page: 2,
        grid: BTreeMap::new(),
    };
    for parity in Parity::BOTH {
        let m = spec.fiber_k.get(parity).evaluate(h);
        for (column, g) in coefficient_row(&spec.base_homology, &m)?
            .into_iter()
            .enumerate()
        {
            state.set(column, parity, g.p_part(prime)?);
        }
    }
    Ok(state)
}

/// Every page from `E^2` on: one state after each page on which a rule
/// fires, the last being `E^∞`.
pub fn run_pages(spec: &FibrationSpec, h: &Nat, prime: &Nat) -> Result<Vec<SSState>, SegalError> {
    run_pages_with(spec, h, prime, &HurewiczTable::standard())
}

pub fn run_pages_with(
    spec: &FibrationSpec,
    h: &Nat,
    prime: &Nat,
    table: &HurewiczTable,
) -> Result<Vec<SSState>, SegalError> {
    let mut state = e2_page(spec, h, prime)?;
    let mut pages = vec![state.clone()];
    let mut rules: Vec<&DifferentialRule> = spec.rules.iter().collect();
    rules.sort_by_key(|r| (r.page, r.source_column));

    let mut i = 0;
    while i < rules.len() {
        let page = rules[i].page;
        while i < rules.len() && rules[i].page == page {
            apply_rule(&mut state, rules[i], h, table)?;
            i += 1;
        }
        state.page = page + 1;
        pages.push(state.clone());
    }
    Ok(pages)
}

/// `E^∞` localized at `prime`.
pub fn run(spec: &FibrationSpec, h: &Nat, prime: &Nat) -> Result<SSState, SegalError> {
    Ok(run_pages(spec, h, prime)?
        .pop()
        .expect("run_pages always yields E^2"))
}

fn cyclic_order(state: &SSState, column: usize, parity: Parity) -> Result<Nat, SegalError> {
    let g = state.entry(column, parity);
    if !g.is_cyclic() || !g.is_finite() {
        return Err(SegalError::NonCyclic {
            column,
            parity,
            group: g,
        });
    }
    Ok(g.torsion_order())
}

fn apply_rule(
    state: &mut SSState,
    rule: &DifferentialRule,
    h: &Nat,
    table: &HurewiczTable,
) -> Result<(), SegalError> {
    let target_column = rule.target_column().expect("validated spec");
    for parity in Parity::BOTH {
        if rule.source_parity.is_some_and(|p| p != parity) {
            continue;
        }
        let target_parity = parity.shift(rule.page - 1);
        let source_group = state.entry(rule.source_column, parity);
        let target_group = state.entry(target_column, target_parity);
        if source_group.is_trivial() && target_group.is_trivial() {
            continue;
        }
        let source = cyclic_order(state, rule.source_column, parity)?;
        let target = cyclic_order(state, target_column, target_parity)?;
        let image = rule.image_order.at_prime(h, &state.prime, &source, table)?;
        if image.is_one() {
            continue;
        }
        let inconsistent = |reason: String| SegalError::InconsistentRule {
            page: rule.page,
            column: rule.source_column,
            parity,
            prime: state.prime.clone(),
            reason,
        };
        if !source.is_multiple_of(&image) {
            return Err(inconsistent(format!(
                "image order {image} does not divide source order {source}"
            )));
        }
        if !target.is_multiple_of(&image) {
            return Err(inconsistent(format!(
                "image order {image} does not divide target order {target}"
            )));
        }
        state.set(
            rule.source_column,
            parity,
            AbGroup::cyclic(&source / &image),
        );
        state.set(
            target_column,
            target_parity,
            AbGroup::cyclic(&target / &image),
        );
    }
    Ok(())
}

/// The catalog entry used for `group`.
pub fn spec_for(group: &GroupId) -> Result<FibrationSpec, SegalError> {
    match (group.family(), group.rank_param()) {
        (Family::A, Some(2)) => Ok(su3()),
        // Spin(5) = Sp(2)
        (Family::C, Some(2)) | (Family::B, Some(2)) => Ok(sp2()),
        (Family::G2, _) => Ok(g2_via_stiefel()),
        (Family::SO5, _) => Ok(so5()),
        _ => Err(SegalError::UnsupportedGroup(*group)),
    }
}

/// Twisted K-groups of `group` from its catalog spectral sequence.
pub fn k_orders(group: &GroupId, h: &Nat) -> Result<KResult, SegalError> {
    k_orders_via(&spec_for(group)?, group, h, None)
}

/// Runs `spec` at every prime dividing `h` (or only at `only_prime`) and
/// assembles the localized `E^∞` pages.
///
/// Group shapes are fixed by theory: cyclic in each parity for simply
/// connected groups, and for `SO5` a sum of the 2-local `E^∞` entries
/// (all of order 2) plus a cyclic odd part.
pub fn k_orders_via(
    spec: &FibrationSpec,
    group: &GroupId,
    h: &Nat,
    only_prime: Option<&Nat>,
) -> Result<KResult, SegalError> {
    if h.is_zero() {
        return Err(SegalError::ZeroTwist);
    }
    let so5 = group.family() == Family::SO5;
    if so5 && h.trailing_zeros().unwrap_or(0) >= 2 {
        return Err(SegalError::OutOfScope(format!(
            "so5 with 4 | h (h = {h}) is not covered"
        )));
    }
    if let Some(p) = only_prime.filter(|p| !arith::is_prime(p)) {
        return Err(ArithError::NotPrime(p.clone()).into());
    }
    let mut even_orders = Vec::new();
    let mut odd_orders = Vec::new();
    for (p, _) in arith::factorize(h)? {
        if only_prime.is_some_and(|q| *q != p) {
            continue;
        }
        let e_inf = run(spec, h, &p)?;
        for (parity, out) in [
            (Parity::Even, &mut even_orders),
            (Parity::Odd, &mut odd_orders),
        ] {
            if so5 && p == arith::nat(2) {
                for g in e_inf.diagonal(parity) {
                    if g.torsion_order() != arith::nat(2) {
                        return Err(SegalError::OutOfScope(format!(
                            "2-local E^∞ entry {g} for so5 is not of order 2"
                        )));
                    }
                    out.push(arith::nat(2));
                }
            } else {
                out.push(e_inf.total_order(parity));
            }
        }
    }
    let assemble = |orders: Vec<Nat>| {
        if so5 {
            AbGroup::from_cyclic_orders(orders)
        } else {
            AbGroup::cyclic(orders.into_iter().product())
        }
    };
    Ok(KResult {
        group: *group,
        h: h.clone(),
        even: assemble(even_orders),
        odd: assemble(odd_orders),
        route: Route::Segal,
    })
}

//! The built-in fibrations, and their JSON form.
//!
//! A catalog file is a JSON array of [`FibrationSpec`] objects:
//!
//! ```json
//! [{
//!   "name": "su3",
//!   "total": {"family": "A", "rank_param": 2},
//!   "fiber": "SU(2)",
//!   "base": "S^5",
//!   "base_homology": [{"free_rank": 1}, {}, {}, {}, {}, {"free_rank": 1}],
//!   "fiber_k": {"even": {"kind": "reduced", "y": 1}, "odd": {"kind": "zero"}},
//!   "twist_restricts_isomorphically": true,
//!   "rules": [{"page": 5, "source_column": 5, "image_order": {"kind": "hurewicz", "j": 4}}]
//! }]
//! ```

use super::{
    DifferentialRule, FiberK, FiberOrder, FibrationSpec, ImageOrder, Parity, SegalError,
    ValuationGate,
};
use crate::abelian::AbGroup;
use crate::arith::nat;
use crate::closedform::GroupId;

fn homology(dim: usize, nonzero: &[(usize, AbGroup)]) -> Vec<AbGroup> {
    let mut h = vec![AbGroup::trivial(); dim + 1];
    h[0] = AbGroup::free(1);
    for (degree, g) in nonzero {
        h[*degree] = g.clone();
    }
    h
}

fn sphere(n: usize) -> Vec<AbGroup> {
    homology(n, &[(n, AbGroup::free(1))])
}

/// `K(S^3, h)`: `Z/h` in even degrees, 0 in odd.
fn su2_fiber() -> FiberK {
    FiberK {
        even: FiberOrder::Reduced { y: nat(1) },
        odd: FiberOrder::Zero,
    }
}

fn gate(prime: u64, min_valuation: u64) -> ValuationGate {
    ValuationGate {
        prime,
        exponent: 1,
        min_valuation,
    }
}

pub fn su3() -> FibrationSpec {
    FibrationSpec {
        name: "su3".into(),
        total: GroupId::a(2).expect("valid"),
        fiber: "SU(2)".into(),
        base: "S^5".into(),
        base_homology: sphere(5),
        fiber_k: su2_fiber(),
        twist_restricts_isomorphically: true,
        rules: vec![DifferentialRule::new(5, 5, ImageOrder::Hurewicz { j: 4 })],
    }
}

pub fn sp2() -> FibrationSpec {
    FibrationSpec {
        name: "sp2".into(),
        total: GroupId::c(2).expect("valid"),
        fiber: "Sp(1)".into(),
        base: "S^7".into(),
        base_homology: sphere(7),
        fiber_k: su2_fiber(),
        twist_restricts_isomorphically: true,
        rules: vec![DifferentialRule::new(7, 7, ImageOrder::Hurewicz { j: 6 })],
    }
}

/// `SU(2) → G2 → V_{7,2}`.
pub fn g2_via_stiefel() -> FibrationSpec {
    FibrationSpec {
        name: "g2_via_stiefel".into(),
        total: GroupId::g2(),
        fiber: "SU(2)".into(),
        base: "V_{7,2}".into(),
        base_homology: homology(11, &[(5, AbGroup::cyclic(nat(2))), (11, AbGroup::free(1))]),
        fiber_k: su2_fiber(),
        twist_restricts_isomorphically: true,
        rules: vec![
            DifferentialRule::new(5, 5, ImageOrder::Hurewicz { j: 4 }),
            // Tied to the column-5 differential by the module structure.
            DifferentialRule::new(5, 11, ImageOrder::Hurewicz { j: 4 }),
            DifferentialRule::new(
                11,
                11,
                ImageOrder::Product {
                    factors: vec![
                        ImageOrder::Hurewicz { j: 10 },
                        ImageOrder::Gated {
                            gates: vec![gate(2, 2)],
                        },
                    ],
                },
            ),
        ],
    }
}

/// `SU(3) → G2 → S^6`.
///
/// `K(SU(3), h)` is `Z/(h/gcd(h, 2))` in both parities, so `d^6` has two
/// components. The one out of even fiber degree is an isomorphism; the one
/// out of odd fiber degree has image order `gcd(h, 60) / gcd(h, 2)` at each
/// prime (with the 2 appearing only once `4 | h`).
pub fn g2_via_sphere() -> FibrationSpec {
    FibrationSpec {
        name: "g2_via_sphere".into(),
        total: GroupId::g2(),
        fiber: "SU(3)".into(),
        base: "S^6".into(),
        base_homology: sphere(6),
        fiber_k: FiberK {
            even: FiberOrder::Reduced { y: nat(2) },
            odd: FiberOrder::Reduced { y: nat(2) },
        },
        twist_restricts_isomorphically: true,
        rules: vec![
            DifferentialRule::new(6, 6, ImageOrder::Full).on_parity(Parity::Even),
            DifferentialRule::new(
                6,
                6,
                ImageOrder::Gated {
                    gates: vec![gate(2, 2), gate(3, 1), gate(5, 1)],
                },
            )
            .on_parity(Parity::Odd),
        ],
    }
}

/// `S^3 → SO(5) → RP^7`.
///
/// At odd primes this agrees with `Sp(2)`. At 2 only `2 || h` is covered,
/// where the sequence collapses.
pub fn so5() -> FibrationSpec {
    let z2 = AbGroup::cyclic(nat(2));
    FibrationSpec {
        name: "so5".into(),
        total: GroupId::so5(),
        fiber: "S^3".into(),
        base: "RP^7".into(),
        base_homology: homology(
            7,
            &[
                (1, z2.clone()),
                (3, z2.clone()),
                (5, z2),
                (7, AbGroup::free(1)),
            ],
        ),
        fiber_k: su2_fiber(),
        twist_restricts_isomorphically: true,
        rules: vec![DifferentialRule::new(
            7,
            7,
            ImageOrder::Gated {
                gates: vec![gate(3, 1)],
            },
        )],
    }
}

pub fn builtin() -> Vec<FibrationSpec> {
    vec![su3(), sp2(), g2_via_stiefel(), g2_via_sphere(), so5()]
}

pub fn catalog_to_json(specs: &[FibrationSpec]) -> String {
    serde_json::to_string_pretty(specs).expect("catalog serializes")
}

/// Parses and validates a catalog.
pub fn catalog_from_json(text: &str) -> Result<Vec<FibrationSpec>, SegalError> {
    let specs: Vec<FibrationSpec> =
        serde_json::from_str(text).map_err(|e| SegalError::Json(e.to_string()))?;
    for spec in &specs {
        spec.validate()?;
    }
    Ok(specs)
}

mod common;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use twistk::abelian::{cokernel, homology_pair, smith_normal_form};
use twistk::{AbGroup, Int, IntMatrix, Nat};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(IntMatrix::from_rows)
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, n), n)
            .prop_map(IntMatrix::from_rows)
    })
}

/// Products of elementary operations, so determinant ±1.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (a, b, f, neg) in ops {
            if a != b {
                m.add_row_multiple(a, b, &Int::from(f));
            } else if neg {
                m.negate_row(a);
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_factorization(m in matrix(6, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(m.cols()));
        prop_assert_eq!(s.u.determinant().abs(), Int::from(1));
    }

    #[test]
    fn snf_chain_and_minors(m in matrix(5, 9)) {
        let s = smith_normal_form(&m);
        let factors = s.invariant_factors();
        prop_assert!(factors.iter().all(|d| d.is_positive()));
        prop_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        prop_assert_eq!(factors, common::invariant_factors_by_minors(&m));
    }

    #[test]
    fn determinant_is_cokernel_order(m in square(6, 9)) {
        let det = m.determinant();
        let coker = cokernel(&m);
        if det.is_zero() {
            prop_assert!(!coker.is_finite());
        } else {
            prop_assert_eq!(Int::from(coker.order().unwrap()), det.abs());
        }
    }

    #[test]
    fn cokernel_unchanged_by_unimodular(
        (m, u, v) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (
            prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(IntMatrix::from_rows),
            unimodular(r),
            unimodular(c),
        ))
    ) {
        prop_assert_eq!(cokernel(&(&(&u * &m) * &v)), cokernel(&m));
    }

    #[test]
    fn kernel_inclusion_is_exact(m in matrix(5, 9)) {
        // The trailing columns of V span ker(m).
        let s = smith_normal_form(&m);
        let kernel_basis = IntMatrix::from_rows(
            (0..m.cols()).map(|i| (s.rank..m.cols()).map(|j| s.v[(i, j)].clone()).collect::<Vec<_>>()),
        );
        if kernel_basis.cols() > 0 {
            let h = homology_pair(&m, &kernel_basis).unwrap();
            prop_assert!(h.is_trivial());
        }
    }

    #[test]
    fn cyclic_orders_normalize(orders in prop::collection::vec(0u64..=60, 0..6)) {
        let g = AbGroup::from_cyclic_orders(orders.iter().map(|&m| Nat::from(m)));
        let zeros = orders.iter().filter(|&&m| m == 0).count();
        prop_assert_eq!(g.free_rank(), zeros);
        let product: Nat = orders.iter().filter(|&&m| m > 0).map(|&m| Nat::from(m)).product();
        prop_assert_eq!(g.torsion_order(), product);
        prop_assert!(g.invariant_factors().windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }
}

#[test]
fn seeded_minors_oracle() {
    for m in common::random_matrices(7, 300, 5, 9, false) {
        let s = smith_normal_form(&m);
        assert_eq!(
            s.invariant_factors(),
            common::invariant_factors_by_minors(&m),
            "{m:?}"
        );
    }
}

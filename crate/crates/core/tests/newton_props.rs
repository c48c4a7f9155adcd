mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use troploc_core::{LatticeVector, RationalVector, Series};

fn pair(n: usize) -> impl Strategy<Value = (Series, Series)> {
    (common::series(n, 6), common::series(n, 6))
}

fn interior_combination(rays: &[LatticeVector], coeffs: &[i64]) -> LatticeVector {
    rays.iter()
        .zip(coeffs.iter().cycle())
        .fold(LatticeVector::zero(rays[0].role(), rays[0].rank()), |acc, (r, k)| {
            acc.add(&r.scale(&BigInt::from(*k))).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minkowski_law((f, g) in (2usize..=3).prop_flat_map(pair)) {
        let fg = f.multiply(&g).unwrap();
        prop_assume!(!fg.is_empty());
        let lhs = fg.newton_polyhedron().unwrap();
        let rhs = f.newton_polyhedron().unwrap().minkowski_sum(&g.newton_polyhedron().unwrap()).unwrap();
        prop_assert_eq!(lhs.vertices(), rhs.vertices());
    }

    #[test]
    fn initial_forms_multiply((f, g, w) in (2usize..=3).prop_flat_map(|n| (common::series(n, 6), common::series(n, 6), common::interior_weight(n)))) {
        let fg = f.multiply(&g).unwrap();
        let lhs = fg.initial_form(&w).unwrap();
        let rhs = f.initial_form(&w).unwrap().multiply(&g.initial_form(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let (mf, _) = f.min_weight(&w).unwrap();
        let (mg, _) = g.min_weight(&w).unwrap();
        let (mfg, _) = fg.min_weight(&w).unwrap();
        prop_assert_eq!(mfg, mf + mg);
    }

    #[test]
    fn newton_fan_labels_are_constant(
        f in (2usize..=3).prop_flat_map(|n| common::interior_series(n, 4)),
        c1 in prop::collection::vec(1i64..=30, 3),
        c2 in prop::collection::vec(1i64..=30, 3),
    ) {
        let nf = f.newton_fan().unwrap();
        for c in nf.fan.maximal_cones() {
            let w1 = interior_combination(c.rays(), &c1);
            let w2 = interior_combination(c.rays(), &c2);
            let (_, d1) = f.min_weight(&w1).unwrap();
            let (_, d2) = f.min_weight(&w2).unwrap();
            prop_assert_eq!(&d1, &d2);
            prop_assert_eq!(nf.label_of(c).unwrap(), d1.as_slice());
        }
    }

    #[test]
    fn newton_fan_covers_the_orthant(
        f in (2usize..=3).prop_flat_map(|n| common::series(n, 6)),
        pts in prop::collection::vec(prop::collection::vec(0i64..=25, 3), 20),
    ) {
        let fan = f.newton_fan().unwrap().fan;
        let n = f.rank();
        for p in pts {
            let v = RationalVector::from_ints(p[..n].iter().copied());
            prop_assert!(fan.support_contains(&v).unwrap());
        }
    }
}

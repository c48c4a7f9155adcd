#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use troploc_core::{Cone, LatticeVector, Role, Series};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn nonzero_coef() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

/// Any nonzero series over the `n`-orthant with at most `max_terms` terms.
pub fn series(n: usize, max_terms: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((prop::collection::vec(0i64..=4, n), nonzero_coef()), 1..=max_terms)
        .prop_filter_map("cancelled to zero", move |terms| {
            let orthant = Cone::orthant(n, Role::Weight).unwrap();
            let s = Series::new(&orthant, terms.into_iter().map(|(e, c)| (LatticeVector::exponent(e), q(c)))).unwrap();
            (!s.is_empty()).then_some(s)
        })
}

/// A series with a pure power of every variable and no constant term.
pub fn interior_series(n: usize, extra: usize) -> impl Strategy<Value = Series> {
    (
        prop::collection::vec((1i64..=5, nonzero_coef()), n),
        prop::collection::vec((prop::collection::vec(0i64..=4, n), nonzero_coef()), 0..=extra),
    )
        .prop_filter_map("degenerate", move |(pure, extra)| {
            let orthant = Cone::orthant(n, Role::Weight).unwrap();
            let mut terms = Vec::new();
            for (i, (a, c)) in pure.into_iter().enumerate() {
                let mut e = vec![0i64; n];
                e[i] = a;
                terms.push((LatticeVector::exponent(e), q(c)));
            }
            for (e, c) in extra {
                if e.iter().all(|&x| x == 0) {
                    continue;
                }
                terms.push((LatticeVector::exponent(e), q(c)));
            }
            let s = Series::new(&orthant, terms).unwrap();
            s.is_interior_divisor().unwrap().then_some(s)
        })
}

/// A lattice point of the open `n`-orthant.
pub fn interior_weight(n: usize) -> impl Strategy<Value = LatticeVector> {
    prop::collection::vec(1i64..=20, n).prop_map(LatticeVector::weight)
}

/// A full-dimensional strictly convex cone generated by a few random vectors
/// of the open orthant together with the unit vectors.
pub fn random_cone(n: usize) -> impl Strategy<Value = Cone> {
    prop::collection::vec(prop::collection::vec(-3i64..=6, n), 0..=3).prop_filter_map("not pointed", move |extra| {
        let mut gens: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(Role::Weight, n, i)).collect();
        gens.extend(extra.into_iter().map(LatticeVector::weight));
        let c = Cone::from_generators(n, Role::Weight, &gens).ok()?;
        (c.is_strictly_convex() && c.is_full_dimensional()).then_some(c)
    })
}

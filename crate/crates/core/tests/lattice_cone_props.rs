mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use troploc_core::{pairing, Cone, LatticeVector, Role};

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Inverse of a unimodular integer matrix via cofactors.
fn unimodular_inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let d = det(m);
    assert!(d == 1 || d == -1);
    let mut inv = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = sign * det(&minor) * d;
        }
    }
    inv
}

/// Columns of a random unimodular matrix built from elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k) in ops {
            if i != j {
                for r in 0..n {
                    m[r][j] += k * m[r][i];
                }
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn primitive_is_idempotent(v in prop::collection::vec(-60i64..=60, 1..5)) {
        let v = LatticeVector::weight(v);
        prop_assume!(!v.is_zero());
        let p = v.primitive().unwrap();
        prop_assert_eq!(p.primitive().unwrap(), p.clone());
        prop_assert!(p.is_primitive());
    }

    #[test]
    fn pairing_is_bilinear(
        w1 in prop::collection::vec(-20i64..=20, 3),
        w2 in prop::collection::vec(-20i64..=20, 3),
        m in prop::collection::vec(-20i64..=20, 3),
        a in -9i64..=9,
        b in -9i64..=9,
    ) {
        let (w1, w2, m) = (LatticeVector::weight(w1), LatticeVector::weight(w2), LatticeVector::exponent(m));
        let combo = w1.scale(&BigInt::from(a)).add(&w2.scale(&BigInt::from(b))).unwrap();
        let lhs = pairing(&combo, &m).unwrap();
        let rhs = BigInt::from(a) * pairing(&w1, &m).unwrap() + BigInt::from(b) * pairing(&w2, &m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn biduality(c in (2usize..=4).prop_flat_map(common::random_cone)) {
        let dd = c.dual().dual();
        prop_assert!(dd.contains_cone(&c) && c.contains_cone(&dd));
        prop_assert_eq!(dd, c);
    }

    #[test]
    fn faces_are_intersections(c in (2usize..=3).prop_flat_map(common::random_cone)) {
        for f in c.faces().unwrap() {
            prop_assert_eq!(&c.intersect(&f).unwrap(), &f);
            prop_assert!(f.rays().iter().all(|r| c.rays().contains(r)));
            prop_assert!(f.is_face_of(&c).unwrap());
        }
    }

    #[test]
    fn regular_cones_extend_to_bases(
        (n, m, k) in (2usize..=3).prop_flat_map(|n| (Just(n), unimodular(n), 1..=n))
    ) {
        let cols: Vec<LatticeVector> = (0..n).map(|j| LatticeVector::weight((0..n).map(|i| m[i][j]))).collect();
        let c = Cone::from_generators(n, Role::Weight, &cols[..k]).unwrap();
        prop_assert!(c.is_regular().unwrap());
        prop_assert_eq!(c.dim(), k);

        // Dual basis rows m* with m*·col_j = δ_ij; the dual cone is generated by
        // the first k of them and ± the rest.
        let inv = unimodular_inverse(&m);
        let mut gens = Vec::new();
        for (i, row) in inv.iter().enumerate() {
            let v = LatticeVector::exponent(row.iter().copied());
            if i >= k {
                gens.push(v.scale(&BigInt::from(-1)));
            }
            gens.push(v);
        }
        let expected = Cone::from_generators(n, Role::Exponent, &gens).unwrap();
        prop_assert_eq!(c.dual(), expected);
        prop_assert_eq!(c.dual().rays().len() + c.dual().lineality().len(), k + (n - k));
    }
}

//! Double description: generators of `{x : a·x >= 0 for every row a}`.
//!
//! Incremental: start from the whole space (lineality = unit vectors) and cut
//! by one half-space at a time. While a lineality direction is not orthogonal
//! to the new row we pivot on it; otherwise rays are split into positive,
//! zero and negative sides and adjacent positive/negative pairs are combined.
//! Adjacency uses the combinatorial test on zero sets.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::{dot, make_primitive};

#[derive(Debug, Clone, Default)]
pub(crate) struct DdOutput {
    /// Extreme rays modulo the lineality space, primitive integer vectors.
    pub rays: Vec<Vec<BigInt>>,
    /// Basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    // a*x - b*y
    let mut out: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| a * p - b * q).collect();
    make_primitive(&mut out);
    out
}

pub(crate) fn dd(n: usize, rows: &[Vec<BigInt>]) -> DdOutput {
    let m = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        if a.iter().all(Zero::is_zero) {
            for r in rays.iter_mut() {
                r.zeros.insert(k);
            }
            continue;
        }
        if let Some(pi) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pi);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                for c in l0.iter_mut() {
                    *c = -c.clone();
                }
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &al, &l0);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al0, &r.v, &ar, &l0);
                }
                r.zeros.insert(k);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(0..k);
            make_primitive(&mut l0);
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].zeros));
                if !adjacent {
                    continue;
                }
                // (a·p) q - (a·q) p lies on the hyperplane a·x = 0.
                let v = combine(&vals[p], &rays[q].v, &vals[q], &rays[p].v);
                let mut zeros = common;
                zeros.insert(k);
                fresh.push(Ray { v, zeros });
            }
        }

        let mut kept = Vec::with_capacity(rays.len() - neg.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    DdOutput {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn orthant() {
        let out = dd(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn half_plane() {
        let out = dd(2, &[v(&[2, 3])]);
        assert_eq!(out.lineality.len(), 1);
        assert_eq!(out.rays.len(), 1);
        assert!(dot(&out.lineality[0], &v(&[2, 3])).is_zero());
        assert!(dot(&out.rays[0], &v(&[2, 3])).is_positive());
    }

    #[test]
    fn square_pyramid() {
        // Cone over a square: 4 facets in rank 3.
        let rows = [v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])];
        let out = dd(3, &rows);
        assert!(out.lineality.is_empty());
        let mut rays = out.rays;
        rays.sort();
        assert_eq!(
            rays,
            vec![v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn contradictory_rows_give_origin() {
        let out = dd(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]);
        assert!(out.rays.is_empty());
        assert!(out.lineality.is_empty());
    }
}

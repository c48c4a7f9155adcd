//! Rational polyhedral cones stored with both generator and facet descriptions.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dd::dd;
use crate::error::{Error, Result};
use crate::lattice::{check_rank, dot, LatticeVector, RationalVector, Role};
use crate::linalg::{canonical_row_basis, combinations, determinant, project_out, IntMatrix};

/// Default bound on the ambient rank accepted by cone constructors.
pub const DEFAULT_RANK_LIMIT: usize = 8;

static RANK_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_RANK_LIMIT);

/// Changes the ambient rank cap for all subsequently constructed cones.
pub fn set_rank_limit(limit: usize) {
    RANK_LIMIT.store(limit, Ordering::Relaxed);
}

pub fn rank_limit() -> usize {
    RANK_LIMIT.load(Ordering::Relaxed)
}

fn check_limit(rank: usize) -> Result<()> {
    let limit = rank_limit();
    if rank > limit {
        Err(Error::RankLimit { rank, limit })
    } else {
        Ok(())
    }
}

/// A rational polyhedral cone in `N_R` or `M_R`.
///
/// All descriptions are canonical: lineality and equation bases are reduced
/// row echelon rows scaled to primitive integers, rays and facet normals are
/// primitive, orthogonal to the respective linear part and sorted. Two cones
/// are therefore equal iff their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
    rank: usize,
    role: Role,
}

fn canonical(rays: Vec<Vec<BigInt>>, lin: &[Vec<BigInt>], n: usize) -> (IntMatrix, IntMatrix) {
    let lin = canonical_row_basis(lin, n);
    let rays: BTreeSet<Vec<BigInt>> = rays
        .iter()
        .map(|r| project_out(r, &lin))
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    (rays.into_iter().collect(), lin)
}

fn with_negatives(rows: &[Vec<BigInt>], extra: &[Vec<BigInt>]) -> IntMatrix {
    let mut out = rows.to_vec();
    for e in extra {
        out.push(e.clone());
        out.push(e.iter().map(|c| -c).collect());
    }
    out
}

fn tag(role: Role, rows: IntMatrix) -> Vec<LatticeVector> {
    rows.into_iter().map(|r| LatticeVector::new(role, r)).collect()
}

fn raw(vs: &[LatticeVector]) -> IntMatrix {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

impl Cone {
    fn assemble(rank: usize, role: Role, primal: (IntMatrix, IntMatrix), dual: (IntMatrix, IntMatrix)) -> Cone {
        let (rays, lin) = canonical(primal.0, &primal.1, rank);
        let (facets, eqs) = canonical(dual.0, &dual.1, rank);
        Cone {
            dim: rank - eqs.len(),
            rays: tag(role, rays),
            lineality: tag(role, lin),
            facets: tag(role.dual(), facets),
            equations: tag(role.dual(), eqs),
            rank,
            role,
        }
    }

    /// The cone generated by `gens` (with nonnegative coefficients).
    pub fn from_generators(rank: usize, role: Role, gens: &[LatticeVector]) -> Result<Cone> {
        check_limit(rank)?;
        for g in gens {
            check_rank(rank, g.rank())?;
        }
        Self::from_vrep(rank, role, raw(gens), Vec::new())
    }

    /// `{v : u·v >= 0 for u in ineqs, e·v = 0 for e in eqs}`; normals live in the dual lattice.
    pub fn from_inequalities(
        rank: usize,
        role: Role,
        ineqs: &[LatticeVector],
        eqs: &[LatticeVector],
    ) -> Result<Cone> {
        check_limit(rank)?;
        for g in ineqs.iter().chain(eqs) {
            check_rank(rank, g.rank())?;
        }
        Self::from_hrep(rank, role, raw(ineqs), raw(eqs))
    }

    fn from_vrep(rank: usize, role: Role, rays: IntMatrix, lin: IntMatrix) -> Result<Cone> {
        let d = dd(rank, &with_negatives(&rays, &lin));
        let p = dd(rank, &with_negatives(&d.rays, &d.lineality));
        Ok(Self::assemble(rank, role, (p.rays, p.lineality), (d.rays, d.lineality)))
    }

    fn from_hrep(rank: usize, role: Role, ineqs: IntMatrix, eqs: IntMatrix) -> Result<Cone> {
        let p = dd(rank, &with_negatives(&ineqs, &eqs));
        let d = dd(rank, &with_negatives(&p.rays, &p.lineality));
        Ok(Self::assemble(rank, role, (p.rays, p.lineality), (d.rays, d.lineality)))
    }

    /// The nonnegative orthant spanned by the standard basis.
    pub fn orthant(rank: usize, role: Role) -> Result<Cone> {
        let gens: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(role, rank, i)).collect();
        Self::from_generators(rank, role, &gens)
    }

    pub fn zero(rank: usize, role: Role) -> Result<Cone> {
        Self::from_generators(rank, role, &[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive extreme rays (modulo the lineality space).
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    /// Primitive inward facet normals, in the dual lattice.
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    /// Basis of the linear forms vanishing on the cone, in the dual lattice.
    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `{m : w·m >= 0 for all w in self}`, in the dual lattice.
    pub fn dual(&self) -> Cone {
        Cone {
            dim: self.rank - self.lineality.len(),
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
            rank: self.rank,
            role: self.role.dual(),
        }
    }

    fn eval(&self, v: &[BigInt]) -> (bool, bool) {
        // (contained, in relative interior)
        if self.equations.iter().any(|e| !dot(e.coords(), v).is_zero()) {
            return (false, false);
        }
        let mut interior = true;
        for u in &self.facets {
            let s = dot(u.coords(), v);
            if s.is_negative() {
                return (false, false);
            }
            if s.is_zero() {
                interior = false;
            }
        }
        (true, interior)
    }

    fn scaled(&self, v: &RationalVector) -> Result<Vec<BigInt>> {
        check_rank(self.rank, v.rank())?;
        Ok(v.clear_denominators(self.role).into_coords())
    }

    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        Ok(self.eval(&self.scaled(v)?).0)
    }

    pub fn relative_interior_contains(&self, v: &RationalVector) -> Result<bool> {
        Ok(self.eval(&self.scaled(v)?).1)
    }

    pub fn contains_lattice(&self, v: &LatticeVector) -> Result<bool> {
        check_rank(self.rank, v.rank())?;
        Ok(self.eval(v.coords()).0)
    }

    pub fn relative_interior_contains_lattice(&self, v: &LatticeVector) -> Result<bool> {
        check_rank(self.rank, v.rank())?;
        Ok(self.eval(v.coords()).1)
    }

    /// True iff every point of `other` lies in `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rank == self.rank
            && other.rays.iter().all(|r| self.eval(r.coords()).0)
            && other.lineality.iter().all(|l| {
                let neg: Vec<BigInt> = l.coords().iter().map(|c| -c).collect();
                self.eval(l.coords()).0 && self.eval(&neg).0
            })
    }

    /// Sum of the primitive extreme rays: a lattice point in the relative
    /// interior of a strictly convex cone.
    pub fn witness(&self) -> LatticeVector {
        self.rays
            .iter()
            .fold(LatticeVector::zero(self.role, self.rank), |acc, r| {
                acc.add(r).expect("rank checked on construction")
            })
    }

    /// Faces as subsets of ray indices, including the empty set for the apex.
    pub(crate) fn face_ray_sets(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex);
        }
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(face) = queue.pop() {
            for u in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| dot(u.coords(), self.rays[i].coords()).is_zero())
                    .collect();
                if sub.len() < face.len() && seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        // Cones of dimension at most one have no facet cutting down to the apex.
        seen.insert(Vec::new());
        Ok(seen.into_iter().collect())
    }

    /// All faces, from the zero cone up to the cone itself, sorted by dimension.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        let mut faces = self
            .face_ray_sets()?
            .into_iter()
            .map(|idx| {
                let gens: Vec<LatticeVector> = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_generators(self.rank, self.role, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        faces.sort();
        Ok(faces)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_rank(self.rank, other.rank)?;
        let ineqs: IntMatrix = raw(&self.facets).into_iter().chain(raw(&other.facets)).collect();
        let eqs: IntMatrix = raw(&self.equations).into_iter().chain(raw(&other.equations)).collect();
        Self::from_hrep(self.rank, self.role, ineqs, eqs)
    }

    /// Smallest cone containing both.
    pub fn join(&self, other: &Cone) -> Result<Cone> {
        check_rank(self.rank, other.rank)?;
        let rays: IntMatrix = raw(&self.rays).into_iter().chain(raw(&other.rays)).collect();
        let lin: IntMatrix = raw(&self.lineality).into_iter().chain(raw(&other.lineality)).collect();
        Self::from_vrep(self.rank, self.role, rays, lin)
    }

    /// True iff `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        if !other.contains_cone(self) {
            return Ok(false);
        }
        let vanishing: Vec<&LatticeVector> = other
            .facets
            .iter()
            .filter(|u| {
                self.rays
                    .iter()
                    .chain(&self.lineality)
                    .all(|r| dot(u.coords(), r.coords()).is_zero())
            })
            .collect();
        let gens: IntMatrix = other
            .rays
            .iter()
            .filter(|r| vanishing.iter().all(|u| dot(u.coords(), r.coords()).is_zero()))
            .map(|r| r.coords().to_vec())
            .collect();
        let smallest = Self::from_vrep(self.rank, self.role, gens, raw(&other.lineality))?;
        Ok(&smallest == self)
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_strictly_convex() && self.rays.len() == self.dim
    }

    /// True iff the primitive rays extend to a lattice basis.
    pub fn is_regular(&self) -> Result<bool> {
        if !self.is_strictly_convex() {
            return Err(Error::NotStrictlyConvex);
        }
        if !self.is_simplicial() {
            return Ok(false);
        }
        let k = self.rays.len();
        let mut g = BigInt::zero();
        for cols in combinations(self.rank, k) {
            let minor: IntMatrix = self
                .rays
                .iter()
                .map(|r| cols.iter().map(|&c| r.coords()[c].clone()).collect())
                .collect();
            g = g.gcd(&determinant(&minor));
            if g.is_one() {
                return Ok(true);
            }
        }
        Ok(k == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> LatticeVector {
        LatticeVector::weight(c.iter().copied())
    }

    fn cone(gens: &[&[i64]]) -> Cone {
        let n = gens[0].len();
        let g: Vec<LatticeVector> = gens.iter().map(|c| w(c)).collect();
        Cone::from_generators(n, Role::Weight, &g).unwrap()
    }

    fn q(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c.iter().copied())
    }

    #[test]
    fn orthant_is_self_dual() {
        let o = Cone::orthant(2, Role::Weight).unwrap();
        let d = o.dual();
        assert_eq!(d.role(), Role::Exponent);
        assert_eq!(d.rays(), Cone::orthant(2, Role::Exponent).unwrap().rays());
        assert_eq!(d.dual(), o);
    }

    #[test]
    fn dual_of_ray_is_half_plane() {
        let d = cone(&[&[2, 3]]).dual();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.lineality().len(), 1);
        // Compare with the listed generating set by mutual containment.
        let listed = Cone::from_generators(
            2,
            Role::Exponent,
            &[
                LatticeVector::exponent([3, -2]),
                LatticeVector::exponent([-3, 2]),
                LatticeVector::exponent([1, 0]),
            ],
        )
        .unwrap();
        assert!(listed.contains_cone(&d) && d.contains_cone(&listed));
        assert_eq!(listed, d);
    }

    #[test]
    fn regularity() {
        assert!(cone(&[&[1, 0], &[1, 1]]).is_regular().unwrap());
        assert!(!cone(&[&[1, 0], &[1, 2]]).is_regular().unwrap());
        assert!(cone(&[&[1, 1], &[0, 1]]).is_regular().unwrap());
        assert!(cone(&[&[2, 3]]).is_regular().unwrap());
        assert!(!cone(&[&[4, 6]]).is_regular().unwrap() || cone(&[&[4, 6]]).rays()[0] == w(&[2, 3]));
    }

    #[test]
    fn membership() {
        let o = Cone::orthant(2, Role::Weight).unwrap();
        assert!(o.contains(&q(&[2, 3])).unwrap());
        assert!(o.relative_interior_contains(&q(&[2, 3])).unwrap());
        assert!(!o.relative_interior_contains(&q(&[0, 1])).unwrap());
        assert!(o.contains(&q(&[0, 1])).unwrap());
        let ray = cone(&[&[2, 3]]);
        assert!(ray.relative_interior_contains(&q(&[4, 6])).unwrap());
        assert!(!ray.contains(&q(&[4, 5])).unwrap());
        assert_eq!(
            o.contains(&q(&[1, 2, 3])),
            Err(Error::RankMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn face_counts() {
        assert_eq!(Cone::orthant(2, Role::Weight).unwrap().faces().unwrap().len(), 4);
        assert_eq!(cone(&[&[2, 3]]).faces().unwrap().len(), 2);
        assert_eq!(Cone::orthant(3, Role::Weight).unwrap().faces().unwrap().len(), 8);
        let pyramid = cone(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[-1, -1, 1]]);
        // 0, 4 rays, 4 two-faces, itself
        assert_eq!(pyramid.faces().unwrap().len(), 10);
        assert_eq!(Cone::zero(2, Role::Weight).unwrap().faces().unwrap().len(), 1);
    }

    #[test]
    fn faces_are_faces() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        for f in c.faces().unwrap() {
            assert!(f.is_face_of(&c).unwrap());
            assert_eq!(c.intersect(&f).unwrap(), f);
            assert!(f.rays().iter().all(|r| c.rays().contains(r)));
        }
        let inner = cone(&[&[1, 1, 1]]);
        assert!(!inner.is_face_of(&c).unwrap());
    }

    #[test]
    fn intersections() {
        let o = Cone::orthant(2, Role::Weight).unwrap();
        assert_eq!(o.intersect(&o).unwrap(), o);
        let swapped = cone(&[&[1, 1], &[-1, 1]]);
        assert_eq!(o.intersect(&swapped).unwrap(), cone(&[&[1, 1], &[0, 1]]));
        let a = cone(&[&[1, 0], &[1, 1]]);
        let b = cone(&[&[-1, 0], &[-1, -1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn zero_rank_cone() {
        let z = Cone::orthant(0, Role::Weight).unwrap();
        assert_eq!(z.dim(), 0);
        assert!(z.is_full_dimensional());
        assert_eq!(z.faces().unwrap().len(), 1);
    }

    #[test]
    fn rank_limit_enforced() {
        let r = Cone::orthant(DEFAULT_RANK_LIMIT + 1, Role::Weight);
        assert!(matches!(r, Err(Error::RankLimit { .. })));
    }
}

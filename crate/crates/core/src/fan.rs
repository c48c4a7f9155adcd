//! Finite fans of strictly convex cones.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{check_rank, dot, LatticeVector, RationalVector, Role};

/// A face-closed, duplicate-free collection of strictly convex cones,
/// sorted by dimension and then by rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    rank: usize,
    cones: Vec<Cone>,
}

/// Outcome of [`validate_cones`]: every violation of the fan axioms found.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FanReport {
    /// Pairs `(i, j)` whose intersection is not a face of both cones.
    pub bad_pairs: Vec<(usize, usize)>,
    /// Cone index together with one of its faces missing from the collection.
    pub missing_faces: Vec<(usize, Cone)>,
    /// Indices of cones that are not strictly convex.
    pub not_strictly_convex: Vec<usize>,
}

impl FanReport {
    pub fn is_valid(&self) -> bool {
        self.bad_pairs.is_empty() && self.missing_faces.is_empty() && self.not_strictly_convex.is_empty()
    }
}

/// Checks the fan axioms on an arbitrary list of cones.
pub fn validate_cones(cones: &[Cone]) -> Result<FanReport> {
    let mut report = FanReport::default();
    let present: BTreeSet<&Cone> = cones.iter().collect();
    for (i, c) in cones.iter().enumerate() {
        if !c.is_strictly_convex() {
            report.not_strictly_convex.push(i);
            continue;
        }
        for f in c.faces()? {
            if !present.contains(&f) {
                report.missing_faces.push((i, f));
            }
        }
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let (a, b) = (&cones[i], &cones[j]);
            check_rank(a.rank(), b.rank())?;
            let meet = a.intersect(b)?;
            if !meet.is_face_of(a)? || !meet.is_face_of(b)? {
                report.bad_pairs.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Validates a fan. Constructors already close under faces, so only the
/// intersection axiom between maximal cones needs checking.
pub fn validate_fan(f: &Fan) -> Result<FanReport> {
    let maximal: Vec<Cone> = f.maximal_cones().into_iter().cloned().collect();
    let mut report = validate_cones(&maximal)?;
    report.missing_faces.clear();
    Ok(report)
}

impl Fan {
    /// Closes `cones` under faces and removes duplicates.
    pub fn from_cones(rank: usize, cones: impl IntoIterator<Item = Cone>) -> Result<Fan> {
        let mut input: Vec<Cone> = cones.into_iter().collect();
        // Large cones first, so that their faces need not be recomputed.
        input.sort_by_key(|c| std::cmp::Reverse(c.dim()));
        let mut all = BTreeSet::new();
        for c in input {
            check_rank(rank, c.rank())?;
            if all.contains(&c) {
                continue;
            }
            for f in c.faces()? {
                all.insert(f);
            }
        }
        Ok(Fan {
            rank,
            cones: all.into_iter().collect(),
        })
    }

    /// The fan of all faces of one cone.
    pub fn from_cone(c: &Cone) -> Result<Fan> {
        Fan::from_cones(c.rank(), [c.clone()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Largest cone dimension, or `None` for the empty fan.
    pub fn dim(&self) -> Option<usize> {
        self.cones.last().map(Cone::dim)
    }

    /// Cones that are not proper faces of another cone of the fan.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !self.cones[i + 1..]
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.contains_cone(c))
            })
            .map(|(_, c)| c)
            .collect()
    }

    /// Primitive generators of the one-dimensional cones.
    pub fn rays(&self) -> Vec<LatticeVector> {
        self.cones
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect()
    }

    pub fn support_contains(&self, v: &RationalVector) -> Result<bool> {
        check_rank(self.rank, v.rank())?;
        for c in self.maximal_cones() {
            if c.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn support_contains_lattice(&self, v: &LatticeVector) -> Result<bool> {
        self.support_contains(&v.to_rational())
    }

    /// The unique cone whose relative interior contains `v`.
    pub fn cone_containing(&self, v: &RationalVector) -> Result<Option<&Cone>> {
        check_rank(self.rank, v.rank())?;
        for c in &self.cones {
            if c.relative_interior_contains(v)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Subdivides every cone containing `r` by joining `r` with its faces that miss it.
    pub fn star_subdivide(&self, r: &LatticeVector) -> Result<Fan> {
        check_rank(self.rank, r.rank())?;
        let r = r.primitive()?;
        let rq = r.to_rational();
        if !self.support_contains(&rq)? {
            return Err(Error::OutsideSupport(r.to_string()));
        }
        let ray = Cone::from_generators(self.rank, r.role(), std::slice::from_ref(&r))?;
        if self.cones.contains(&ray) {
            return Ok(self.clone());
        }
        let mut out = Vec::new();
        for c in &self.cones {
            if !c.contains(&rq)? {
                out.push(c.clone());
                continue;
            }
            for f in c.faces()? {
                if !f.contains(&rq)? {
                    out.push(f.join(&ray)?);
                }
            }
        }
        Fan::from_cones(self.rank, out)
    }

    /// All pairwise intersections of cones of the two fans.
    pub fn common_refinement(&self, other: &Fan) -> Result<Fan> {
        check_rank(self.rank, other.rank)?;
        let mut out = Vec::new();
        for a in self.maximal_cones() {
            for b in other.maximal_cones() {
                out.push(a.intersect(b)?);
            }
        }
        Fan::from_cones(self.rank, out)
    }

    /// Exact test of `|other| ⊆ |self|`.
    ///
    /// For each maximal cone `C` of `other`, the full-dimensional pieces
    /// `C ∩ D` (with `D` in `self`) form a fan inside `C`; they cover `C` iff
    /// every codimension-one face of a piece either lies on the boundary of
    /// `C` or is shared by two pieces.
    pub fn support_contains_fan(&self, other: &Fan) -> Result<bool> {
        check_rank(self.rank, other.rank)?;
        for c in other.maximal_cones() {
            if !self.covers(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn support_equals(&self, other: &Fan) -> Result<bool> {
        Ok(self.support_contains_fan(other)? && other.support_contains_fan(self)?)
    }

    fn covers(&self, c: &Cone) -> Result<bool> {
        let d = c.dim();
        if d == 0 {
            return Ok(!self.cones.is_empty());
        }
        let mut pieces = BTreeSet::new();
        for m in self.maximal_cones() {
            let p = c.intersect(m)?;
            if p.dim() == d {
                if &p == c {
                    return Ok(true);
                }
                pieces.insert(p);
            }
        }
        if pieces.is_empty() {
            return Ok(false);
        }
        let mut ridges: BTreeMap<Cone, usize> = BTreeMap::new();
        for p in &pieces {
            for f in p.faces()? {
                if f.dim() + 1 == d {
                    *ridges.entry(f).or_default() += 1;
                }
            }
        }
        for (ridge, count) in ridges {
            if count >= 2 {
                continue;
            }
            let on_boundary = c.facets().iter().any(|u| {
                ridge
                    .rays()
                    .iter()
                    .all(|r| dot(u.coords(), r.coords()).is_zero())
            });
            if !on_boundary {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Relative-interior witnesses of all cones, as lattice points.
    pub fn witnesses(&self) -> Vec<LatticeVector> {
        self.cones.iter().map(Cone::witness).collect()
    }

    /// Role shared by all cones (weight for an empty fan).
    pub fn role(&self) -> Role {
        self.cones.first().map(Cone::role).unwrap_or(Role::Weight)
    }
}

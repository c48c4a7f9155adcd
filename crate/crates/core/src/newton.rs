//! Truncated series over a toric germ, their Newton polyhedra and Newton fans.
//!
//! A [`Series`] carries finitely many terms. It stands for a formal power
//! series whose omitted terms do not contribute vertices to the Newton
//! polyhedron; nothing here can check that assumption.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{check_rank, dot, pairing, LatticeVector, Role};

/// A finite sum `Σ c_m χ^m` with exponents in the dual of an ambient cone `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    cone: Cone,
    terms: BTreeMap<LatticeVector, BigRational>,
}

fn check_ambient(cone: &Cone) -> Result<()> {
    if cone.role() != Role::Weight {
        return Err(Error::Precondition("ambient cone must live in the weight lattice".into()));
    }
    if !cone.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    if !cone.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: cone.dim(),
            rank: cone.rank(),
        });
    }
    Ok(())
}

impl Series {
    /// Collects terms, summing repeated exponents and dropping zero coefficients.
    pub fn new<I>(cone: &Cone, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (LatticeVector, BigRational)>,
    {
        check_ambient(cone)?;
        let mut map: BTreeMap<LatticeVector, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            check_rank(cone.rank(), m.rank())?;
            let m = m.with_role(Role::Exponent);
            if cone.rays().iter().any(|r| dot(r.coords(), m.coords()).is_negative()) {
                return Err(Error::ExponentOutsideDual(m.to_string()));
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Series {
            cone: cone.clone(),
            terms: map,
        })
    }

    /// Convenience constructor from small integer data.
    pub fn from_int_terms(cone: &Cone, terms: &[(&[i64], i64)]) -> Result<Series> {
        Series::new(
            cone,
            terms.iter().map(|(e, c)| {
                (
                    LatticeVector::exponent(e.iter().copied()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    /// A series over the nonnegative orthant of the given rank.
    pub fn over_orthant(rank: usize, terms: &[(&[i64], i64)]) -> Result<Series> {
        Series::from_int_terms(&Cone::orthant(rank, Role::Weight)?, terms)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, BigRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &LatticeVector) -> BigRational {
        let m = m.clone().with_role(Role::Exponent);
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn nonzero(&self) -> Result<()> {
        if self.terms.is_empty() {
            Err(Error::ZeroSeries)
        } else {
            Ok(())
        }
    }

    fn interior_weight(&self, w: &LatticeVector) -> Result<LatticeVector> {
        check_rank(self.rank(), w.rank())?;
        let w = w.clone().with_role(Role::Weight);
        if !self.cone.relative_interior_contains_lattice(&w)? {
            return Err(Error::BoundaryWeight(w.to_string()));
        }
        Ok(w)
    }

    /// The minimum of `w·m` over the support and the exponents attaining it.
    pub fn min_weight(&self, w: &LatticeVector) -> Result<(BigInt, Vec<LatticeVector>)> {
        self.nonzero()?;
        let w = self.interior_weight(w)?;
        let mut best: Option<BigInt> = None;
        let mut basis = Vec::new();
        for m in self.terms.keys() {
            let v = pairing(&w, m)?;
            match &best {
                Some(b) if &v > b => {}
                Some(b) if &v == b => basis.push(m.clone()),
                _ => {
                    best = Some(v);
                    basis = vec![m.clone()];
                }
            }
        }
        Ok((best.expect("nonzero series"), basis))
    }

    /// The terms of minimal `w`-weight.
    pub fn initial_form(&self, w: &LatticeVector) -> Result<Series> {
        let (_, basis) = self.min_weight(w)?;
        Ok(Series {
            cone: self.cone.clone(),
            terms: basis
                .into_iter()
                .map(|m| {
                    let c = self.terms[&m].clone();
                    (m, c)
                })
                .collect(),
        })
    }

    pub fn is_monomial(&self) -> Result<bool> {
        self.nonzero()?;
        Ok(self.terms.len() == 1)
    }

    pub fn multiply(&self, other: &Series) -> Result<Series> {
        if self.cone != other.cone {
            return Err(Error::AmbientMismatch);
        }
        let mut terms: BTreeMap<LatticeVector, BigRational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.add(b)?;
                *terms.entry(m).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Series {
            cone: self.cone.clone(),
            terms,
        })
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        if self.cone != other.cone {
            return Err(Error::AmbientMismatch);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Series {
            cone: self.cone.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect()
        };
        Series {
            cone: self.cone.clone(),
            terms,
        }
    }

    /// True iff for every ray of `σ` some exponent pairs to zero with it,
    /// i.e. `f` does not vanish identically on any boundary divisor.
    pub fn is_interior_divisor(&self) -> Result<bool> {
        self.nonzero()?;
        Ok(self.cone.rays().iter().all(|r| {
            self.terms
                .keys()
                .any(|m| dot(r.coords(), m.coords()).is_zero())
        }))
    }

    /// First ray of `σ` along which the series vanishes, if any.
    pub(crate) fn boundary_ray(&self) -> Option<&LatticeVector> {
        self.cone.rays().iter().find(|r| {
            !self
                .terms
                .keys()
                .any(|m| dot(r.coords(), m.coords()).is_zero())
        })
    }

    pub fn newton_polyhedron(&self) -> Result<NewtonPolyhedron> {
        self.nonzero()?;
        NewtonPolyhedron::from_points(&self.cone, self.terms.keys().cloned().collect())
    }

    pub fn newton_fan(&self) -> Result<NewtonFan> {
        Ok(self.newton_polyhedron()?.newton_fan().clone())
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.rank();
        let names: Vec<String> = match n {
            2 => vec!["x".into(), "y".into()],
            _ => (1..=n).map(|i| format!("x{i}")).collect(),
        };
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut mono = Vec::new();
            for (i, e) in m.coords().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    mono.push(names[i].clone());
                } else {
                    mono.push(format!("{}^{}", names[i], e));
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let coef = if abs.is_integer() {
                abs.to_integer().to_string()
            } else {
                format!("({abs})")
            };
            if mono.is_empty() {
                write!(f, "{coef}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coef}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A bounded face of a Newton polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactFace {
    pub dim: usize,
    pub vertices: Vec<LatticeVector>,
    /// The support points lying on the face.
    pub support: Vec<LatticeVector>,
    /// Weights minimising exactly on the face (closure), a cone of the Newton fan.
    pub normal_cone: Cone,
}

impl CompactFace {
    /// Primitive inward normal of a compact edge in rank 2.
    pub fn edge_normal(&self) -> Result<LatticeVector> {
        if self.dim != 1 || self.normal_cone.dim() != 1 {
            return Err(Error::NotCompactEdge);
        }
        Ok(self.normal_cone.rays()[0].clone())
    }
}

/// The Newton fan: cones of weights with a common minimising face, each
/// labelled by the support points on that face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonFan {
    pub fan: Fan,
    /// Aligned with `fan.cones()`.
    pub labels: Vec<Vec<LatticeVector>>,
}

impl NewtonFan {
    pub fn label_of(&self, c: &Cone) -> Option<&[LatticeVector]> {
        self.fan
            .cones()
            .iter()
            .position(|d| d == c)
            .map(|i| self.labels[i].as_slice())
    }
}

/// `conv(supp f) + σ∨`, together with its compact faces and Newton fan.
#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    cone: Cone,
    vertices: Vec<LatticeVector>,
    compact_faces: Vec<CompactFace>,
    fan: NewtonFan,
}

impl PartialEq for NewtonPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.vertices == other.vertices
    }
}

impl Eq for NewtonPolyhedron {}

/// Drops points lying in `m' + σ∨` for another point `m'`; they never matter.
fn undominated(cone: &Cone, mut points: Vec<LatticeVector>) -> Vec<LatticeVector> {
    points.sort();
    points.dedup();
    let dominated = |m: &LatticeVector, other: &LatticeVector| {
        cone.rays().iter().all(|r| {
            let d: BigInt = r
                .coords()
                .iter()
                .zip(m.coords().iter().zip(other.coords()))
                .map(|(ri, (a, b))| ri * (a - b))
                .sum();
            !d.is_negative()
        })
    };
    points
        .iter()
        .filter(|m| !points.iter().any(|o| o != *m && dominated(m, o)))
        .cloned()
        .collect()
}

impl NewtonPolyhedron {
    /// The polyhedron `conv(points) + σ∨` for a full-dimensional strictly convex `σ`.
    ///
    /// Works on the lifted cone `K = {(w, t) : w ∈ σ, t <= w·m for all m}` in
    /// rank `n + 1`. Facets of `K` of the form `(m, -1)` are the vertices; the
    /// faces of `K` not containing `(0, -1)` project onto the Newton fan.
    pub fn from_points(cone: &Cone, points: Vec<LatticeVector>) -> Result<NewtonPolyhedron> {
        check_ambient(cone)?;
        if points.is_empty() {
            return Err(Error::ZeroSeries);
        }
        let n = cone.rank();
        for p in &points {
            check_rank(n, p.rank())?;
        }
        let points: Vec<LatticeVector> = points.into_iter().map(|p| p.with_role(Role::Exponent)).collect();
        let points = undominated(cone, points);

        let lift = |coords: &[BigInt], last: i64| {
            let mut v = coords.to_vec();
            v.push(BigInt::from(last));
            LatticeVector::new(Role::Exponent, v)
        };
        let mut ineqs: Vec<LatticeVector> = cone.facets().iter().map(|u| lift(u.coords(), 0)).collect();
        ineqs.extend(points.iter().map(|m| lift(m.coords(), -1)));
        let k = Cone::from_inequalities(n + 1, Role::Weight, &ineqs, &[])?;

        let mut vertices: Vec<LatticeVector> = k
            .facets()
            .iter()
            .filter(|u| u.coords()[n] == BigInt::from(-1))
            .map(|u| LatticeVector::new(Role::Exponent, u.coords()[..n].to_vec()))
            .collect();
        vertices.sort();

        let down = {
            let mut v = vec![BigInt::zero(); n + 1];
            v[n] = BigInt::from(-1);
            v
        };
        let apex_ray = k
            .rays()
            .iter()
            .position(|r| r.coords() == down.as_slice())
            .ok_or_else(|| Error::Precondition("lifted cone lacks the vertical ray".into()))?;

        let mut cones: Vec<Cone> = Vec::new();
        let mut labels: BTreeMap<Cone, Vec<LatticeVector>> = BTreeMap::new();
        let mut compact_faces = Vec::new();
        for idx in k.face_ray_sets()? {
            if idx.contains(&apex_ray) {
                continue;
            }
            let rays: Vec<&LatticeVector> = idx.iter().map(|&i| &k.rays()[i]).collect();
            let label: Vec<LatticeVector> = points
                .iter()
                .filter(|m| {
                    let row = lift(m.coords(), -1);
                    rays.iter().all(|r| dot(row.coords(), r.coords()).is_zero())
                })
                .cloned()
                .collect();
            let projected: Vec<LatticeVector> = rays
                .iter()
                .map(|r| LatticeVector::new(Role::Weight, r.coords()[..n].to_vec()))
                .collect();
            let normal = Cone::from_generators(n, Role::Weight, &projected)?;
            if cone.relative_interior_contains_lattice(&normal.witness())? {
                let face_vertices: Vec<LatticeVector> =
                    vertices.iter().filter(|v| label.contains(v)).cloned().collect();
                compact_faces.push(CompactFace {
                    dim: n - normal.dim(),
                    vertices: face_vertices,
                    support: label.clone(),
                    normal_cone: normal.clone(),
                });
            }
            labels.insert(normal.clone(), label);
            cones.push(normal);
        }
        compact_faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));

        let fan = Fan::from_cones(n, cones)?;
        let labels = fan
            .cones()
            .iter()
            .map(|c| labels.get(c).cloned().unwrap_or_default())
            .collect();
        Ok(NewtonPolyhedron {
            cone: cone.clone(),
            vertices,
            compact_faces,
            fan: NewtonFan { fan, labels },
        })
    }

    /// The ambient weight cone `σ`.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// The recession cone `σ∨`.
    pub fn recession_cone(&self) -> Cone {
        self.cone.dual()
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Bounded faces sorted by dimension, vertices first.
    pub fn compact_faces(&self) -> &[CompactFace] {
        &self.compact_faces
    }

    pub fn compact_edges(&self) -> Vec<&CompactFace> {
        self.compact_faces.iter().filter(|f| f.dim == 1).collect()
    }

    pub fn newton_fan(&self) -> &NewtonFan {
        &self.fan
    }

    /// Sum with another polyhedron having the same recession cone.
    pub fn minkowski_sum(&self, other: &NewtonPolyhedron) -> Result<NewtonPolyhedron> {
        if self.cone != other.cone {
            return Err(Error::RecessionMismatch);
        }
        let mut sums = BTreeSet::new();
        for a in &self.vertices {
            for b in &other.vertices {
                sums.insert(a.add(b)?);
            }
        }
        NewtonPolyhedron::from_points(&self.cone, sums.into_iter().collect())
    }

    /// Whether `w` (any point of `σ`) attains its minimum on a bounded face.
    pub fn min_face_support(&self, w: &LatticeVector) -> Result<Vec<LatticeVector>> {
        check_rank(self.cone.rank(), w.rank())?;
        let c = self
            .fan
            .fan
            .cone_containing(&w.to_rational())?
            .ok_or_else(|| Error::OutsideSupport(w.to_string()))?;
        Ok(self.fan.label_of(c).map(<[_]>::to_vec).unwrap_or_default())
    }
}

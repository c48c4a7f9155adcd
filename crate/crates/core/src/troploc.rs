//! Local tropicalizations: principal divisors, plane curves, generator-wise
//! upper bounds for ideals, structure checks and extended cones.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{check_rank, LatticeVector, RationalVector, Role};
use crate::linalg::column_reduce;
use crate::newton::Series;

/// Whether a computed fan is the tropicalization itself or only contains it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact,
    /// A superset: intersection of the generators' divisor tropicalizations.
    Upper,
}

/// A fan structure on `Trop_loc Y` inside the ambient cone `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tropicalization {
    pub cone: Cone,
    pub fan: Fan,
    pub expected_dim: Option<usize>,
    pub generators: Vec<Series>,
    /// Aligned with `fan.cones()`: for cones meeting `σ°`, the minimising
    /// support `δ_w(g)` of each generator at the cone's witness.
    pub labels: Vec<Option<Vec<Vec<LatticeVector>>>>,
    pub bound: Bound,
}

impl Tropicalization {
    pub fn new(
        cone: &Cone,
        fan: Fan,
        expected_dim: Option<usize>,
        generators: Vec<Series>,
        bound: Bound,
    ) -> Result<Tropicalization> {
        let mut labels = Vec::with_capacity(fan.cones().len());
        for c in fan.cones() {
            let w = c.witness();
            if cone.relative_interior_contains_lattice(&w)? {
                let per_gen = generators
                    .iter()
                    .map(|g| g.min_weight(&w).map(|(_, d)| d))
                    .collect::<Result<Vec<_>>>()?;
                labels.push(Some(per_gen));
            } else {
                labels.push(None);
            }
        }
        Ok(Tropicalization {
            cone: cone.clone(),
            fan,
            expected_dim,
            generators,
            labels,
            bound,
        })
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    /// Maximal cones of the fan.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.fan.maximal_cones()
    }

    pub fn support_contains(&self, v: &RationalVector) -> Result<bool> {
        self.fan.support_contains(v)
    }
}

fn require_interior(g: &Series) -> Result<()> {
    if g.is_empty() {
        return Err(Error::ZeroSeries);
    }
    match g.boundary_ray() {
        Some(r) => Err(Error::NotInterior(r.to_string())),
        None => Ok(()),
    }
}

/// The tropicalization of the divisor `f = 0`: the cones of the Newton fan
/// dual to compact edges of the Newton polyhedron, with their faces.
pub fn troploc_divisor(f: &Series) -> Result<Tropicalization> {
    require_interior(f)?;
    let poly = f.newton_polyhedron()?;
    let cones: Vec<Cone> = poly
        .compact_edges()
        .into_iter()
        .map(|e| e.normal_cone.clone())
        .collect();
    let n = f.rank();
    let fan = Fan::from_cones(n, cones)?;
    Tropicalization::new(f.cone(), fan, Some(n - 1), vec![f.clone()], Bound::Exact)
}

/// Primitive rays orthogonal to the compact edges of a plane curve's Newton polygon.
pub fn troploc_plane_curve(f: &Series) -> Result<Vec<LatticeVector>> {
    if f.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            found: f.rank(),
        });
    }
    require_interior(f)?;
    let poly = f.newton_polyhedron()?;
    let mut rays = poly
        .compact_edges()
        .into_iter()
        .map(|e| e.edge_normal())
        .collect::<Result<Vec<_>>>()?;
    rays.sort();
    Ok(rays)
}

/// True iff no generator has a monomial initial form at `w`.
///
/// For one generator this decides membership in the tropicalization; for
/// several it is only necessary (a tropical basis may need more elements).
pub fn is_initial_weight(generators: &[Series], w: &RationalVector) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::BoundaryWeight(w.to_string()));
    }
    let w = w.clear_denominators(Role::Weight);
    is_initial_weight_lattice(generators, &w)
}

pub fn is_initial_weight_lattice(generators: &[Series], w: &LatticeVector) -> Result<bool> {
    for g in generators {
        if g.initial_form(w)?.is_monomial()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Intersection of the generators' divisor tropicalizations.
///
/// This contains the tropicalization of the ideal they generate and can be
/// strictly larger when the generators are not a tropical basis.
pub fn troploc_ideal_upper(generators: &[Series]) -> Result<Tropicalization> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Precondition("at least one generator is required".into()))?;
    let cone = first.cone().clone();
    for g in generators {
        if g.cone() != &cone {
            return Err(Error::AmbientMismatch);
        }
        require_interior(g)?;
    }
    let mut refinement = first.newton_fan()?.fan;
    for g in &generators[1..] {
        refinement = refinement.common_refinement(&g.newton_fan()?.fan)?;
    }
    let mut kept = Vec::new();
    for c in refinement.cones() {
        let w = c.witness();
        if cone.relative_interior_contains_lattice(&w)? && is_initial_weight_lattice(generators, &w)? {
            kept.push(c.clone());
        }
    }
    let fan = Fan::from_cones(cone.rank(), kept)?;
    Tropicalization::new(&cone, fan, None, generators.to_vec(), Bound::Upper)
}

/// Result of [`check_structure`]; each list holds the offending maximal cones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub expected_dim: usize,
    pub wrong_dimension: Vec<Cone>,
    pub misses_interior: Vec<Cone>,
    pub label_not_constant: Vec<Cone>,
    pub cones_checked: usize,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.wrong_dimension.is_empty() && self.misses_interior.is_empty() && self.label_not_constant.is_empty()
    }
}

fn random_interior_point(c: &Cone, rng: &mut ChaCha8Rng) -> LatticeVector {
    c.rays().iter().fold(LatticeVector::zero(Role::Weight, c.rank()), |acc, r| {
        let k = BigInt::from(rng.gen_range(1..=50u32));
        acc.add(&r.scale(&k)).expect("same rank")
    })
}

/// Checks the expected structure of a tropicalization: pure dimension,
/// every maximal cone meeting `σ°`, and initial data constant on each cone
/// (compared at two distinct random interior points).
pub fn check_structure(t: &Tropicalization, expected_dim: usize, seed: u64) -> Result<StructureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = StructureReport {
        expected_dim,
        ..Default::default()
    };
    for c in t.maximal_cones() {
        report.cones_checked += 1;
        if c.dim() != expected_dim {
            report.wrong_dimension.push(c.clone());
        }
        if !t.cone.relative_interior_contains_lattice(&c.witness())? {
            report.misses_interior.push(c.clone());
            continue;
        }
        let w1 = random_interior_point(c, &mut rng);
        let mut w2 = random_interior_point(c, &mut rng);
        let mut tries = 0;
        while w2 == w1 && tries < 16 {
            w2 = random_interior_point(c, &mut rng);
            tries += 1;
        }
        if w2 == w1 {
            w2 = w1.add(&c.witness())?;
        }
        for g in &t.generators {
            if g.min_weight(&w1)?.1 != g.min_weight(&w2)?.1 {
                report.label_not_constant.push(c.clone());
                break;
            }
        }
    }
    Ok(report)
}

/// Lattice points of `σ°` with coordinates bounded by `bound` where each
/// disagreement between the initial-form test and fan membership is reported.
pub fn divisor_box_mismatches(f: &Series, t: &Tropicalization, bound: i64) -> Result<Vec<LatticeVector>> {
    let sigma = f.cone();
    let n = sigma.rank();
    let lows: Vec<i64> = (0..n)
        .map(|i| {
            if sigma.rays().iter().all(|r| !r.coords()[i].is_negative()) {
                0
            } else {
                -bound
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = lows.clone();
    loop {
        let w = LatticeVector::weight(cur.iter().copied());
        if sigma.relative_interior_contains_lattice(&w)? {
            let initial = is_initial_weight_lattice(std::slice::from_ref(f), &w)?;
            let inside = t.fan.support_contains_lattice(&w)?;
            if initial != inside {
                out.push(w);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = lows[i];
            i += 1;
        }
    }
}

/// Compares supports of two fans: witness containment in both directions,
/// followed by the exact covering test.
pub fn supports_agree(a: &Fan, b: &Fan) -> Result<bool> {
    for w in a.witnesses() {
        if !b.support_contains_lattice(&w)? {
            return Ok(false);
        }
    }
    for w in b.witnesses() {
        if !a.support_contains_lattice(&w)? {
            return Ok(false);
        }
    }
    a.support_equals(b)
}

/// One stratum `(N/N_τ)_R ⊇ σ_τ` of the extended cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub face: Cone,
    pub quotient_rank: usize,
    /// Rows of the quotient map `N → N/N_τ ≅ Z^r`.
    pub map: Vec<Vec<BigInt>>,
    /// Image of `σ` under the quotient map.
    pub image: Cone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedCone {
    pub base: Cone,
    pub strata: Vec<Stratum>,
}

fn ambient_checks(sigma: &Cone) -> Result<()> {
    if sigma.role() != Role::Weight {
        return Err(Error::Precondition("cone must live in the weight lattice".into()));
    }
    if !sigma.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    if !sigma.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: sigma.dim(),
            rank: sigma.rank(),
        });
    }
    Ok(())
}

/// Quotient map `N → N/(N ∩ Rτ)` as an integer matrix with `n - dim τ` rows.
///
/// The kernel of `τ`'s equations is saturated, so a unimodular column
/// reduction of the equation matrix splits off `N_τ` and the remaining rows
/// of `U^{-1}` give coordinates on the torsion-free quotient.
fn quotient_map(face: &Cone) -> Vec<Vec<BigInt>> {
    let n = face.rank();
    if face.dim() == 0 {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    let eqs: Vec<Vec<BigInt>> = face.equations().iter().map(|e| e.coords().to_vec()).collect();
    let (_, uinv, r) = column_reduce(&eqs, n);
    uinv.into_iter().take(r).collect()
}

pub fn extended_cone(sigma: &Cone) -> Result<ExtendedCone> {
    ambient_checks(sigma)?;
    let mut strata = Vec::new();
    for face in sigma.faces()? {
        let map = quotient_map(&face);
        let r = map.len();
        let images: Vec<LatticeVector> = sigma
            .rays()
            .iter()
            .map(|v| {
                LatticeVector::weight(map.iter().map(|row| {
                    row.iter().zip(v.coords()).map(|(a, b)| a * b).sum::<BigInt>()
                }))
            })
            .collect();
        let image = Cone::from_generators(r, Role::Weight, &images)?;
        strata.push(Stratum {
            face,
            quotient_rank: r,
            map,
            image,
        });
    }
    Ok(ExtendedCone {
        base: sigma.clone(),
        strata,
    })
}

/// The toric germ itself tropicalizes to its cone.
pub fn troploc_toric_germ(sigma: &Cone) -> Result<Tropicalization> {
    if sigma.rank() == 0 {
        return Err(Error::Precondition("toric germ of rank 0".into()));
    }
    ambient_checks(sigma)?;
    let fan = Fan::from_cone(sigma)?;
    Tropicalization::new(sigma, fan, Some(sigma.rank()), Vec::new(), Bound::Exact)
}

/// Maps `v` through a stratum's quotient map.
pub fn project_to_stratum(s: &Stratum, v: &LatticeVector) -> Result<LatticeVector> {
    check_rank(s.face.rank(), v.rank())?;
    Ok(LatticeVector::weight(s.map.iter().map(|row| {
        row.iter().zip(v.coords()).map(|(a, b)| a * b).sum::<BigInt>()
    })))
}

//! JSON formats read and written by the command-line tool.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use troploc_core::arc::{Coefficient, QuadraticNumber, TruncatedArc};
use troploc_core::splice::{SpliceDiagram, Vertex};
use troploc_core::{Cone, Fan, LatticeVector, Role, Series};

use crate::CliError;

/// An integer written as a JSON number when it fits in `i64`, else as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(i) => s.serialize_i64(i),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim()).map(JsonInt).map_err(|_| E::custom(format!("bad integer {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<JsonInt, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// A rational written as the string `"p/q"` (or `"p"`); integers are also accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub BigRational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = JsonRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRational, E> {
        Ok(JsonRational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRational, E> {
        Ok(JsonRational(BigRational::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRational, E> {
        parse_rational(v).map(JsonRational).ok_or_else(|| E::custom(format!("bad rational {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<JsonRational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n = BigInt::from_str(n.trim()).ok()?;
    let d = BigInt::from_str(d.trim()).ok()?;
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

pub fn ints(v: &LatticeVector) -> Vec<JsonInt> {
    v.coords().iter().cloned().map(JsonInt).collect()
}

fn big(v: &[JsonInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

/// Ambient cone of an input: `"orthant"` or explicit rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientSpec {
    Named(String),
    Rays { rays: Vec<Vec<JsonInt>> },
}

impl AmbientSpec {
    pub fn of(c: &Cone) -> AmbientSpec {
        match Cone::orthant(c.rank(), Role::Weight) {
            Ok(o) if &o == c => AmbientSpec::Named("orthant".into()),
            _ => AmbientSpec::Rays {
                rays: c.rays().iter().map(ints).collect(),
            },
        }
    }

    pub fn to_cone(&self, rank: usize) -> Result<Cone, CliError> {
        match self {
            AmbientSpec::Named(s) if s == "orthant" => Ok(Cone::orthant(rank, Role::Weight)?),
            AmbientSpec::Named(s) => Err(CliError::Input(format!("unknown cone {s:?}; expected \"orthant\" or {{\"rays\": ...}}"))),
            AmbientSpec::Rays { rays } => {
                let gens = rays
                    .iter()
                    .map(|r| LatticeVector::weight(big(r)))
                    .collect::<Vec<_>>();
                Ok(Cone::from_generators(rank, Role::Weight, &gens)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub exp: Vec<JsonInt>,
    pub coef: JsonRational,
}

/// A series: `{"rank": n, "cone": ..., "terms": [{"exp": [...], "coef": "p/q"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<AmbientSpec>,
    pub terms: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl SeriesFile {
    pub fn of(s: &Series) -> SeriesFile {
        SeriesFile {
            rank: s.rank(),
            cone: Some(AmbientSpec::of(s.cone())),
            terms: s
                .terms()
                .iter()
                .map(|(m, c)| TermSpec {
                    exp: ints(m),
                    coef: JsonRational(c.clone()),
                })
                .collect(),
            text: Some(s.to_string()),
        }
    }

    pub fn ambient(&self) -> Result<Cone, CliError> {
        self.cone
            .clone()
            .unwrap_or(AmbientSpec::Named("orthant".into()))
            .to_cone(self.rank)
    }

    pub fn to_series(&self) -> Result<Series, CliError> {
        let cone = self.ambient()?;
        for t in &self.terms {
            if t.exp.len() != self.rank {
                return Err(CliError::Input(format!(
                    "exponent of length {} in a rank {} series",
                    t.exp.len(),
                    self.rank
                )));
            }
        }
        Ok(Series::new(
            &cone,
            self.terms
                .iter()
                .map(|t| (LatticeVector::exponent(big(&t.exp)), t.coef.0.clone())),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOut {
    pub rank: usize,
    pub dim: usize,
    pub rays: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<Vec<JsonInt>>,
}

impl ConeOut {
    pub fn of(c: &Cone) -> ConeOut {
        ConeOut {
            rank: c.rank(),
            dim: c.dim(),
            rays: c.rays().iter().map(ints).collect(),
            lineality: c.lineality().iter().map(ints).collect(),
        }
    }

    pub fn to_cone(&self) -> Result<Cone, CliError> {
        let mut gens: Vec<LatticeVector> = self.rays.iter().map(|r| LatticeVector::weight(big(r))).collect();
        for l in &self.lineality {
            let v = LatticeVector::weight(big(l));
            gens.push(v.scale(&BigInt::from(-1)));
            gens.push(v);
        }
        Ok(Cone::from_generators(self.rank, Role::Weight, &gens)?)
    }
}

/// A fan, stored by its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanOut {
    pub rank: usize,
    pub rays: Vec<Vec<JsonInt>>,
    pub maximal: Vec<ConeOut>,
}

impl FanOut {
    pub fn of(f: &Fan) -> FanOut {
        FanOut {
            rank: f.rank(),
            rays: f.rays().iter().map(ints).collect(),
            maximal: f.maximal_cones().into_iter().map(ConeOut::of).collect(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan, CliError> {
        let cones = self.maximal.iter().map(ConeOut::to_cone).collect::<Result<Vec<_>, _>>()?;
        Ok(Fan::from_cones(self.rank, cones)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceOut {
    pub dim: usize,
    pub vertices: Vec<Vec<JsonInt>>,
    pub support: Vec<Vec<JsonInt>>,
    pub normal_cone: ConeOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronOut {
    pub rank: usize,
    pub ambient: ConeOut,
    pub support: Vec<Vec<JsonInt>>,
    pub vertices: Vec<Vec<JsonInt>>,
    pub compact_faces: Vec<FaceOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledCone {
    pub cone: ConeOut,
    pub label: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonFanOut {
    pub rank: usize,
    pub ambient: ConeOut,
    pub fan: FanOut,
    pub cones: Vec<LabelledCone>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxCheck {
    pub bound: i64,
    pub mismatches: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropOut {
    pub rank: usize,
    pub ambient: ConeOut,
    /// `"exact"` or `"upper"` (a superset of the tropicalization).
    pub bound: String,
    pub expected_dim: Option<usize>,
    pub fan: FanOut,
    pub generators: Vec<SeriesFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_check: Option<BoxCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCurveOut {
    pub rays: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialFormOut {
    pub weight: Vec<JsonInt>,
    pub min_weight: JsonInt,
    pub initial_form: SeriesFile,
    pub monomial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureOut {
    pub passed: bool,
    pub expected_dim: usize,
    pub seed: u64,
    pub cones_checked: usize,
    pub wrong_dimension: Vec<ConeOut>,
    pub misses_interior: Vec<ConeOut>,
    pub label_not_constant: Vec<ConeOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeOut {
    pub name: String,
    pub d: JsonInt,
    pub weight_vector: Vec<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeOut {
    pub node: String,
    pub weights: Vec<JsonInt>,
    pub ok: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDetOut {
    pub u: String,
    pub v: String,
    pub d_u: JsonInt,
    pub d_v: JsonInt,
    pub linking: JsonInt,
    pub product: JsonInt,
    pub linking_squared: JsonInt,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupOut {
    pub node: String,
    pub toward: String,
    pub target: JsonInt,
    pub leaves: Vec<usize>,
    pub generators: Vec<JsonInt>,
    pub representation: Option<Vec<JsonInt>>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceReportOut {
    pub passed: bool,
    pub nodes: Vec<NodeOut>,
    pub coprime: Vec<CoprimeOut>,
    pub edge_determinant: Vec<EdgeDetOut>,
    pub semigroup: Vec<SemigroupOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationOut {
    pub node: String,
    pub series: SeriesFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceSystemOut {
    pub variables: usize,
    pub equations: Vec<EquationOut>,
    pub monomials: BTreeMap<String, Vec<Vec<JsonInt>>>,
    pub coefficients: BTreeMap<String, Vec<Vec<JsonRational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub cone: ConeOut,
    pub witness: Vec<JsonInt>,
    pub initial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckOut {
    pub passed: bool,
    pub witnesses: Vec<WitnessOut>,
    pub divisor_support_equal: Option<bool>,
    pub precondition_failure: Option<String>,
}

/// A coefficient on an arc: a rational string, `{"a","b","d"}` for `a + b√d`,
/// or `[re, im]` in float mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefOut {
    Rational(JsonRational),
    Quadratic { a: JsonRational, b: JsonRational, d: JsonInt },
    Float([f64; 2]),
}

impl CoefOut {
    pub fn exact(q: &QuadraticNumber) -> CoefOut {
        match q.as_rational() {
            Some(r) => CoefOut::Rational(JsonRational(r.clone())),
            None => CoefOut::Quadratic {
                a: JsonRational(q.rational_part().clone()),
                b: JsonRational(q.irrational_part().clone()),
                d: JsonInt(q.radicand().clone()),
            },
        }
    }

    pub fn float(z: &Complex64) -> CoefOut {
        CoefOut::Float([z.re, z.im])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<AmbientSpec>,
    pub truncation: usize,
    pub coords: Vec<Vec<CoefOut>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

/// A parsed arc in whichever coefficient mode its file uses.
pub enum ParsedArc {
    Exact(TruncatedArc<QuadraticNumber>),
    Float(TruncatedArc<Complex64>),
}

impl ArcFile {
    pub fn exact(a: &TruncatedArc<QuadraticNumber>) -> ArcFile {
        ArcFile {
            rank: a.rank(),
            cone: Some(AmbientSpec::of(a.cone())),
            truncation: a.truncation_order(),
            coords: a.coords().iter().map(|c| c.iter().map(CoefOut::exact).collect()).collect(),
            text: Some(a.to_string()),
        }
    }

    pub fn float(a: &TruncatedArc<Complex64>) -> ArcFile {
        ArcFile {
            rank: a.rank(),
            cone: Some(AmbientSpec::of(a.cone())),
            truncation: a.truncation_order(),
            coords: a.coords().iter().map(|c| c.iter().map(CoefOut::float).collect()).collect(),
            text: Some(a.to_string()),
        }
    }

    pub fn parse(&self) -> Result<ParsedArc, CliError> {
        let cone = self
            .cone
            .clone()
            .unwrap_or(AmbientSpec::Named("orthant".into()))
            .to_cone(self.rank)?;
        let is_float = self.coords.iter().flatten().any(|c| matches!(c, CoefOut::Float(_)));
        if is_float {
            let coords = self
                .coords
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|x| match x {
                            CoefOut::Float([re, im]) => Ok(Complex64::new(*re, *im)),
                            CoefOut::Rational(q) => Ok(Complex64::from_rational(&q.0)),
                            CoefOut::Quadratic { .. } => {
                                Err(CliError::Input("cannot mix float and quadratic coefficients".into()))
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ParsedArc::Float(TruncatedArc::new(&cone, coords, self.truncation)?));
        }
        let mut field: Option<BigInt> = None;
        let mut coords = Vec::new();
        for c in &self.coords {
            let mut row = Vec::new();
            for x in c {
                row.push(match x {
                    CoefOut::Rational(q) => QuadraticNumber::rational(q.0.clone()),
                    CoefOut::Quadratic { a, b, d } => {
                        if field.as_ref().is_some_and(|f| f != &d.0) {
                            return Err(CliError::Input("all irrational coefficients must share one radicand".into()));
                        }
                        let r = d.0.sqrt();
                        if &r * &r == d.0 {
                            return Err(CliError::Input(format!("radicand {} is a perfect square", d.0)));
                        }
                        field = Some(d.0.clone());
                        QuadraticNumber::new(a.0.clone(), b.0.clone(), d.0.clone())
                    }
                    CoefOut::Float(_) => unreachable!("handled above"),
                });
            }
            coords.push(row);
        }
        Ok(ParsedArc::Exact(TruncatedArc::new(&cone, coords, self.truncation)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcWeightOut {
    pub weight: Vec<JsonInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualOut {
    /// First order of a nonzero (exact) or above-tolerance (float) coefficient.
    pub order: Option<usize>,
    pub valid_below: usize,
    pub max_magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuiseuxArcOut {
    pub weight: Vec<JsonInt>,
    pub arc: ArcFile,
    pub residual: ResidualOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuiseuxOut {
    pub mode: String,
    pub depth: usize,
    pub arcs: Vec<PuiseuxArcOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumOut {
    pub face: ConeOut,
    pub quotient_rank: usize,
    pub map: Vec<Vec<JsonInt>>,
    pub image: ConeOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedConeOut {
    pub base: ConeOut,
    pub strata: Vec<StratumOut>,
}

/// Every structured output, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Output {
    Polyhedron(PolyhedronOut),
    NewtonFan(NewtonFanOut),
    Tropicalization(TropOut),
    PlaneCurve(PlaneCurveOut),
    InitialForm(InitialFormOut),
    StructureReport(StructureOut),
    SpliceReport(SpliceReportOut),
    SpliceSystem(SpliceSystemOut),
    SpliceCrosscheck(CrosscheckOut),
    ArcWeight(ArcWeightOut),
    Puiseux(PuiseuxOut),
    ExtendedCone(ExtendedConeOut),
}

impl Output {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outputs serialize");
        s.push('\n');
        s
    }
}

/// Endpoint of a splice edge: an integer leaf (1-based) or a node name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndpointSpec {
    Leaf(usize),
    Node(String),
}

impl EndpointSpec {
    fn vertex(&self) -> Vertex {
        match self {
            EndpointSpec::Leaf(i) => Vertex::Leaf(*i),
            EndpointSpec::Node(s) => Vertex::Node(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub node: String,
    pub edge: [EndpointSpec; 2],
    pub w: u64,
}

/// `{"leaves": n, "nodes": [...], "edges": [[a, b]], "weights": [{"node", "edge", "w"}]}`,
/// optionally with `"coefficients": {node: [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceFile {
    pub leaves: usize,
    pub nodes: Vec<String>,
    pub edges: Vec<[EndpointSpec; 2]>,
    pub weights: Vec<WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<BTreeMap<String, Vec<Vec<JsonRational>>>>,
}

impl SpliceFile {
    pub fn to_diagram(&self) -> Result<SpliceDiagram, CliError> {
        Ok(SpliceDiagram::new(
            self.leaves,
            self.nodes.clone(),
            self.edges.iter().map(|[a, b]| (a.vertex(), b.vertex())).collect(),
            self.weights
                .iter()
                .map(|w| (w.node.clone(), (w.edge[0].vertex(), w.edge[1].vertex()), w.w))
                .collect(),
        )?)
    }
}

/// Coefficient matrices keyed by node.
pub type CoefficientFile = BTreeMap<String, Vec<Vec<JsonRational>>>;

pub fn to_matrices(c: &CoefficientFile) -> BTreeMap<String, Vec<Vec<BigRational>>> {
    c.iter()
        .map(|(k, rows)| (k.clone(), rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect()))
        .collect()
}

/// A bare cone input: `{"rank": n, "cone": "orthant" | {"rays": ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFile {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<AmbientSpec>,
}

impl ConeFile {
    pub fn to_cone(&self) -> Result<Cone, CliError> {
        self.cone
            .clone()
            .unwrap_or(AmbientSpec::Named("orthant".into()))
            .to_cone(self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_round_trip() {
        let big = JsonInt(BigInt::from(10).pow(30));
        let s = serde_json::to_string(&vec![JsonInt(7.into()), big.clone()]).unwrap();
        assert_eq!(s, "[7,\"1000000000000000000000000000000\"]");
        let back: Vec<JsonInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[1], big);
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(parse_rational("4").unwrap().to_string(), "4");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x/2").is_none());
        let r: JsonRational = serde_json::from_str("5").unwrap();
        assert_eq!(r.0.to_string(), "5");
    }

    #[test]
    fn series_file_defaults_to_orthant() {
        let f: SeriesFile = serde_json::from_str(r#"{"rank": 2, "terms": [{"exp": [0, 2], "coef": "1"}, {"exp": [3, 0], "coef": -2}]}"#).unwrap();
        let s = f.to_series().unwrap();
        assert_eq!(s.to_string(), "y^2 - 2*x^3");
    }
}

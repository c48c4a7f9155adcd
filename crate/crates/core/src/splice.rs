//! Splice diagrams, their splice type systems and the cone over the tree.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{pairing, LatticeVector, RationalVector, Role};
use crate::linalg::{combinations, determinant_rational};
use crate::newton::Series;
use crate::troploc::{self, Bound, Tropicalization};

/// A vertex of a splice diagram: leaves are numbered from 1, nodes are named.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Leaf(usize),
    Node(String),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Leaf(i) => write!(f, "{i}"),
            Vertex::Node(s) => write!(f, "{s}"),
        }
    }
}

/// A weighted tree whose vertices are leaves (valency 1) or nodes (valency >= 3).
///
/// The order in which a node's weights are supplied fixes the order of its
/// incident edges, and hence of its admissible monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceDiagram {
    leaves: usize,
    nodes: Vec<String>,
    edges: Vec<(usize, usize)>,
    /// Per node: incident edges (by index) with their weights, in input order.
    incidences: Vec<Vec<(usize, BigInt)>>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

fn gcd_u(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

impl SpliceDiagram {
    pub fn new(
        leaves: usize,
        nodes: Vec<String>,
        edges: Vec<(Vertex, Vertex)>,
        weights: Vec<(String, (Vertex, Vertex), u64)>,
    ) -> Result<SpliceDiagram> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if nodes.is_empty() {
            return bad("a splice diagram needs at least one node".into());
        }
        let mut names = nodes.clone();
        names.sort();
        names.dedup();
        if names.len() != nodes.len() {
            return bad("duplicate node names".into());
        }
        let total = leaves + nodes.len();
        let index = |v: &Vertex| -> Result<usize> {
            match v {
                Vertex::Leaf(i) if *i >= 1 && *i <= leaves => Ok(i - 1),
                Vertex::Leaf(i) => Err(Error::InvalidDiagram(format!("leaf {i} out of range 1..={leaves}"))),
                Vertex::Node(s) => nodes
                    .iter()
                    .position(|n| n == s)
                    .map(|p| leaves + p)
                    .ok_or_else(|| Error::InvalidDiagram(format!("unknown node {s}"))),
            }
        };
        let mut edge_idx = Vec::new();
        let mut adjacency = vec![Vec::new(); total];
        for (a, b) in &edges {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return bad(format!("loop at {a}"));
            }
            let key = (i.min(j), i.max(j));
            if edge_idx.contains(&key) {
                return bad(format!("repeated edge {a}-{b}"));
            }
            adjacency[i].push((j, edge_idx.len()));
            adjacency[j].push((i, edge_idx.len()));
            edge_idx.push(key);
        }
        if edge_idx.len() + 1 != total {
            return bad(format!("{} edges for {} vertices: not a tree", edge_idx.len(), total));
        }
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("graph is not connected".into());
        }
        for (v, adj) in adjacency.iter().enumerate() {
            if v < leaves && adj.len() != 1 {
                return bad(format!("leaf {} has valency {}", v + 1, adj.len()));
            }
            if v >= leaves && adj.len() < 3 {
                return bad(format!("node {} has valency {}", nodes[v - leaves], adj.len()));
            }
        }
        let mut incidences: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); nodes.len()];
        for (node, (a, b), w) in &weights {
            let u = index(&Vertex::Node(node.clone()))? - leaves;
            let (i, j) = (index(a)?, index(b)?);
            let key = (i.min(j), i.max(j));
            let Some(e) = edge_idx.iter().position(|k| *k == key) else {
                return bad(format!("weight on missing edge {a}-{b}"));
            };
            if key.0 != u + leaves && key.1 != u + leaves {
                return bad(format!("edge {a}-{b} is not incident to node {node}"));
            }
            if incidences[u].iter().any(|(f, _)| *f == e) {
                return bad(format!("two weights for node {node} on edge {a}-{b}"));
            }
            if *w == 0 {
                return bad(format!("weight 0 at node {node}"));
            }
            incidences[u].push((e, BigInt::from(*w)));
        }
        for (u, inc) in incidences.iter().enumerate() {
            if inc.len() != adjacency[u + leaves].len() {
                return bad(format!("node {} is missing weights on some incident edges", nodes[u]));
            }
        }
        Ok(SpliceDiagram {
            leaves,
            nodes,
            edges: edge_idx,
            incidences,
            adjacency,
        })
    }

    /// The diagram with one node `u` and leaves 1, 2, 3 carrying weights `a`, `b`, `c`.
    pub fn one_node(a: u64, b: u64, c: u64) -> Result<SpliceDiagram> {
        let u = || Vertex::Node("u".into());
        let edges: Vec<(Vertex, Vertex)> = (1..=3).map(|i| (u(), Vertex::Leaf(i))).collect();
        let weights = [a, b, c]
            .iter()
            .enumerate()
            .map(|(i, &w)| ("u".to_string(), (u(), Vertex::Leaf(i + 1)), w))
            .collect();
        SpliceDiagram::new(3, vec!["u".into()], edges, weights)
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    /// Edges as vertex pairs.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.edges.iter().map(|&(a, b)| (self.vertex(a), self.vertex(b))).collect()
    }

    fn vertex(&self, i: usize) -> Vertex {
        if i < self.leaves {
            Vertex::Leaf(i + 1)
        } else {
            Vertex::Node(self.nodes[i - self.leaves].clone())
        }
    }

    fn vertex_index(&self, v: &Vertex) -> Result<usize> {
        match v {
            Vertex::Leaf(i) if *i >= 1 && *i <= self.leaves => Ok(i - 1),
            Vertex::Leaf(i) => Err(Error::InvalidDiagram(format!("leaf {i} out of range"))),
            Vertex::Node(s) => self
                .nodes
                .iter()
                .position(|n| n == s)
                .map(|p| p + self.leaves)
                .ok_or_else(|| Error::NotANode(s.clone())),
        }
    }

    fn node_index(&self, u: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n == u)
            .ok_or_else(|| Error::NotANode(u.to_string()))
    }

    /// Weights of a node in incident-edge order.
    pub fn node_weights(&self, u: &str) -> Result<Vec<BigInt>> {
        let k = self.node_index(u)?;
        Ok(self.incidences[k].iter().map(|(_, w)| w.clone()).collect())
    }

    /// Incident edges of a node, as the vertex on the other side, in weight order.
    pub fn neighbours(&self, u: &str) -> Result<Vec<Vertex>> {
        let k = self.node_index(u)?;
        let me = k + self.leaves;
        Ok(self.incidences[k]
            .iter()
            .map(|(e, _)| {
                let (a, b) = self.edges[*e];
                self.vertex(if a == me { b } else { a })
            })
            .collect())
    }

    /// Vertices on the path from `a` to `b` and the edges between them.
    fn path(&self, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
        let total = self.adjacency.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
        let mut seen = vec![false; total];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                break;
            }
            for &(w, e) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        let mut verts = vec![b];
        let mut edges = Vec::new();
        let mut cur = b;
        while let Some((p, e)) = parent[cur] {
            verts.push(p);
            edges.push(e);
            cur = p;
        }
        verts.reverse();
        edges.reverse();
        (verts, edges)
    }

    /// Product of the weights adjacent to, but not on, the path from node `u` to `p`.
    pub fn linking_number(&self, u: &str, p: &Vertex) -> Result<BigInt> {
        let k = self.node_index(u)?;
        let target = self.vertex_index(p)?;
        Ok(self.linking(k + self.leaves, target))
    }

    fn linking(&self, from: usize, to: usize) -> BigInt {
        let (verts, path_edges) = self.path(from, to);
        let mut prod = BigInt::one();
        for v in verts {
            if v < self.leaves {
                continue;
            }
            for (e, w) in &self.incidences[v - self.leaves] {
                if !path_edges.contains(e) {
                    prod *= w;
                }
            }
        }
        prod
    }

    /// `d_u`, the product of the weights around `u`.
    pub fn d(&self, u: &str) -> Result<BigInt> {
        self.linking_number(u, &Vertex::Node(u.to_string()))
    }

    /// `w_u = (ℓ_{u,1}, …, ℓ_{u,n})`.
    pub fn weight_vector(&self, u: &str) -> Result<LatticeVector> {
        let k = self.node_index(u)? + self.leaves;
        Ok(LatticeVector::weight((0..self.leaves).map(|i| self.linking(k, i))))
    }

    /// Leaves (1-based) seen from node index `u` through incident edge `e`.
    fn leaves_beyond(&self, u: usize, e: usize) -> Vec<usize> {
        let (a, b) = self.edges[e];
        let start = if a == u { b } else { a };
        let mut out = Vec::new();
        let mut stack = vec![(start, u)];
        while let Some((v, from)) = stack.pop() {
            if v < self.leaves {
                out.push(v + 1);
            }
            for &(w, _) in &self.adjacency[v] {
                if w != from {
                    stack.push((w, v));
                }
            }
        }
        out.sort();
        out
    }

    /// Runs the coprime, edge determinant and semigroup checks.
    pub fn validate(&self) -> Result<SpliceReport> {
        let mut report = SpliceReport::default();
        for (k, name) in self.nodes.iter().enumerate() {
            let ws: Vec<BigInt> = self.incidences[k].iter().map(|(_, w)| w.clone()).collect();
            let mut failures = Vec::new();
            for (i, w) in ws.iter().enumerate() {
                if w < &BigInt::from(2) {
                    failures.push(format!("weight {w} < 2"));
                }
                for v in &ws[i + 1..] {
                    if !gcd_u(w, v).is_one() {
                        failures.push(format!("gcd({w},{v}) = {}", gcd_u(w, v)));
                    }
                }
            }
            report.coprime.push(CoprimeCheck {
                node: name.clone(),
                weights: ws,
                failures,
            });
        }
        for &(a, b) in &self.edges {
            if a < self.leaves || b < self.leaves {
                continue;
            }
            let du = self.linking(a, a);
            let dv = self.linking(b, b);
            let l = self.linking(a, b);
            let ok = &du * &dv > &l * &l;
            report.edge_determinant.push(EdgeDeterminantCheck {
                u: self.nodes[a - self.leaves].clone(),
                v: self.nodes[b - self.leaves].clone(),
                d_u: du,
                d_v: dv,
                linking: l,
                ok,
            });
        }
        for (k, name) in self.nodes.iter().enumerate() {
            let u = k + self.leaves;
            let d = self.linking(u, u);
            for (pos, (e, _)) in self.incidences[k].iter().enumerate() {
                let leaves = self.leaves_beyond(u, *e);
                let gens: Vec<BigInt> = leaves.iter().map(|&i| self.linking(u, i - 1)).collect();
                let rep = lex_smallest_representation(&d, &gens)?;
                let (a, b) = self.edges[*e];
                report.semigroup.push(SemigroupCheck {
                    node: name.clone(),
                    edge_position: pos,
                    toward: self.vertex(if a == u { b } else { a }),
                    target: d.clone(),
                    leaves,
                    generators: gens,
                    representation: rep,
                });
            }
        }
        Ok(report)
    }

    /// Admissible monomial for node `u` and its `j`-th incident edge (0-based):
    /// the lexicographically smallest representation of `d_u`.
    pub fn admissible_monomial(&self, u: &str, j: usize) -> Result<LatticeVector> {
        let k = self.node_index(u)?;
        let node = k + self.leaves;
        let (e, _) = self
            .incidences[k]
            .get(j)
            .ok_or_else(|| Error::Precondition(format!("node {u} has no incident edge {}", j + 1)))?;
        let d = self.linking(node, node);
        let leaves = self.leaves_beyond(node, *e);
        let gens: Vec<BigInt> = leaves.iter().map(|&i| self.linking(node, i - 1)).collect();
        let rep = lex_smallest_representation(&d, &gens)?.ok_or_else(|| Error::Semigroup {
            node: u.to_string(),
            target: d.to_string(),
            generators: gens.iter().map(ToString::to_string).collect(),
        })?;
        let mut exp = vec![BigInt::zero(); self.leaves];
        for (leaf, n) in leaves.iter().zip(rep) {
            exp[leaf - 1] = n;
        }
        Ok(LatticeVector::exponent(exp))
    }

    fn check_valid(&self) -> Result<SpliceReport> {
        let report = self.validate()?;
        if let Some(c) = report.coprime.iter().find(|c| !c.failures.is_empty()) {
            return Err(Error::InvalidDiagram(format!(
                "coprime condition fails at node {}: {}",
                c.node,
                c.failures.join(", ")
            )));
        }
        if let Some(c) = report.edge_determinant.iter().find(|c| !c.ok) {
            return Err(Error::InvalidDiagram(format!(
                "edge determinant fails on {}-{}: {}·{} <= {}²",
                c.u, c.v, c.d_u, c.d_v, c.linking
            )));
        }
        if let Some(c) = report.semigroup.iter().find(|c| c.representation.is_none()) {
            return Err(Error::Semigroup {
                node: c.node.clone(),
                target: c.target.to_string(),
                generators: c.generators.iter().map(ToString::to_string).collect(),
            });
        }
        Ok(report)
    }

    /// Builds the splice type system; see [`SpliceOptions`] for overrides.
    pub fn splice_system(&self, options: &SpliceOptions) -> Result<SpliceSystem> {
        self.check_valid()?;
        let n = self.leaves;
        let orthant = Cone::orthant(n, Role::Weight)?;
        let mut equations = Vec::new();
        let mut equation_nodes = Vec::new();
        let mut matrices = BTreeMap::new();
        let mut monomials = BTreeMap::new();
        for (k, name) in self.nodes.iter().enumerate() {
            let node = k + self.leaves;
            let r = self.incidences[k].len();
            let wu = self.weight_vector(name)?;
            let du = self.linking(node, node);
            let mut chis = Vec::with_capacity(r);
            for j in 0..r {
                let chi = match options.monomials.get(&(name.clone(), j)) {
                    Some(m) => {
                        self.check_monomial_choice(name, j, m)?;
                        m.clone().with_role(Role::Exponent)
                    }
                    None => self.admissible_monomial(name, j)?,
                };
                chis.push(chi);
            }
            let matrix = match options.coefficients.get(name) {
                Some(m) => {
                    let found = (m.len(), m.first().map_or(0, Vec::len));
                    if found != (r - 2, r) || m.iter().any(|row| row.len() != r) {
                        return Err(Error::CoefficientShape {
                            node: name.clone(),
                            expected: (r - 2, r),
                            found,
                        });
                    }
                    m.clone()
                }
                None => default_coefficients(r),
            };
            if let Some(cols) = vanishing_minor(&matrix) {
                return Err(Error::DegenerateCoefficients {
                    node: name.clone(),
                    columns: cols.into_iter().map(|c| c + 1).collect(),
                });
            }
            for (i, row) in matrix.iter().enumerate() {
                let mut terms: Vec<(LatticeVector, BigRational)> =
                    chis.iter().cloned().zip(row.iter().cloned()).collect();
                if let Some(extra) = options.extra_terms.get(&(name.clone(), i)) {
                    for (m, c) in extra {
                        let m = m.clone().with_role(Role::Exponent);
                        let weight = pairing(&wu, &m)?;
                        if weight <= du {
                            return Err(Error::DeformationWeight {
                                node: name.clone(),
                                term: m.to_string(),
                                weight: weight.to_string(),
                                bound: du.to_string(),
                            });
                        }
                        terms.push((m, c.clone()));
                    }
                }
                equations.push(Series::new(&orthant, terms)?);
                equation_nodes.push(name.clone());
            }
            matrices.insert(name.clone(), matrix);
            monomials.insert(name.clone(), chis);
        }
        if equations.len() + 2 != n {
            return Err(Error::InvalidDiagram(format!(
                "system has {} equations for {} leaves",
                equations.len(),
                n
            )));
        }
        Ok(SpliceSystem {
            variables: n,
            equations,
            equation_nodes,
            matrices,
            monomials,
        })
    }

    fn check_monomial_choice(&self, u: &str, j: usize, m: &LatticeVector) -> Result<()> {
        let k = self.node_index(u)?;
        let node = k + self.leaves;
        let (e, _) = self.incidences[k][j];
        let allowed = self.leaves_beyond(node, e);
        if m.rank() != self.leaves
            || m.coords().iter().enumerate().any(|(i, c)| {
                c < &BigInt::zero() || (!c.is_zero() && !allowed.contains(&(i + 1)))
            })
        {
            return Err(Error::Precondition(format!(
                "monomial {m} for node {u}, edge {} must use only leaves {allowed:?}",
                j + 1
            )));
        }
        let wu = self.weight_vector(u)?;
        let weight = pairing(&wu, &m.clone().with_role(Role::Exponent))?;
        let du = self.linking(node, node);
        if weight != du {
            return Err(Error::Precondition(format!(
                "monomial {m} for node {u} has weight {weight}, expected {du}"
            )));
        }
        Ok(())
    }

    /// Leaves to the simplex corners, nodes to `w_u` divided by its coordinate sum.
    pub fn embedded_diagram(&self) -> Result<Vec<(Vertex, RationalVector)>> {
        self.check_valid()?;
        let n = self.leaves;
        let mut out = Vec::new();
        for i in 0..n {
            out.push((
                Vertex::Leaf(i + 1),
                LatticeVector::unit(Role::Weight, n, i).to_rational(),
            ));
        }
        for name in &self.nodes {
            let w = self.weight_vector(name)?;
            let s: BigInt = w.coords().iter().sum();
            let inv = BigRational::new(BigInt::one(), s);
            out.push((Vertex::Node(name.clone()), w.to_rational().scale(&inv)));
        }
        Ok(out)
    }

    fn vertex_ray(&self, v: usize) -> Result<LatticeVector> {
        if v < self.leaves {
            Ok(LatticeVector::unit(Role::Weight, self.leaves, v))
        } else {
            self.weight_vector(&self.nodes[v - self.leaves])?.primitive()
        }
    }

    /// The cone over the embedded tree: one 2-cone per edge, spanned by the
    /// endpoint vectors (`e_i` for leaves, primitive `w_u` for nodes).
    pub fn splice_tropicalization(&self) -> Result<Tropicalization> {
        let system = self.splice_system(&SpliceOptions::default())?;
        let n = self.leaves;
        let cones = self
            .edges
            .iter()
            .map(|&(a, b)| Cone::from_generators(n, Role::Weight, &[self.vertex_ray(a)?, self.vertex_ray(b)?]))
            .collect::<Result<Vec<_>>>()?;
        let fan = Fan::from_cones(n, cones)?;
        let sigma = Cone::orthant(n, Role::Weight)?;
        Tropicalization::new(&sigma, fan, Some(2), system.equations, Bound::Exact)
    }

    /// Checks the initial-weight test of the splice system at the witness of
    /// every maximal cone of the cone over the tree.
    pub fn crosscheck_tropicalization(&self) -> Result<CrosscheckReport> {
        let t = match self.splice_tropicalization() {
            Ok(t) => t,
            Err(e @ (Error::InvalidDiagram(_) | Error::Semigroup { .. })) => {
                return Ok(CrosscheckReport {
                    precondition_failure: Some(e.to_string()),
                    ..Default::default()
                })
            }
            Err(e) => return Err(e),
        };
        let mut report = CrosscheckReport::default();
        for c in t.maximal_cones() {
            let w = c.witness();
            let ok = troploc::is_initial_weight_lattice(&t.generators, &w)?;
            report.witnesses.push(WitnessCheck {
                cone: c.clone(),
                witness: w,
                initial: ok,
            });
        }
        if self.nodes.len() == 1 && t.generators.len() == 1 {
            let divisor = troploc::troploc_divisor(&t.generators[0])?;
            report.divisor_support_equal = Some(troploc::supports_agree(&divisor.fan, &t.fan)?);
        }
        Ok(report)
    }
}

/// Overrides for [`SpliceDiagram::splice_system`].
#[derive(Debug, Clone, Default)]
pub struct SpliceOptions {
    /// Coefficient matrix per node, shape `(r_u - 2) × r_u`.
    pub coefficients: BTreeMap<String, Vec<Vec<BigRational>>>,
    /// Admissible monomial per (node, incident edge position).
    pub monomials: BTreeMap<(String, usize), LatticeVector>,
    /// Extra terms of higher `w_u`-weight per (node, equation row).
    pub extra_terms: BTreeMap<(String, usize), Vec<(LatticeVector, BigRational)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpliceSystem {
    pub variables: usize,
    pub equations: Vec<Series>,
    /// Node each equation comes from.
    pub equation_nodes: Vec<String>,
    pub matrices: BTreeMap<String, Vec<Vec<BigRational>>>,
    /// Admissible monomials per node in incident-edge order.
    pub monomials: BTreeMap<String, Vec<LatticeVector>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeCheck {
    pub node: String,
    pub weights: Vec<BigInt>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDeterminantCheck {
    pub u: String,
    pub v: String,
    pub d_u: BigInt,
    pub d_v: BigInt,
    pub linking: BigInt,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupCheck {
    pub node: String,
    pub edge_position: usize,
    pub toward: Vertex,
    pub target: BigInt,
    pub leaves: Vec<usize>,
    pub generators: Vec<BigInt>,
    /// Coefficients aligned with `leaves`, if `target` is representable.
    pub representation: Option<Vec<BigInt>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpliceReport {
    pub coprime: Vec<CoprimeCheck>,
    pub edge_determinant: Vec<EdgeDeterminantCheck>,
    pub semigroup: Vec<SemigroupCheck>,
}

impl SpliceReport {
    pub fn coprime_ok(&self) -> bool {
        self.coprime.iter().all(|c| c.failures.is_empty())
    }

    pub fn edge_determinant_ok(&self) -> bool {
        self.edge_determinant.iter().all(|c| c.ok)
    }

    pub fn semigroup_ok(&self) -> bool {
        self.semigroup.iter().all(|c| c.representation.is_some())
    }

    pub fn passed(&self) -> bool {
        self.coprime_ok() && self.edge_determinant_ok() && self.semigroup_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub cone: Cone,
    pub witness: LatticeVector,
    pub initial: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub witnesses: Vec<WitnessCheck>,
    /// For one-node diagrams: support equality with the divisor tropicalization.
    pub divisor_support_equal: Option<bool>,
    pub precondition_failure: Option<String>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.precondition_failure.is_none()
            && !self.witnesses.is_empty()
            && self.witnesses.iter().all(|w| w.initial)
            && self.divisor_support_equal != Some(false)
    }
}

/// `a_{i,j} = j^(i-1)` for `i = 1..r-2`, `j = 1..r`.
pub fn default_coefficients(r: usize) -> Vec<Vec<BigRational>> {
    (0..r.saturating_sub(2))
        .map(|i| {
            (1..=r)
                .map(|j| BigRational::from_integer(num_traits::pow(BigInt::from(j), i)))
                .collect()
        })
        .collect()
}

/// Column set of the first vanishing maximal minor, if any.
pub fn vanishing_minor(m: &[Vec<BigRational>]) -> Option<Vec<usize>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    combinations(cols, rows).into_iter().find(|set| {
        let sub: Vec<Vec<BigRational>> = m
            .iter()
            .map(|row| set.iter().map(|&c| row[c].clone()).collect())
            .collect();
        determinant_rational(&sub).is_zero()
    })
}

/// Lexicographically smallest `(n_1, …, n_s) >= 0` with `Σ n_k g_k = target`.
pub fn lex_smallest_representation(target: &BigInt, gens: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let d = target
        .to_usize()
        .ok_or_else(|| Error::Precondition(format!("semigroup target {target} too large")))?;
    let g: Vec<usize> = gens
        .iter()
        .map(|x| {
            x.to_usize()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::Precondition(format!("bad semigroup generator {x}")))
        })
        .collect::<Result<_>>()?;
    let s = g.len();
    // reach[k][t]: t is a nonnegative combination of g[k..].
    let mut reach = vec![vec![false; d + 1]; s + 1];
    reach[s][0] = true;
    for k in (0..s).rev() {
        for t in 0..=d {
            reach[k][t] = reach[k + 1][t] || (t >= g[k] && reach[k][t - g[k]]);
        }
    }
    if !reach[0][d] {
        return Ok(None);
    }
    let mut rest = d;
    let mut out = Vec::with_capacity(s);
    for k in 0..s {
        let mut n = 0;
        while !reach[k + 1][rest - n * g[k]] {
            n += 1;
        }
        rest -= n * g[k];
        out.push(BigInt::from(n));
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_node() -> SpliceDiagram {
        let u = || Vertex::Node("u".into());
        let v = || Vertex::Node("v".into());
        let l = Vertex::Leaf;
        SpliceDiagram::new(
            4,
            vec!["u".into(), "v".into()],
            vec![(u(), l(1)), (u(), l(2)), (u(), v()), (v(), l(3)), (v(), l(4))],
            vec![
                ("u".into(), (u(), l(1)), 2),
                ("u".into(), (u(), l(2)), 3),
                ("u".into(), (u(), v()), 7),
                ("v".into(), (v(), l(3)), 5),
                ("v".into(), (v(), l(4)), 2),
                ("v".into(), (v(), u()), 11),
            ],
        )
        .unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn e(c: &[i64]) -> LatticeVector {
        LatticeVector::exponent(c.iter().copied())
    }

    #[test]
    fn linking_numbers() {
        let d = two_node();
        assert_eq!(d.linking_number("u", &Vertex::Leaf(3)).unwrap(), big(12));
        assert_eq!(d.d("u").unwrap(), big(42));
        assert_eq!(d.d("v").unwrap(), big(110));
        assert_eq!(d.linking_number("u", &Vertex::Node("v".into())).unwrap(), big(60));
        assert_eq!(d.linking_number("v", &Vertex::Node("u".into())).unwrap(), big(60));
        let pb = SpliceDiagram::one_node(2, 3, 7).unwrap();
        assert_eq!(pb.linking_number("u", &Vertex::Leaf(1)).unwrap(), big(21));
        assert!(matches!(d.linking_number("x", &Vertex::Leaf(1)), Err(Error::NotANode(_))));
    }

    #[test]
    fn weight_vectors() {
        let d = two_node();
        assert_eq!(d.weight_vector("u").unwrap(), LatticeVector::weight([21, 14, 12, 30]));
        assert_eq!(d.weight_vector("v").unwrap(), LatticeVector::weight([30, 20, 22, 55]));
        let pb = SpliceDiagram::one_node(2, 3, 7).unwrap();
        assert_eq!(pb.weight_vector("u").unwrap(), LatticeVector::weight([21, 14, 6]));
    }

    #[test]
    fn validation() {
        let r = two_node().validate().unwrap();
        assert!(r.passed());
        assert_eq!(r.edge_determinant.len(), 1);
        let ed = &r.edge_determinant[0];
        assert_eq!((ed.d_u.clone() * &ed.d_v, ed.linking.clone() * &ed.linking), (big(4620), big(3600)));
        let toward_v = r
            .semigroup
            .iter()
            .find(|s| s.node == "u" && s.toward == Vertex::Node("v".into()))
            .unwrap();
        assert_eq!(toward_v.generators, vec![big(12), big(30)]);
        assert_eq!(toward_v.representation, Some(vec![big(1), big(1)]));

        let bad = SpliceDiagram::one_node(2, 4, 5).unwrap().validate().unwrap();
        assert!(!bad.coprime_ok());
        assert!(bad.edge_determinant_ok());
    }

    #[test]
    fn admissible_monomials() {
        let d = two_node();
        assert_eq!(d.admissible_monomial("u", 0).unwrap(), e(&[2, 0, 0, 0]));
        assert_eq!(d.admissible_monomial("u", 2).unwrap(), e(&[0, 0, 1, 1]));
        assert_eq!(d.admissible_monomial("v", 2).unwrap(), e(&[1, 4, 0, 0]));
        for u in ["u", "v"] {
            let w = d.weight_vector(u).unwrap();
            for j in 0..3 {
                let m = d.admissible_monomial(u, j).unwrap();
                assert_eq!(pairing(&w, &m).unwrap(), d.d(u).unwrap());
            }
        }
    }

    #[test]
    fn two_node_system_with_alternating_rows() {
        let d = two_node();
        let row = vec![vec![
            BigRational::from_integer(big(1)),
            BigRational::from_integer(big(-1)),
            BigRational::from_integer(big(1)),
        ]];
        let mut options = SpliceOptions::default();
        options.coefficients.insert("u".into(), row.clone());
        options.coefficients.insert("v".into(), row);
        let s = d.splice_system(&options).unwrap();
        let expected = [
            Series::over_orthant(4, &[(&[2, 0, 0, 0], 1), (&[0, 3, 0, 0], -1), (&[0, 0, 1, 1], 1)]).unwrap(),
            Series::over_orthant(4, &[(&[0, 0, 5, 0], 1), (&[0, 0, 0, 2], -1), (&[1, 4, 0, 0], 1)]).unwrap(),
        ];
        assert_eq!(s.equations, expected);
    }

    #[test]
    fn pham_brieskorn_system() {
        let d = SpliceDiagram::one_node(2, 3, 7).unwrap();
        let mut options = SpliceOptions::default();
        options
            .coefficients
            .insert("u".into(), vec![vec![BigRational::one(); 3]]);
        let s = d.splice_system(&options).unwrap();
        assert_eq!(
            s.equations,
            vec![Series::over_orthant(3, &[(&[2, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 7], 1)]).unwrap()]
        );
    }

    #[test]
    fn default_coefficients_are_nondegenerate() {
        let m = default_coefficients(4);
        assert_eq!(m.len(), 2);
        assert_eq!(m[1], (1..=4).map(|j| BigRational::from_integer(big(j))).collect::<Vec<_>>());
        for r in 3..=8 {
            assert_eq!(vanishing_minor(&default_coefficients(r)), None, "r = {r}");
        }
    }

    #[test]
    fn degenerate_user_coefficients() {
        let d = two_node();
        let mut options = SpliceOptions::default();
        options.coefficients.insert(
            "u".into(),
            vec![vec![BigRational::zero(), BigRational::one(), BigRational::one()]],
        );
        assert_eq!(
            d.splice_system(&options),
            Err(Error::DegenerateCoefficients {
                node: "u".into(),
                columns: vec![1]
            })
        );
        options
            .coefficients
            .insert("u".into(), vec![vec![BigRational::one(); 2]]);
        assert!(matches!(d.splice_system(&options), Err(Error::CoefficientShape { .. })));
    }

    #[test]
    fn deformation_terms() {
        let d = two_node();
        let mut options = SpliceOptions::default();
        options
            .extra_terms
            .insert(("u".into(), 0), vec![(e(&[0, 0, 0, 2]), BigRational::one())]);
        // w_u·(0,0,0,2) = 60 > 42
        let s = d.splice_system(&options).unwrap();
        assert_eq!(s.equations[0].len(), 4);
        options
            .extra_terms
            .insert(("u".into(), 0), vec![(e(&[1, 0, 1, 0]), BigRational::one())]);
        // 21 + 12 = 33 <= 42
        assert!(matches!(d.splice_system(&options), Err(Error::DeformationWeight { .. })));
    }

    #[test]
    fn embedding() {
        let d = two_node();
        let emb = d.embedded_diagram().unwrap();
        let u = &emb.iter().find(|(v, _)| v == &Vertex::Node("u".into())).unwrap().1;
        let expected = RationalVector::new([21, 14, 12, 30].iter().map(|&c| BigRational::new(big(c), big(77))));
        assert_eq!(u, &expected);
        assert_eq!(emb[1].1, LatticeVector::unit(Role::Weight, 4, 1).to_rational());
        let pb = SpliceDiagram::one_node(2, 3, 7).unwrap().embedded_diagram().unwrap();
        assert_eq!(
            pb[3].1,
            RationalVector::new([21, 14, 6].iter().map(|&c| BigRational::new(big(c), big(41))))
        );
    }

    #[test]
    fn tropicalization_cones() {
        let t = two_node().splice_tropicalization().unwrap();
        let max = t.maximal_cones();
        assert_eq!(max.len(), 5);
        assert!(max.iter().all(|c| c.dim() == 2));
        let pb = SpliceDiagram::one_node(3, 4, 5).unwrap().splice_tropicalization().unwrap();
        assert_eq!(pb.maximal_cones().len(), 3);
        assert!(pb.fan.rays().contains(&LatticeVector::weight([20, 15, 12])));
    }

    #[test]
    fn crosschecks() {
        let r = two_node().crosscheck_tropicalization().unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses.len(), 5);
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.witness == LatticeVector::weight([51, 34, 34, 85])));
        let pb = SpliceDiagram::one_node(2, 3, 7).unwrap().crosscheck_tropicalization().unwrap();
        assert!(pb.passed());
        assert_eq!(pb.divisor_support_equal, Some(true));
    }

    #[test]
    fn semigroup_failure_reported() {
        // Weights are pairwise coprime, but d_u = 30 is not in the semigroup <66, 42>.
        let u = || Vertex::Node("u".into());
        let v = || Vertex::Node("v".into());
        let l = Vertex::Leaf;
        let d = SpliceDiagram::new(
            4,
            vec!["u".into(), "v".into()],
            vec![(u(), l(1)), (u(), l(2)), (u(), v()), (v(), l(3)), (v(), l(4))],
            vec![
                ("u".into(), (u(), l(1)), 2),
                ("u".into(), (u(), l(2)), 3),
                ("u".into(), (u(), v()), 5),
                ("v".into(), (v(), l(3)), 7),
                ("v".into(), (v(), l(4)), 11),
                ("v".into(), (v(), u()), 13),
            ],
        )
        .unwrap();
        let r = d.validate().unwrap();
        assert!(r.coprime_ok());
        assert!(!r.semigroup_ok());
        let c = d.crosscheck_tropicalization().unwrap();
        assert!(c.precondition_failure.is_some());
        assert!(!c.passed());
    }

    #[test]
    fn structural_errors() {
        let u = || Vertex::Node("u".into());
        let l = Vertex::Leaf;
        let r = SpliceDiagram::new(
            2,
            vec!["u".into()],
            vec![(u(), l(1)), (u(), l(2))],
            vec![("u".into(), (u(), l(1)), 2), ("u".into(), (u(), l(2)), 3)],
        );
        assert!(matches!(r, Err(Error::InvalidDiagram(_))));
        let r = SpliceDiagram::new(2, vec![], vec![(l(1), l(2))], vec![]);
        assert!(matches!(r, Err(Error::InvalidDiagram(_))));
    }
}

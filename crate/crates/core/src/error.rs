use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library. Every variant maps to a stable
/// machine-readable code through [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("lattice role mismatch: cannot pair two {0} vectors")]
    RoleMismatch(&'static str),

    #[error("zero vector has no primitive representative")]
    ZeroVector,

    #[error("ambient rank {rank} exceeds the configured limit {limit}")]
    RankLimit { rank: usize, limit: usize },

    #[error("cone is not strictly convex (contains a line)")]
    NotStrictlyConvex,

    #[error("cone is not full-dimensional (dim {dim} in rank {rank})")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("ray {0} lies outside the support of the fan")]
    OutsideSupport(String),

    #[error("exponent {0} is not in the dual cone of the ambient cone")]
    ExponentOutsideDual(String),

    #[error("the zero series is not allowed here")]
    ZeroSeries,

    #[error("weight {0} is not in the interior of the ambient cone")]
    BoundaryWeight(String),

    #[error("series is not an interior divisor: it vanishes on the boundary stratum of ray {0}")]
    NotInterior(String),

    #[error("Newton polyhedra have different recession cones")]
    RecessionMismatch,

    #[error("ambient cones differ")]
    AmbientMismatch,

    #[error("invalid splice diagram: {0}")]
    InvalidDiagram(String),

    #[error("vertex {0} is not a node")]
    NotANode(String),

    #[error("semigroup condition fails at node {node}: {target} is not a nonnegative combination of {generators:?}")]
    Semigroup {
        node: String,
        target: String,
        generators: Vec<String>,
    },

    #[error("coefficient matrix of node {node} is degenerate: maximal minor on columns {columns:?} vanishes")]
    DegenerateCoefficients { node: String, columns: Vec<usize> },

    #[error("coefficient matrix of node {node} has shape {found:?}, expected {expected:?}")]
    CoefficientShape {
        node: String,
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("term {term} of node {node} has weight {weight}, which does not exceed {bound}")]
    DeformationWeight {
        node: String,
        term: String,
        weight: String,
        bound: String,
    },

    #[error("face is not a compact edge of the Newton polygon")]
    NotCompactEdge,

    #[error("no rational root for edge polynomial {0}; retry in float mode")]
    NoRationalRoot(String),

    #[error("Newton-Puiseux recursion exceeded depth cap {0}")]
    DepthExceeded(usize),

    #[error("arc coordinate {0} vanishes up to the truncation order")]
    WeightUndetermined(usize),

    #[error("arc is not interior: weight {0} is not in the interior of the ambient cone")]
    ArcNotInterior(String),

    #[error("operation requires rank {expected}, got {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    /// Stable identifier for reports and the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::RoleMismatch(_) => "role_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::RankLimit { .. } => "rank_limit",
            Error::NotStrictlyConvex => "not_strictly_convex",
            Error::NotFullDimensional { .. } => "not_full_dimensional",
            Error::OutsideSupport(_) => "outside_support",
            Error::ExponentOutsideDual(_) => "exponent_outside_dual",
            Error::ZeroSeries => "zero_series",
            Error::BoundaryWeight(_) => "boundary_weight",
            Error::NotInterior(_) => "not_interior",
            Error::RecessionMismatch => "recession_mismatch",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::NotANode(_) => "not_a_node",
            Error::Semigroup { .. } => "semigroup",
            Error::DegenerateCoefficients { .. } => "degenerate_coefficients",
            Error::CoefficientShape { .. } => "coefficient_shape",
            Error::DeformationWeight { .. } => "deformation_weight",
            Error::NotCompactEdge => "not_compact_edge",
            Error::NoRationalRoot(_) => "no_rational_root",
            Error::DepthExceeded(_) => "depth_exceeded",
            Error::WeightUndetermined(_) => "weight_undetermined",
            Error::ArcNotInterior(_) => "arc_not_interior",
            Error::WrongRank { .. } => "wrong_rank",
            Error::Precondition(_) => "precondition",
        }
    }
}

//! Exact computation of local tropicalizations of subtoric germs.
//!
//! The crate is organised bottom-up: lattice vectors and the dual pairing,
//! rational polyhedral cones and fans, Newton polyhedra of truncated series,
//! local tropicalizations built from them, splice diagrams and an arc-based
//! oracle used to cross-check results.

pub mod arc;
pub mod cone;
mod dd;
pub mod error;
pub mod fan;
pub mod lattice;
mod linalg;
pub mod newton;
pub mod splice;
pub mod troploc;

pub use cone::Cone;
pub use error::{Error, Result};
pub use fan::Fan;
pub use lattice::{pairing, LatticeVector, RationalVector, Role};
pub use newton::{NewtonPolyhedron, Series};

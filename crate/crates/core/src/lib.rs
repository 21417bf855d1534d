//! Exact-rational toolkit for torus-graded affine coordinate rings presented
//! by polyhedral divisors on a curve or point base.
//!
//! The crate provides:
//!
//! - rational polyhedral cone arithmetic over dual lattices M and N
//!   ([`cone`], [`lattice`]),
//! - polyhedra with a fixed tail cone and their piecewise-linear support
//!   functions ([`polyhedron`]),
//! - Q-divisors, section spaces and big/semiample tests on supported bases
//!   ([`curve`]),
//! - polyhedral divisors, properness checking and the multigraded section
//!   ring with explicit graded pieces ([`divisor`]),
//! - the classification machinery for homogeneous locally nilpotent
//!   derivations of fiber type ([`lnd`]),
//! - Makar-Limanov-type invariants and report generation ([`invariants`]),
//! - the JSON input/report schema used by the command-line tool ([`json`]).
//!
//! All arithmetic is exact over arbitrary-precision rationals; there is no
//! floating point anywhere. Values are immutable after construction and all
//! operations are pure functions, so everything is safe to share across
//! threads.

pub mod arith;
pub mod cone;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod invariants;
pub mod json;
pub mod lattice;
mod linalg;
pub mod lnd;
pub mod poly;
pub mod polyhedron;
pub mod section;

pub use cone::Cone;
pub use curve::{Base, DivisorPoint, QDivisor, TriState};
pub use divisor::{Element, HomogeneousElement, PolyhedralDivisor};
pub use error::{Error, Result};
pub use lattice::{LatticeVector, RationalVector, Space};
pub use lnd::{FiberLnd, RayContext};
pub use polyhedron::TailedPolyhedron;
pub use section::RationalSection;

//! Membership spaces of sparse polynomial systems.
//!
//! Given a target support `A`, a Newton polytope `B` and `k` generic
//! polynomials supported on `Z(B)`, this crate computes the space of ideal
//! members supported in `A` by exact linear algebra over a prime field, and
//! provides the polyhedral machinery (erosions, normal chains, foundations)
//! that predicts its dimension.

pub mod chain;
pub mod field;
pub mod json;
pub mod koszul;
pub mod linalg;
pub mod membership;
pub mod osculate;
pub mod pointset;
pub mod polytope;
pub mod rational;
pub mod sparsepoly;

pub use field::{FieldElem, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use linalg::{Matrix, Solution};
pub use membership::{MembershipError, MembershipProblem, Protocol, SystemSpec};
pub use pointset::{Point, PointSet};
pub use polytope::{Facet, HPolytope, PolytopeError};
pub use rational::Rational;
pub use sparsepoly::SparsePoly;

//! Exact combinatorics of Kac-Moody Weyl groups and the Weyl monoid.
//!
//! The crate is organised bottom-up:
//!
//! * [`matrix`] and [`linalg`]: dense matrices and exact elimination, generic
//!   over the scalar type.
//! * [`gcm`]: generalized Cartan matrices, symmetrizers, component typing and
//!   special subsets.
//! * [`realization`]: the simply connected minimal free realization of rank
//!   `2n - l` with its invariant form.
//! * [`weyl`]: Weyl group elements as contragredient integer matrix pairs.
//! * [`faces`]: chamber descent, facets and faces `w R(Θ)` of the Tits cone.
//! * [`monoid`]: the Weyl monoid with canonical forms and both normal forms.
//! * [`strata`]: index data of the orbit stratification and its emitters.
//! * [`oracle`]: an independent partial-map model used for cross-checks.
//!
//! Index sets are 0-based inside the library; every textual or JSON surface
//! prints them 1-based.

pub mod catalog;
pub mod error;
pub mod faces;
pub mod gcm;
pub mod index_set;
pub mod linalg;
pub mod matrix;
pub mod monoid;
pub mod oracle;
pub mod realization;
pub mod strata;
pub mod weyl;

pub use error::{Error, Result};

pub use faces::{Face, Facet, IntersectStatus, MembershipResult, NonMembership};
pub use gcm::{ComponentType, CoxeterOrder, Gcm, SpecialSet};
pub use index_set::IndexSet;
pub use monoid::{NormalForm, NormalFormFlavor, ParabolicWitness, WeylMonoid, WeylMonoidElement};
pub use matrix::Matrix;

pub use realization::{Coweight, DominanceOrder, Realization, WeightVector};
pub use weyl::{RealRoot, WeylElement};

/// Arbitrary precision rationals, the scalar used for all exact geometry.
pub type Rational = num_rational::BigRational;
/// Integer matrices; Weyl group elements act through these.
pub type IntMatrix = Matrix<i64>;
/// Exact rational matrices.
pub type RatMatrix = Matrix<Rational>;

/// Default word-length budget for face intersections.
pub const DEFAULT_INTERSECT_BUDGET: usize = 8;
/// Default step budget for chamber descent.
pub const DEFAULT_DESCENT_BUDGET: usize = 100_000;
/// Upper bound on descent strips when computing lengths of group elements.
pub const LENGTH_SAFETY_BUDGET: usize = 1_000_000;

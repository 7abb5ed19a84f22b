//! Exact arithmetic for the cluster-mutation dynamics on quintuples: the
//! group `G = ⟨α, β⟩` and its invariant `T`, the reduction `φ` onto the
//! Markov-like equation `xyz − x² − y² − z² − 7 = 0`, tree enumeration and
//! constructive descent of its positive solutions, Pell/conic solvers for
//! the fiber hyperbolas, and a decision procedure for membership in the
//! orbit of `(ε,…,ε)` that emits replayable witnesses.
//!
//! Everything is generic over the scalar type through [`scalar::Scalar`],
//! [`scalar::FieldScalar`] and [`scalar::IntScalar`]; the canonical exact
//! instantiations are the aliases below. All contracts are exact
//! identities; there are no tolerances anywhere.
//!
//! ```
//! use quintorb_core::{decision, Int, QuintupleZ};
//!
//! let eps = Int::from(1);
//! let p = QuintupleZ::from_array([2, 3, 5, 1, 1].map(Int::from));
//! let w = decision::witness(&p, &eps).unwrap();
//! assert_eq!(w.replay(), p);
//! ```

pub mod conic;
pub mod conserved;
pub mod decision;
pub mod exchange;
pub mod markov;
pub mod oracle;
pub mod quintuple;
pub mod scalar;
pub mod selftest;
mod smallmat;

pub use conserved::{lift_word, phi, project_word, TildeWord, Triple};
pub use quintuple::{Letter, Quintuple, Word};
pub use scalar::{FieldScalar, IntScalar, Scalar};

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;

/// Quintuple over exact rationals.
pub type QuintupleQ = Quintuple<Rat>;
/// Quintuple over exact integers.
pub type QuintupleZ = Quintuple<Int>;
/// Triple over exact rationals.
pub type TripleQ = Triple<Rat>;
/// Triple over exact integers.
pub type TripleZ = Triple<Int>;
/// Exchange matrix over exact integers.
pub type ExchangeMatrixZ = exchange::ExchangeMatrix<Int>;

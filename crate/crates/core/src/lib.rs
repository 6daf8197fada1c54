//! Exact-arithmetic construction and verification of finite-dimensional
//! weak multiplier Hopf algebras.
//!
//! The library builds concrete finite-dimensional examples (function algebras
//! and convolution algebras of finite groupoids, the algebra attached to a
//! separability idempotent, discrete quantum groups, and two-sided smash
//! products) and then mechanically verifies every defining axiom and every
//! derived structural law on them: coassociativity, fullness of the canonical
//! maps, existence and uniqueness of the counit and of the canonical
//! idempotent, all antipode identities, the source and target algebras with
//! their counital maps, separability certificates, and regularity.
//!
//! All verification is exact. Scalars are rationals of arbitrary precision
//! (`Rat`), comparisons are equalities, and every checker either proves a law
//! on the given instance or returns a concrete witness of failure. The core
//! types are generic over any [`scalar::Scalar`], so the same code also
//! compiles over `f32`/`f64`, but the shipped constructions, CLI, and tests
//! use `Rat` exclusively.
//!
//! Organization:
//! - [`linalg`]: dense and sparse exact linear algebra (row reduction,
//!   canonical subspaces, affine solving with kernel bases).
//! - [`groupoid`]: finite groupoids, constructors, and axiom validation.
//! - [`algebra`]: structure-constant algebras, multipliers, multiplier
//!   algebras, tensor products.
//! - [`hopf`]: small finite-dimensional Hopf algebras and module-algebra
//!   actions (used by the smash product).
//! - [`wmha`]: the bundle type (algebra, coproduct, counit, antipode,
//!   canonical idempotent) and the axiom verifier.
//! - [`source_target`]: source and target counital maps, base algebras, and
//!   the full suite of structural checks on them.
//! - [`separability`]: separability idempotents, their verification, and
//!   generators.
//! - [`constructions`]: the concrete families of examples and the maps
//!   between them.
//! - [`report`]: machine-readable check reports.

pub mod algebra;
pub mod constructions;
pub mod groupoid;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod separability;
pub mod source_target;
pub mod wmha;

/// The concrete scalar type used by every shipped instance: exact rationals
/// with arbitrary-precision integer numerator and denominator.
pub type Rat = num::BigRational;

/// Dense matrix over [`Rat`].
pub type QMatrix = linalg::Matrix<Rat>;
/// Sparse vector over [`Rat`].
pub type QVec = linalg::SVec<Rat>;
/// Subspace over [`Rat`] in canonical reduced row echelon form.
pub type QSubspace = linalg::Subspace<Rat>;
/// Structure-constant algebra over [`Rat`].
pub type QAlgebra = algebra::Algebra<Rat>;
/// Multiplier of an algebra over [`Rat`].
pub type QMultiplier = algebra::Multiplier<Rat>;
/// Weak multiplier Hopf algebra bundle over [`Rat`].
pub type QBundle = wmha::WmhaBundle<Rat>;

/// Convenience constructor for an exact rational from a numerator and
/// denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    use num::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

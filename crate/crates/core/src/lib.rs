//! Exact computational toolkit for isotrivial Lagrangian fibrations.
//!
//! Everything here runs over exact arithmetic: arbitrary-precision rationals
//! ([`Rational`]) and elements of the cyclotomic field Q(ζ_L)
//! ([`cyclotomic::Cyclotomic`], default conductor 12). The toolkit covers:
//!
//! - the Kodaira singular-fiber table with Euler numbers, monodromy orders,
//!   local cover exponents, and log canonical thresholds ([`kodaira`]);
//! - enumeration of singular-fiber configurations of isotrivial elliptic K3
//!   fibrations per cyclic intermediate Galois group, with the ramification
//!   profile, connectivity, and genus of the induced cyclic cover of P^1,
//!   validated against bundled golden tables ([`enumfib`]);
//! - concrete monodromy-group candidates (symmetric groups, wreath products
//!   μ_m ≀ S_n, the Pauli group, cyclic groups, abelian controls) with their
//!   natural monomial representations ([`groups`]);
//! - exact character calculus: exterior powers via Newton's identities over
//!   power sums, multiplicities, simplicity checks, invariant Hodge diamonds
//!   ([`repcheck`]);
//! - canonical-bundle-formula residuals on P^n bases, the D_q vs D_π
//!   comparison with type A/B verdicts, monodromy restriction tables, the
//!   type-A group classification with the symplectic-resolution filter, and
//!   Kuga–Satake dimension bookkeeping ([`canonical`]).
//!
//! All values are immutable after construction and every operation is pure,
//! so the whole crate is safe to use from parallel iterators; exact
//! arithmetic makes parallel reductions bit-identical to sequential ones.

pub mod canonical;
pub mod cyclotomic;
pub mod enumfib;
pub mod groups;
pub mod kodaira;
pub mod rational;
pub mod repcheck;

pub use cyclotomic::Cyclotomic;
pub use groups::{Group, GroupElement, GroupSpec};
pub use kodaira::KodairaType;
pub use rational::Rational;

/// Conductor of the cyclotomic field used for all shipped groups.
///
/// Q(ζ_12) contains the roots of unity needed by μ_2, μ_3, μ_4, μ_6 and the
/// Pauli group (i = ζ_12^3). The conductor is a parameter of the scalar layer;
/// 12 is merely the default every shipped group embeds into.
pub const DEFAULT_CONDUCTOR: u32 = 12;

//! Exact counting of `Z2^alpha x Z8^beta` additive codes by type.
//!
//! * [`qnum`]: Gaussian binomials and q-multinomials in exact integers.
//! * [`mgn`]: the counting formulas, their specializations to Z8, Z2Z4 and
//!   binary codes, dual types, and identity sweeps.
//! * [`codes`]: concrete words, standard-form generator matrices, parity-check
//!   matrices, spans, duals and type classification over `Z2^a x Z_{2^e}^b`.
//! * [`oracle`]: exhaustive subgroup enumeration, used to validate the formulas.
//! * [`sequence`]: integer sequences obtained by sweeping affine type families.
//!
//! The counting routines are generic over the [`Exact`] scalar. The aliases
//! below fix it to an arbitrary precision integer, which is what callers
//! normally want.

pub mod codes;
pub mod mgn;
pub mod oracle;
pub mod qnum;
pub mod scalar;
pub mod sequence;

pub use mgn::{CodeType, TypeProfile, Z2Z4Profile};
pub use scalar::{ArithError, Exact};

/// Arbitrary precision count.
pub type Nat = num_bigint::BigUint;

/// Product-formula breakdown with arbitrary precision factors.
pub type Breakdown = mgn::CountBreakdown<Nat>;

/// Type census with arbitrary precision counts.
pub type Census = oracle::TypeCensus;

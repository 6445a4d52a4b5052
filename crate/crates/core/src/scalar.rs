//! Exact unsigned integer scalars.
//!
//! Every counting routine in this crate is generic over [`Exact`], so the same
//! code runs on `u64`/`u128` (fast, overflow reported) and on
//! [`BigUint`](num_bigint::BigUint) (never overflows). Floating point types are
//! deliberately not admitted: all divisions are exact and checked.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};
use thiserror::Error;

/// An exact, unsigned integer type usable as a count.
pub trait Exact:
    Clone
    + Debug
    + Display
    + Ord
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Exact for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Failure of an exact arithmetic step.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// The scalar type cannot represent an intermediate value.
    #[error("overflow of {type_name} while computing {context}")]
    Overflow {
        type_name: &'static str,
        context: &'static str,
    },
    /// A division that must be exact left a remainder.
    #[error("inexact division in {context}: {dividend} / {divisor}")]
    Inexact {
        context: &'static str,
        dividend: String,
        divisor: String,
    },
}

impl ArithError {
    pub(crate) fn overflow<T>(context: &'static str) -> Self {
        ArithError::Overflow {
            type_name: std::any::type_name::<T>(),
            context,
        }
    }
}

pub(crate) type ArithResult<T> = Result<T, ArithError>;

pub(crate) fn lift<T: Exact>(v: u64, context: &'static str) -> ArithResult<T> {
    T::from_u64(v).ok_or_else(|| ArithError::overflow::<T>(context))
}

pub(crate) fn mul<T: Exact>(a: &T, b: &T, context: &'static str) -> ArithResult<T> {
    a.checked_mul(b)
        .ok_or_else(|| ArithError::overflow::<T>(context))
}

pub(crate) fn sub<T: Exact>(a: &T, b: &T, context: &'static str) -> ArithResult<T> {
    a.checked_sub(b)
        .ok_or_else(|| ArithError::overflow::<T>(context))
}

/// `base^exp`, failing instead of wrapping.
pub fn pow<T: Exact>(base: u64, exp: u64, context: &'static str) -> ArithResult<T> {
    let base = lift::<T>(base, context)?;
    let exp = usize::try_from(exp).map_err(|_| ArithError::overflow::<T>(context))?;
    num_traits::checked_pow(base, exp).ok_or_else(|| ArithError::overflow::<T>(context))
}

/// `2^exp`.
pub fn pow2<T: Exact>(exp: u64, context: &'static str) -> ArithResult<T> {
    pow(2, exp, context)
}

/// `dividend / divisor`, required to be exact.
pub fn div_exact<T: Exact>(dividend: &T, divisor: &T, context: &'static str) -> ArithResult<T> {
    let inexact = || ArithError::Inexact {
        context,
        dividend: dividend.to_string(),
        divisor: divisor.to_string(),
    };
    if divisor.is_zero() {
        return Err(inexact());
    }
    let (q, r) = dividend.div_rem(divisor);
    if !r.is_zero() {
        return Err(inexact());
    }
    Ok(q)
}

/// Product of an iterator of fallible factors.
pub(crate) fn product<T: Exact>(
    factors: impl IntoIterator<Item = ArithResult<T>>,
    context: &'static str,
) -> ArithResult<T> {
    factors
        .into_iter()
        .try_fold(T::one(), |acc, f| mul(&acc, &f?, context))
}

//! q-integers, q-factorials, Gaussian binomials and q-multinomials.
//!
//! Everything is evaluated at an integer base `q >= 2` and computed in exact
//! integer arithmetic. Divisions only happen where the quotient is known to be
//! an integer, and each one is checked.

use std::fmt;

use crate::scalar::{self, ArithResult, Exact};

/// Integer base of a q-analogue. Always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QBase(u32);

impl QBase {
    pub const TWO: QBase = QBase(2);

    pub fn new(q: u32) -> Option<QBase> {
        (q >= 2).then_some(QBase(q))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for QBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `q^n - 1`
fn q_pow_minus_one<T: Exact>(n: u32, q: QBase) -> ArithResult<T> {
    let p: T = scalar::pow(u64::from(q.0), u64::from(n), "q^n")?;
    scalar::sub(&p, &T::one(), "q^n - 1")
}

/// `[n]_q = 1 + q + ... + q^(n-1)`, which is 0 for `n = 0`.
pub fn q_integer<T: Exact>(n: u32, q: QBase) -> ArithResult<T> {
    let num = q_pow_minus_one::<T>(n, q)?;
    let den: T = scalar::lift(u64::from(q.0 - 1), "q - 1")?;
    scalar::div_exact(&num, &den, "q-integer")
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial<T: Exact>(n: u32, q: QBase) -> ArithResult<T> {
    scalar::product((1..=n).map(|i| q_integer::<T>(i, q)), "q-factorial")
}

/// Gaussian binomial `[n; k]_q`: the number of `k`-dimensional subspaces of
/// `F_q^n` when `q` is a prime power. Zero when `k > n`.
///
/// Evaluated as the running product `prod_{i<k} (q^(n-i) - 1) / (q^(i+1) - 1)`;
/// after step `i` the accumulator equals `[n; i+1]_q`, so each division is exact.
pub fn q_binomial<T: Exact>(n: u32, k: u32, q: QBase) -> ArithResult<T> {
    if k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        let num = q_pow_minus_one::<T>(n - i, q)?;
        let den = q_pow_minus_one::<T>(i + 1, q)?;
        acc = scalar::mul(&acc, &num, "q-binomial")?;
        acc = scalar::div_exact(&acc, &den, "q-binomial")?;
    }
    Ok(acc)
}

/// q-multinomial `[n; k1, k2, ..., km]_q = [n; k1] [n-k1; k2] ... `.
///
/// `n - sum(parts)` is the implicit last part; the result is 0 when the parts
/// add up to more than `n`. An empty `parts` gives 1.
pub fn q_multinomial<T: Exact>(n: u32, parts: &[u32], q: QBase) -> ArithResult<T> {
    let total: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    if total > u64::from(n) {
        return Ok(T::zero());
    }
    let mut remaining = n;
    let mut acc = T::one();
    for &part in parts {
        let factor = q_binomial::<T>(remaining, part, q)?;
        acc = scalar::mul(&acc, &factor, "q-multinomial")?;
        remaining -= part;
    }
    Ok(acc)
}

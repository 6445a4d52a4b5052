//! Integer sequences from one-parameter families of Z2Z8 types.
//!
//! A family assigns to each of the six slots `(alpha, beta; k0, k1, k2, k3)`
//! an affine expression `a*r + b` in the index `r`. The `r`-th term is the
//! number of codes of the resulting type, with 0 for an invalid type or a
//! negative slot.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::mgn::{self, MgnError, TypeProfile};
use crate::Nat;

/// Longest range of indices accepted in one request.
pub const MAX_TERMS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("unknown sequence family `{0}`")]
    UnknownFamily(String),
    #[error("bad affine expression `{expr}`: {msg}")]
    BadExpr { expr: String, msg: String },
    #[error("a family needs 6 comma-separated slots, got {0}")]
    SlotCount(usize),
    #[error("bad range {start}..={end} (at most {MAX_TERMS} terms)")]
    BadRange { start: i64, end: i64 },
    #[error("b-file line {line}: {msg}")]
    BFile { line: usize, msg: String },
    #[error(transparent)]
    Mgn(#[from] MgnError),
}

/// `a*r + b`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64) -> Self {
        Affine { a, b }
    }

    pub const fn constant(b: i64) -> Self {
        Affine { a: 0, b }
    }

    pub fn eval(&self, r: i64) -> Option<i64> {
        self.a.checked_mul(r)?.checked_add(self.b)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = match self.a {
            0 => return write!(f, "{}", self.b),
            1 => "r".to_string(),
            -1 => "-r".to_string(),
            a => format!("{a}r"),
        };
        match self.b {
            0 => write!(f, "{lead}"),
            b if b > 0 => write!(f, "{lead}+{b}"),
            b => write!(f, "{lead}{b}"),
        }
    }
}

/// Accepts sums of integer terms and multiples of `r`, e.g. `2r+1`, `r - 3`,
/// `3*r`, `-r+4`, `5`.
impl FromStr for Affine {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| SequenceError::BadExpr {
            expr: s.to_string(),
            msg: msg.to_string(),
        };
        let split_token = s.split_whitespace().collect::<Vec<_>>().windows(2).any(|w| {
            let end = w[0].chars().next_back().is_some_and(|c| c.is_alphanumeric());
            let start = w[1].chars().next().is_some_and(|c| c.is_alphanumeric());
            end && start
        });
        if split_token {
            return Err(err("whitespace inside a term"));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut out = Affine::constant(0);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == compact.len() => (1, rest),
                _ => return Err(err("expected + or -")),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(err("missing term"));
            }
            let overflow = || err("coefficient overflow");
            if let Some(coef) = term.strip_suffix('r') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c: i64 = if coef.is_empty() {
                    1
                } else {
                    coef.parse().map_err(|_| err("bad coefficient"))?
                };
                out.a = out.a.checked_add(sign * c).ok_or_else(overflow)?;
            } else {
                let c: i64 = term.parse().map_err(|_| err("bad constant"))?;
                out.b = out.b.checked_add(sign * c).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }
}

/// A named family of types indexed by `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFamily {
    pub name: String,
    /// `alpha, beta, k0, k1, k2, k3`
    pub slots: [Affine; 6],
    /// First index with a nonzero term.
    pub offset: i64,
}

const fn a(a: i64, b: i64) -> Affine {
    Affine::new(a, b)
}

const fn c(b: i64) -> Affine {
    Affine::constant(b)
}

const R: Affine = Affine::new(1, 0);

/// Built-in families: name, slots, offset.
const BUILTINS: [(&str, [Affine; 6], i64); 8] = [
    ("t1", [R, a(2, 0), R, R, c(0), R], 1),
    ("t2", [a(1, 1), c(2), R, c(1), c(1), c(0)], 1),
    ("t3", [a(1, 1), c(3), R, c(1), c(1), c(1)], 1),
    ("t4", [a(1, 1), a(2, 1), R, c(0), R, R], 1),
    ("t5", [a(1, 2), a(2, 1), R, c(0), c(1), R], 1),
    ("t6", [R, a(1, 2), c(2), c(0), c(1), R], 2),
    ("t7", [R, a(2, 0), R, R, R, c(0)], 1),
    ("t8", [c(1), R, c(1), c(1), c(1), c(1)], 3),
];

impl SequenceFamily {
    pub fn builtin(name: &str) -> Result<Self, SequenceError> {
        BUILTINS
            .iter()
            .find(|(n, _, _)| *n == name)
            .map(|(n, slots, offset)| SequenceFamily {
                name: n.to_string(),
                slots: *slots,
                offset: *offset,
            })
            .ok_or_else(|| SequenceError::UnknownFamily(name.to_string()))
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTINS.iter().map(|(n, _, _)| *n)
    }

    /// Parses six comma-separated affine slots, e.g. `r+1,2,r,1,1,0`. The
    /// offset defaults to 1.
    pub fn parse(name: &str, spec: &str) -> Result<Self, SequenceError> {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 6 {
            return Err(SequenceError::SlotCount(parts.len()));
        }
        let mut slots = [Affine::constant(0); 6];
        for (slot, part) in slots.iter_mut().zip(parts) {
            *slot = part.parse()?;
        }
        Ok(SequenceFamily {
            name: name.to_string(),
            slots,
            offset: 1,
        })
    }

    /// The type at index `r`, or `None` if a slot is negative or too large.
    pub fn profile(&self, r: i64) -> Option<TypeProfile> {
        let mut v = [0u32; 6];
        for (out, slot) in v.iter_mut().zip(&self.slots) {
            *out = u32::try_from(slot.eval(r)?).ok()?;
        }
        Some(TypeProfile::new(v[0], v[1], v[2], v[3], v[4], v[5]))
    }

    pub fn term(&self, r: i64) -> Result<Nat, SequenceError> {
        match self.profile(r) {
            Some(p) if p.is_valid() => Ok(mgn::count(&p)?),
            _ => Ok(Nat::default()),
        }
    }

    /// `(r, term(r))` for `r` in `start..=end`.
    pub fn terms(&self, start: i64, end: i64) -> Result<Vec<(i64, Nat)>, SequenceError> {
        let len = end.checked_sub(start).and_then(|d| d.checked_add(1));
        if !len.is_some_and(|n| n >= 1 && n as u64 <= MAX_TERMS) {
            return Err(SequenceError::BadRange { start, end });
        }
        (start..=end).map(|r| Ok((r, self.term(r)?))).collect()
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.slots;
        write!(f, "{}: ({},{};{},{},{},{})", self.name, s[0], s[1], s[2], s[3], s[4], s[5])
    }
}

/// One `n a(n)` line per term, LF terminated.
pub fn write_bfile(terms: &[(i64, Nat)]) -> String {
    terms.iter().map(|(n, v)| format!("{n} {v}\n")).collect()
}

/// Reads [`write_bfile`] output. Lines starting with `#` and blank lines are
/// skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, Nat)>, SequenceError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| SequenceError::BFile {
            line: i + 1,
            msg: msg.to_string(),
        };
        let mut it = line.split_whitespace();
        let (Some(n), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(err("expected `n a(n)`"));
        };
        out.push((
            n.parse().map_err(|_| err("bad index"))?,
            v.parse().map_err(|_| err("bad value"))?,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(name: &str, start: i64, end: i64) -> Vec<u64> {
        SequenceFamily::builtin(name)
            .unwrap()
            .terms(start, end)
            .unwrap()
            .into_iter()
            .map(|(_, v)| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn affine_parsing() {
        let p = |s: &str| s.parse::<Affine>().unwrap();
        assert_eq!(p("r+1"), Affine::new(1, 1));
        assert_eq!(p("2r"), Affine::new(2, 0));
        assert_eq!(p("2*r + 1"), Affine::new(2, 1));
        assert_eq!(p("-r+4"), Affine::new(-1, 4));
        assert_eq!(p("7"), Affine::new(0, 7));
        assert_eq!(p("r-3+r"), Affine::new(2, -3));
        for bad in ["", "x", "r+", "2rr", "1 2", "++r"] {
            assert!(bad.parse::<Affine>().is_err(), "{bad}");
        }
        for s in ["r+1", "2r", "-r+4", "7", "r-3", "-3r"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn short_table_rows() {
        assert_eq!(values("t2", 1, 5), [36, 84, 180, 372, 756]);
        assert_eq!(values("t3", 1, 5), [504, 1176, 2520, 5208, 10584]);
        assert_eq!(values("t7", 1, 4), [3, 35, 1395, 200787]);
        assert_eq!(values("t8", 3, 6), [42, 10080, 1666560, 239984640]);
    }

    #[test]
    fn leading_zeros_before_offset() {
        assert_eq!(values("t6", 1, 2), [0, 840]);
        assert_eq!(values("t8", 1, 3), [0, 0, 42]);
    }

    #[test]
    fn negative_slots_give_zero() {
        let f = SequenceFamily::parse("x", "r-2,1,0,0,0,0").unwrap();
        assert_eq!(f.profile(1), None);
        assert_eq!(f.term(1).unwrap(), Nat::default());
        assert_eq!(f.term(2).unwrap(), Nat::from(1u32));
    }

    #[test]
    fn custom_family_matches_builtin() {
        let custom = SequenceFamily::parse("mine", "r+1, 2, r, 1, 1, 0").unwrap();
        let t2 = SequenceFamily::builtin("t2").unwrap();
        assert_eq!(custom.slots, t2.slots);
        assert!(SequenceFamily::parse("x", "r,r").is_err());
        assert!(SequenceFamily::builtin("t9").is_err());
    }

    #[test]
    fn range_limits() {
        let f = SequenceFamily::builtin("t2").unwrap();
        assert!(f.terms(3, 2).is_err());
        assert!(f.terms(0, 10_000).is_err());
        assert!(f.terms(i64::MIN, i64::MAX).is_err());
        assert_eq!(f.terms(0, 0).unwrap().len(), 1);
    }

    #[test]
    fn bfile_round_trip() {
        let terms = SequenceFamily::builtin("t5").unwrap().terms(1, 3).unwrap();
        let text = write_bfile(&terms);
        assert_eq!(text, "1 2352\n2 9721600\n3 449914060800\n");
        assert_eq!(parse_bfile(&text).unwrap(), terms);
        assert!(parse_bfile("1 2 3\n").is_err());
        assert!(parse_bfile("a 2\n").is_err());
        assert_eq!(parse_bfile("# c\n\n4 5\n").unwrap(), vec![(4, Nat::from(5u32))]);
    }
}

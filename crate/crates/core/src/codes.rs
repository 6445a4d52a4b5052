//! Codes over `Z2^alpha x Z_{2^e}^beta` for `e = 2` (Z2Z4) and `e = 3` (Z2Z8).
//!
//! Words are stored binary segment first. Inside a [`Code`] each word is packed
//! into a `u32`, one bit per binary coordinate and `e` bits per modular
//! coordinate, first coordinate most significant, so numeric order on packed
//! words is the lexicographic order on residues.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mgn::{CodeType, TypeProfile, Z2Z4Profile};

/// Largest ambient group (as `log2` of its order) a [`Code`] can live in.
pub const MAX_CODE_LOG2: u64 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("unsupported ring exponent {0} (expected 2 or 3)")]
    UnsupportedRing(u32),
    #[error("{op} requires e = {required}, got e = {found}")]
    WrongRing {
        op: &'static str,
        required: u32,
        found: u32,
    },
    #[error("invalid type {0}")]
    InvalidType(CodeType),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("entry {value} out of range for modulus {modulus}")]
    EntryOutOfRange { value: u32, modulus: u32 },
    #[error("ambient group of order 2^{log2_order} exceeds the limit 2^{limit}")]
    AmbientTooLarge { log2_order: u64, limit: u64 },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("block {block}: expected {expected}, found {found}")]
    Shape {
        block: BlockId,
        expected: String,
        found: String,
    },
    #[error("modular segment has odd entries, cannot halve into Z4")]
    NotEven,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The group `Z2^alpha x Z_{2^e}^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    alpha: u32,
    beta: u32,
    e: u32,
}

impl Ambient {
    pub fn new(alpha: u32, beta: u32, e: u32) -> Result<Self, CodeError> {
        if e != 2 && e != 3 {
            return Err(CodeError::UnsupportedRing(e));
        }
        Ok(Ambient { alpha, beta, e })
    }

    pub fn z2z8(alpha: u32, beta: u32) -> Self {
        Ambient { alpha, beta, e: 3 }
    }

    pub fn z2z4(alpha: u32, beta: u32) -> Self {
        Ambient { alpha, beta, e: 2 }
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u32 {
        1 << self.e
    }

    /// `log2 |Z2^alpha x Z_{2^e}^beta|`
    pub fn log2_order(&self) -> u64 {
        u64::from(self.alpha) + u64::from(self.e) * u64::from(self.beta)
    }

    pub fn zero_word(&self) -> MixedWord {
        MixedWord {
            bin: vec![0; self.alpha as usize],
            modp: vec![0; self.beta as usize],
            e: self.e,
        }
    }

    fn check_word(&self, w: &MixedWord) -> Result<(), CodeError> {
        if w.bin.len() != self.alpha as usize || w.modp.len() != self.beta as usize || w.e != self.e {
            return Err(CodeError::DimensionMismatch {
                expected: format!("{self}"),
                found: format!("word with {}|{} entries over e={}", w.bin.len(), w.modp.len(), w.e),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2^{} x Z{}^{}", self.alpha, self.modulus(), self.beta)
    }
}

/// One element of `Z2^alpha x Z_{2^e}^beta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedWord {
    bin: Vec<u8>,
    modp: Vec<u8>,
    e: u32,
}

impl MixedWord {
    pub fn new(bin: Vec<u8>, modp: Vec<u8>, e: u32) -> Result<Self, CodeError> {
        if e != 2 && e != 3 {
            return Err(CodeError::UnsupportedRing(e));
        }
        if let Some(&v) = bin.iter().find(|&&v| v > 1) {
            return Err(CodeError::EntryOutOfRange {
                value: v.into(),
                modulus: 2,
            });
        }
        let m = 1u32 << e;
        if let Some(&v) = modp.iter().find(|&&v| u32::from(v) >= m) {
            return Err(CodeError::EntryOutOfRange {
                value: v.into(),
                modulus: m,
            });
        }
        Ok(MixedWord { bin, modp, e })
    }

    pub fn bin(&self) -> &[u8] {
        &self.bin
    }

    pub fn mod_part(&self) -> &[u8] {
        &self.modp
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn ambient(&self) -> Ambient {
        Ambient {
            alpha: self.bin.len() as u32,
            beta: self.modp.len() as u32,
            e: self.e,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bin.iter().chain(&self.modp).all(|&v| v == 0)
    }

    /// Additive order, a power of two dividing `2^e`.
    pub fn order(&self) -> u32 {
        let m = 1u32 << self.e;
        let mod_order = self
            .modp
            .iter()
            .map(|&v| if v == 0 { 1 } else { m >> u32::from(v).trailing_zeros() })
            .max()
            .unwrap_or(1);
        let bin_order = if self.bin.iter().any(|&v| v != 0) { 2 } else { 1 };
        mod_order.max(bin_order)
    }

    pub fn add(&self, other: &MixedWord) -> Result<MixedWord, CodeError> {
        self.ambient().check_word(other)?;
        let m = 1u16 << self.e;
        Ok(MixedWord {
            bin: self.bin.iter().zip(&other.bin).map(|(a, b)| a ^ b).collect(),
            modp: self
                .modp
                .iter()
                .zip(&other.modp)
                .map(|(&a, &b)| ((u16::from(a) + u16::from(b)) % m) as u8)
                .collect(),
            e: self.e,
        })
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        match (self.bin.is_empty(), self.modp.is_empty()) {
            (true, true) => write!(f, "|"),
            (true, false) => write!(f, "| {}", join(&self.modp)),
            (false, true) => write!(f, "{} |", join(&self.bin)),
            (false, false) => write!(f, "{} | {}", join(&self.bin), join(&self.modp)),
        }
    }
}

/// `2^(e-1) * sum(bin_u * bin_v) + sum(mod_u * mod_v)  (mod 2^e)`.
pub fn inner_product(u: &MixedWord, v: &MixedWord) -> Result<u32, CodeError> {
    u.ambient().check_word(v)?;
    let m = 1u32 << u.e;
    let bin: u32 = u.bin.iter().zip(&v.bin).map(|(a, b)| u32::from(a & b)).sum();
    let modp: u32 = u
        .modp
        .iter()
        .zip(&v.modp)
        .map(|(&a, &b)| u32::from(a) * u32::from(b) % m)
        .sum();
    Ok(((m / 2) * bin + modp) % m)
}

/// Bit layout of packed words for one ambient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Packing {
    ambient: Ambient,
    bits: u32,
    /// top bit of every field (binary fields are all top bit)
    high: u32,
    low: u32,
    /// the binary segment
    bin_mask: u32,
}

impl Packing {
    pub(crate) fn new(ambient: Ambient) -> Result<Self, CodeError> {
        if ambient.log2_order() > MAX_CODE_LOG2 {
            return Err(CodeError::AmbientTooLarge {
                log2_order: ambient.log2_order(),
                limit: MAX_CODE_LOG2,
            });
        }
        let e = ambient.e;
        let mod_bits = e * ambient.beta;
        let bits = ambient.alpha + mod_bits;
        let full = if bits == 0 { 0 } else { u32::MAX >> (32 - bits) };
        let bin_mask = full & !((1u32 << mod_bits) - 1);
        let mut high = bin_mask;
        for j in 0..ambient.beta {
            high |= 1 << (j * e + e - 1);
        }
        Ok(Packing {
            ambient,
            bits,
            high,
            low: full & !high,
            bin_mask,
        })
    }


    pub(crate) fn order(&self) -> u32 {
        1 << self.bits
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        ((a & self.low) + (b & self.low)) ^ ((a ^ b) & self.high)
    }

    #[inline]
    fn double(&self, a: u32) -> u32 {
        self.add(a, a)
    }

    #[inline]
    fn bin_is_zero(&self, a: u32) -> bool {
        a & self.bin_mask == 0
    }

    fn encode(&self, w: &MixedWord) -> Result<u32, CodeError> {
        self.ambient.check_word(w)?;
        let e = self.ambient.e;
        let mut x = 0u32;
        for &b in &w.bin {
            x = (x << 1) | u32::from(b);
        }
        for &v in &w.modp {
            x = (x << e) | u32::from(v);
        }
        Ok(x)
    }

    fn decode(&self, mut x: u32) -> MixedWord {
        let e = self.ambient.e;
        let mask = (1u32 << e) - 1;
        let mut modp = vec![0u8; self.ambient.beta as usize];
        for slot in modp.iter_mut().rev() {
            *slot = (x & mask) as u8;
            x >>= e;
        }
        let mut bin = vec![0u8; self.ambient.alpha as usize];
        for slot in bin.iter_mut().rev() {
            *slot = (x & 1) as u8;
            x >>= 1;
        }
        MixedWord { bin, modp, e }
    }

    /// `sub + <g>` for a sorted subgroup `sub`, sorted.
    pub(crate) fn extend(&self, sub: &[u32], g: u32) -> Vec<u32> {
        let mut out = sub.to_vec();
        let mut shift = g;
        while sub.binary_search(&shift).is_err() {
            out.extend(sub.iter().map(|&s| self.add(s, shift)));
            shift = self.add(shift, g);
        }
        out.sort_unstable();
        out
    }
}

/// A subgroup of an ambient group, materialized as its sorted codewords.
#[derive(Debug, Clone)]
pub struct Code {
    packing: Packing,
    words: Vec<u32>,
    profile: OnceLock<CodeType>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.packing.ambient == other.packing.ambient && self.words == other.words
    }
}

impl Eq for Code {}

impl std::hash::Hash for Code {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.packing.ambient.hash(state);
        self.words.hash(state);
    }
}

impl Code {
    pub(crate) fn from_sorted(packing: Packing, words: Vec<u32>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        Code {
            packing,
            words,
            profile: OnceLock::new(),
        }
    }

    /// The zero code `{0}`.
    pub fn zero(ambient: Ambient) -> Result<Self, CodeError> {
        Ok(Code::from_sorted(Packing::new(ambient)?, vec![0]))
    }

    /// Builds a code from an explicit word list, which must already be a
    /// subgroup (duplicates are allowed).
    pub fn from_words(ambient: Ambient, words: &[MixedWord]) -> Result<Self, CodeError> {
        let packing = Packing::new(ambient)?;
        let mut packed = words
            .iter()
            .map(|w| packing.encode(w))
            .collect::<Result<Vec<_>, _>>()?;
        packed.sort_unstable();
        packed.dedup();
        let closure = span_packed(&packing, packed.iter().copied());
        if closure != packed {
            return Err(CodeError::NotASubgroup(format!(
                "{} words given, their span has {}",
                packed.len(),
                closure.len()
            )));
        }
        Ok(Code::from_sorted(packing, packed))
    }

    pub fn ambient(&self) -> Ambient {
        self.packing.ambient
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = MixedWord> + '_ {
        self.words.iter().map(|&x| self.packing.decode(x))
    }

    pub fn contains(&self, w: &MixedWord) -> bool {
        self.packing
            .encode(w)
            .is_ok_and(|x| self.words.binary_search(&x).is_ok())
    }

    /// Canonical key: the sorted packed codewords.
    pub fn canonical_words(&self) -> &[u32] {
        &self.words
    }

    /// A generating set, built greedily from the highest-order words down,
    /// ties in word order.
    pub fn generators(&self) -> Vec<MixedWord> {
        let p = &self.packing;
        let order = |x: u32| (0..=p.ambient.e).find(|&i| (0..i).fold(x, |y, _| p.double(y)) == 0);
        let mut candidates = self.words.clone();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(order(x)), x));
        let mut sub = vec![0u32];
        let mut gens = Vec::new();
        for x in candidates {
            if sub.len() == self.words.len() {
                break;
            }
            if sub.binary_search(&x).is_err() {
                sub = self.packing.extend(&sub, x);
                gens.push(self.packing.decode(x));
            }
        }
        gens
    }

    /// Type of the code, computed once.
    pub fn code_type(&self) -> Result<CodeType, CodeError> {
        if let Some(t) = self.profile.get() {
            return Ok(*t);
        }
        let t = classify(self)?;
        Ok(*self.profile.get_or_init(|| t))
    }
}

fn span_packed(packing: &Packing, gens: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut sub = vec![0u32];
    for g in gens {
        if sub.binary_search(&g).is_err() {
            sub = packing.extend(&sub, g);
        }
    }
    sub
}

/// Additive closure of `generators` inside `ambient`.
pub fn span(ambient: Ambient, generators: &[MixedWord]) -> Result<Code, CodeError> {
    let packing = Packing::new(ambient)?;
    let packed = generators
        .iter()
        .map(|g| packing.encode(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Code::from_sorted(packing, span_packed(&packing, packed)))
}

fn exact_log2(n: usize, what: &str) -> Result<i64, CodeError> {
    if !n.is_power_of_two() {
        return Err(CodeError::NotASubgroup(format!("{what} has {n} elements")));
    }
    Ok(i64::from(n.trailing_zeros()))
}

fn classify(code: &Code) -> Result<CodeType, CodeError> {
    let p = &code.packing;
    let amb = p.ambient;
    let mut two_torsion = 0usize;
    let mut four_torsion = 0usize;
    let mut pure = 0usize;
    for &c in &code.words {
        let d = p.double(c);
        if d == 0 {
            two_torsion += 1;
            if p.bin_is_zero(c) {
                pure += 1;
            }
        }
        if p.double(d) == 0 {
            four_torsion += 1;
        }
    }
    let s_all = exact_log2(code.words.len(), "code")?;
    let s1 = exact_log2(two_torsion, "2-torsion")?;
    let z = exact_log2(pure, "2-torsion with zero binary part")?;
    let ks: Vec<i64> = if amb.e == 3 {
        let s2 = exact_log2(four_torsion, "4-torsion")?;
        let k1 = s_all - s2;
        let k2 = s2 - s1 - k1;
        let k3 = z - k1 - k2;
        vec![s1 - k1 - k2 - k3, k1, k2, k3]
    } else {
        let k1 = s_all - s1;
        let k2 = z - k1;
        vec![s1 - k1 - k2, k1, k2]
    };
    if ks.iter().any(|&k| k < 0) {
        return Err(CodeError::NotASubgroup(format!("inconsistent torsion sizes {ks:?}")));
    }
    let k: Vec<u32> = ks.iter().map(|&k| k as u32).collect();
    let t = if amb.e == 3 {
        CodeType::Z2Z8(TypeProfile::new(amb.alpha, amb.beta, k[0], k[1], k[2], k[3]))
    } else {
        CodeType::Z2Z4(Z2Z4Profile::new(amb.alpha, amb.beta, k[0], k[1], k[2]))
    };
    if !t.is_valid() || t.log2_size() != s_all as u64 {
        return Err(CodeError::NotASubgroup(format!("derived type {t} does not fit")));
    }
    Ok(t)
}

/// Reads the type `(alpha, beta; k0, ...)` off the torsion structure of `code`.
///
/// With `C[m] = {c : m c = 0}` and `s_m = log2 |C[m]|`, for `e = 3`:
/// `k1 = s_8 - s_4`, `k2 = s_4 - s_2 - k1`, `k3 = z - k1 - k2` and
/// `k0 = s_2 - k1 - k2 - k3`, where `z = log2 |{c in C[2] : bin(c) = 0}|`.
pub fn classify_type(code: &Code) -> Result<CodeType, CodeError> {
    code.code_type()
}

/// `log2 |bin(C[4])| - log2 |bin(C[2])|` for a Z2Z8 code: how many order-4
/// generators carry a binary part that no order-2 codeword accounts for
/// (the rank of `S2` modulo `Abar01` in standard form).
pub fn binary_excess(code: &Code) -> Result<u32, CodeError> {
    let p = code.packing;
    if p.ambient.e != 3 {
        return Err(CodeError::WrongRing {
            op: "binary_excess",
            required: 3,
            found: p.ambient.e,
        });
    }
    let mut two = Vec::new();
    let mut four = Vec::new();
    for &c in &code.words {
        let d = p.double(c);
        if d == 0 {
            two.push(c & p.bin_mask);
        }
        if p.double(d) == 0 {
            four.push(c & p.bin_mask);
        }
    }
    let rank = |mut v: Vec<u32>| {
        v.sort_unstable();
        v.dedup();
        exact_log2(v.len(), "binary projection")
    };
    Ok((rank(four)? - rank(two)?) as u32)
}

/// All ambient words orthogonal to every codeword, by exhaustive scan.
pub fn dual_bruteforce(code: &Code) -> Result<Code, CodeError> {
    let p = code.packing;
    let gens: Vec<MixedWord> = code.generators();
    let mut out = Vec::new();
    for x in 0..p.order() {
        let v = p.decode(x);
        let mut orthogonal = true;
        for g in &gens {
            if inner_product(g, &v)? != 0 {
                orthogonal = false;
                break;
            }
        }
        if orthogonal {
            out.push(x);
        }
    }
    Ok(Code::from_sorted(p, out))
}

/// Reduces the Z8 segment of every codeword mod 4.
pub fn phi_reduce(code: &Code) -> Result<Code, CodeError> {
    let amb = code.ambient();
    if amb.e != 3 {
        return Err(CodeError::WrongRing {
            op: "phi_reduce",
            required: 3,
            found: amb.e,
        });
    }
    let target = Packing::new(Ambient::z2z4(amb.alpha, amb.beta))?;
    image(code, target, |v| Some(v % 4))
}

/// Maps a code whose Z8 segment is entirely even onto `Z2^alpha x Z4^beta`
/// via `2y -> y`. This is the isomorphism `2 Z8 = Z4` behind the Z2Z4
/// specialization of the counting formula.
pub fn halve_even(code: &Code) -> Result<Code, CodeError> {
    let amb = code.ambient();
    if amb.e != 3 {
        return Err(CodeError::WrongRing {
            op: "halve_even",
            required: 3,
            found: amb.e,
        });
    }
    let target = Packing::new(Ambient::z2z4(amb.alpha, amb.beta))?;
    image(code, target, |v| (v % 2 == 0).then_some(v / 2))
}

fn image(code: &Code, target: Packing, f: impl Fn(u8) -> Option<u8>) -> Result<Code, CodeError> {
    let mut out = Vec::with_capacity(code.len());
    for w in code.words() {
        let modp = w.modp.iter().map(|&v| f(v)).collect::<Option<Vec<_>>>();
        let modp = modp.ok_or(CodeError::NotEven)?;
        let mapped = MixedWord {
            bin: w.bin,
            modp,
            e: target.ambient.e,
        };
        out.push(target.encode(&mapped)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Code::from_sorted(target, out))
}

/// Free blocks of a standard-form generator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockId {
    ABar01,
    S1,
    S2,
    T02,
    T03,
    A01,
    A02,
    A03,
    A12,
    A13,
    A23,
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockId::ABar01 => "Abar01",
            BlockId::S1 => "S1",
            BlockId::S2 => "S2",
            BlockId::T02 => "T02",
            BlockId::T03 => "T03",
            BlockId::A01 => "A01",
            BlockId::A02 => "A02",
            BlockId::A03 => "A03",
            BlockId::A12 => "A12",
            BlockId::A13 => "A13",
            BlockId::A23 => "A23",
        };
        f.write_str(s)
    }
}

/// A rectangular block of residues in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<u32>,
}

impl Block {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Self {
        Block {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>], modulus: u32) -> Result<Self, CodeError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut b = Block::zeros(rows.len(), cols, modulus);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(CodeError::DimensionMismatch {
                    expected: format!("{cols} columns"),
                    found: format!("{} columns in row {r}", row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                b.set(r, c, v)?;
            }
        }
        Ok(b)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) -> Result<(), CodeError> {
        if v >= self.modulus {
            return Err(CodeError::EntryOutOfRange {
                value: v,
                modulus: self.modulus,
            });
        }
        self.data[r * self.cols + c] = v;
        Ok(())
    }

    fn to_mat(&self) -> IntMat {
        IntMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| i64::from(v)).collect(),
        }
    }
}

/// Integer matrix for the parity-check block algebra.
#[derive(Debug, Clone)]
struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    fn t(&self) -> IntMat {
        let mut out = IntMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.at(r, c);
            }
        }
        out
    }

    fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "block product shape");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.at(k, c);
                }
            }
        }
        out
    }

    fn scale(&self, s: i64) -> IntMat {
        IntMat {
            data: self.data.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }
}

/// Shape and residue modulus of each free block for a given type.
fn block_specs(kind: &CodeType) -> Vec<(BlockId, usize, usize, u32)> {
    match kind {
        CodeType::Z2Z8(p) => {
            let (k0, k1, k2, k3) = (p.k0 as usize, p.k1 as usize, p.k2 as usize, p.k3 as usize);
            let f = (p.alpha - p.k0) as usize;
            let g = p.beta as usize - (k1 + k2 + k3);
            vec![
                (BlockId::ABar01, k0, f, 2),
                (BlockId::S1, k1, f, 2),
                (BlockId::S2, k2, f, 2),
                (BlockId::T03, k0, g, 2),
                (BlockId::A01, k1, k2, 8),
                (BlockId::A02, k1, k3, 8),
                (BlockId::A03, k1, g, 8),
                (BlockId::A12, k2, k3, 4),
                (BlockId::A13, k2, g, 4),
                (BlockId::A23, k3, g, 2),
            ]
        }
        CodeType::Z2Z4(p) => {
            let (k0, k1, k2) = (p.k0 as usize, p.k1 as usize, p.k2 as usize);
            let f = (p.alpha - p.k0) as usize;
            let g = p.beta as usize - (k1 + k2);
            vec![
                (BlockId::ABar01, k0, f, 2),
                (BlockId::S1, k1, f, 2),
                (BlockId::T02, k0, g, 2),
                (BlockId::A01, k1, k2, 4),
                (BlockId::A02, k1, g, 4),
                (BlockId::A12, k2, g, 2),
            ]
        }
    }
}

/// Standard-form generator matrix: identity blocks fixed by the type, free
/// blocks chosen by the caller.
///
/// Z2Z8 layout (binary columns `k0 | alpha-k0`, Z8 columns `k1 | k2 | k3 | beta-l`):
///
/// ```text
/// I   Abar01 | 0  0    0     4 T03
/// 0   S1     | I  A01  A02   A03
/// 0   S2     | 0  2I   2A12  2A13
/// 0   0      | 0  0    4I    4A23
/// ```
///
/// Z2Z4 layout (Z4 columns `k1 | k2 | beta-k1-k2`):
///
/// ```text
/// I   Abar01 | 0  0    2 T02
/// 0   S1     | I  A01  A02
/// 0   0      | 0  2I   2A12
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormMatrix {
    kind: CodeType,
    blocks: BTreeMap<BlockId, Block>,
}

impl StandardFormMatrix {
    /// All free blocks zero.
    pub fn zero(kind: CodeType) -> Result<Self, CodeError> {
        if !kind.is_valid() {
            return Err(CodeError::InvalidType(kind));
        }
        let blocks = block_specs(&kind)
            .into_iter()
            .map(|(id, r, c, m)| (id, Block::zeros(r, c, m)))
            .collect();
        Ok(StandardFormMatrix { kind, blocks })
    }

    /// Free blocks drawn uniformly from their residue ranges; equal seeds give
    /// equal matrices.
    pub fn random(kind: CodeType, seed: u64) -> Result<Self, CodeError> {
        let mut m = StandardFormMatrix::zero(kind)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for block in m.blocks.values_mut() {
            for v in &mut block.data {
                *v = rng.gen_range(0..block.modulus);
            }
        }
        Ok(m)
    }

    /// Zero matrix with the supplied blocks substituted. Every block must have
    /// the shape and modulus required by `kind`.
    pub fn from_blocks(kind: CodeType, blocks: Vec<(BlockId, Block)>) -> Result<Self, CodeError> {
        let mut m = StandardFormMatrix::zero(kind)?;
        for (id, block) in blocks {
            let Some(slot) = m.blocks.get_mut(&id) else {
                return Err(CodeError::Shape {
                    block: id,
                    expected: "no such block for this ring".into(),
                    found: format!("{}x{}", block.rows, block.cols),
                });
            };
            if (slot.rows, slot.cols, slot.modulus) != (block.rows, block.cols, block.modulus) {
                return Err(CodeError::Shape {
                    block: id,
                    expected: format!("{}x{} mod {}", slot.rows, slot.cols, slot.modulus),
                    found: format!("{}x{} mod {}", block.rows, block.cols, block.modulus),
                });
            }
            *slot = block;
        }
        Ok(m)
    }

    pub fn kind(&self) -> CodeType {
        self.kind
    }

    pub fn ambient(&self) -> Ambient {
        Ambient {
            alpha: self.kind.alpha(),
            beta: self.kind.beta(),
            e: self.kind.ring_exponent(),
        }
    }

    pub fn block(&self, id: BlockId) -> Option<&Block> {
        self.blocks.get(&id)
    }

    pub fn block_mut(&mut self, id: BlockId) -> Option<&mut Block> {
        self.blocks.get_mut(&id)
    }

    fn b(&self, id: BlockId) -> &Block {
        &self.blocks[&id]
    }

    /// The generator rows, stripe by stripe.
    pub fn assemble(&self) -> Vec<MixedWord> {
        let amb = self.ambient();
        let e = amb.e;
        let m = amb.modulus();
        let mut rows = Vec::new();
        let new_row = || (vec![0u8; amb.alpha as usize], vec![0u8; amb.beta as usize]);
        let put = |dst: &mut Vec<u8>, at: usize, v: u32| dst[at] = (v % m) as u8;
        let fill = |dst: &mut Vec<u8>, at: usize, block: &Block, r: usize, scale: u32, modulus: u32| {
            for c in 0..block.cols {
                dst[at + c] = (block.get(r, c) * scale % modulus) as u8;
            }
        };
        match self.kind {
            CodeType::Z2Z8(p) => {
                let (k0, k1, k2, k3) = (p.k0 as usize, p.k1 as usize, p.k2 as usize, p.k3 as usize);
                let (c2, c3, c4) = (k1, k1 + k2, k1 + k2 + k3);
                for i in 0..k0 {
                    let (mut bin, mut modp) = new_row();
                    bin[i] = 1;
                    fill(&mut bin, k0, self.b(BlockId::ABar01), i, 1, 2);
                    fill(&mut modp, c4, self.b(BlockId::T03), i, 4, m);
                    rows.push(MixedWord { bin, modp, e });
                }
                for i in 0..k1 {
                    let (mut bin, mut modp) = new_row();
                    fill(&mut bin, k0, self.b(BlockId::S1), i, 1, 2);
                    put(&mut modp, i, 1);
                    fill(&mut modp, c2, self.b(BlockId::A01), i, 1, m);
                    fill(&mut modp, c3, self.b(BlockId::A02), i, 1, m);
                    fill(&mut modp, c4, self.b(BlockId::A03), i, 1, m);
                    rows.push(MixedWord { bin, modp, e });
                }
                for i in 0..k2 {
                    let (mut bin, mut modp) = new_row();
                    fill(&mut bin, k0, self.b(BlockId::S2), i, 1, 2);
                    put(&mut modp, c2 + i, 2);
                    fill(&mut modp, c3, self.b(BlockId::A12), i, 2, m);
                    fill(&mut modp, c4, self.b(BlockId::A13), i, 2, m);
                    rows.push(MixedWord { bin, modp, e });
                }
                for i in 0..k3 {
                    let (bin, mut modp) = new_row();
                    put(&mut modp, c3 + i, 4);
                    fill(&mut modp, c4, self.b(BlockId::A23), i, 4, m);
                    rows.push(MixedWord { bin, modp, e });
                }
            }
            CodeType::Z2Z4(p) => {
                let (k0, k1, k2) = (p.k0 as usize, p.k1 as usize, p.k2 as usize);
                let (c2, c3) = (k1, k1 + k2);
                for i in 0..k0 {
                    let (mut bin, mut modp) = new_row();
                    bin[i] = 1;
                    fill(&mut bin, k0, self.b(BlockId::ABar01), i, 1, 2);
                    fill(&mut modp, c3, self.b(BlockId::T02), i, 2, m);
                    rows.push(MixedWord { bin, modp, e });
                }
                for i in 0..k1 {
                    let (mut bin, mut modp) = new_row();
                    fill(&mut bin, k0, self.b(BlockId::S1), i, 1, 2);
                    put(&mut modp, i, 1);
                    fill(&mut modp, c2, self.b(BlockId::A01), i, 1, m);
                    fill(&mut modp, c3, self.b(BlockId::A02), i, 1, m);
                    rows.push(MixedWord { bin, modp, e });
                }
                for i in 0..k2 {
                    let (bin, mut modp) = new_row();
                    put(&mut modp, c2 + i, 2);
                    fill(&mut modp, c3, self.b(BlockId::A12), i, 2, m);
                    rows.push(MixedWord { bin, modp, e });
                }
            }
        }
        rows
    }

    /// Generator matrix of the dual code (Z2Z8 only).
    ///
    /// Row stripes have `alpha-k0`, `beta-l`, `k3` and `k2` rows, over the same
    /// column layout as [`assemble`](Self::assemble):
    ///
    /// ```text
    /// -Abar01^t  I  | P1  -2 S2^t               0       0
    /// -T03^t     0  | P2  -A13^t + A23^t A12^t  -A23^t  I
    ///  0         0  | P3  -2 A12^t              2I      0
    ///  0         0  | P4   4I                   0       0
    /// ```
    ///
    /// with `P1 = -4 S1^t + 2 S2^t A01^t`,
    /// `P2 = -A03^t + A13^t A01^t + A23^t A02^t - A23^t A12^t A01^t`,
    /// `P3 = -2 A02^t + 2 A12^t A01^t` and `P4 = -4 A01^t`. Entries are reduced
    /// mod 2 in binary columns and mod 8 in Z8 columns.
    pub fn parity_check(&self) -> Result<ParityCheckMatrix, CodeError> {
        let CodeType::Z2Z8(p) = self.kind else {
            return Err(CodeError::WrongRing {
                op: "parity_check",
                required: 3,
                found: self.kind.ring_exponent(),
            });
        };
        let (k0, k1, k2, k3) = (p.k0 as usize, p.k1 as usize, p.k2 as usize, p.k3 as usize);
        let f = (p.alpha - p.k0) as usize;
        let g = p.beta as usize - (k1 + k2 + k3);
        let (c2, c3, c4) = (k1, k1 + k2, k1 + k2 + k3);

        let abar = self.b(BlockId::ABar01).to_mat();
        let s1 = self.b(BlockId::S1).to_mat();
        let s2 = self.b(BlockId::S2).to_mat();
        let t03 = self.b(BlockId::T03).to_mat();
        let a01 = self.b(BlockId::A01).to_mat();
        let a02 = self.b(BlockId::A02).to_mat();
        let a03 = self.b(BlockId::A03).to_mat();
        let a12 = self.b(BlockId::A12).to_mat();
        let a13 = self.b(BlockId::A13).to_mat();
        let a23 = self.b(BlockId::A23).to_mat();

        let p1 = s1.t().scale(-4).add(&s2.t().mul(&a01.t()).scale(2));
        let p2 = a03
            .t()
            .scale(-1)
            .add(&a13.t().mul(&a01.t()))
            .add(&a23.t().mul(&a02.t()))
            .add(&a23.t().mul(&a12.t()).mul(&a01.t()).scale(-1));
        let p3 = a02.t().scale(-2).add(&a12.t().mul(&a01.t()).scale(2));
        let p4 = a01.t().scale(-4);

        let amb = self.ambient();
        let reduce = |v: i64, m: i64| v.rem_euclid(m) as u8;
        let place = |dst: &mut Vec<u8>, at: usize, mat: &IntMat, r: usize, m: i64| {
            for c in 0..mat.cols {
                dst[at + c] = reduce(mat.at(r, c), m);
            }
        };
        let new_row = || (vec![0u8; amb.alpha as usize], vec![0u8; amb.beta as usize]);
        let mut rows = Vec::with_capacity(f + g + k3 + k2);

        let neg_abar_t = abar.t().scale(-1);
        let neg_2s2_t = s2.t().scale(-2);
        for i in 0..f {
            let (mut bin, mut modp) = new_row();
            place(&mut bin, 0, &neg_abar_t, i, 2);
            bin[k0 + i] = 1;
            place(&mut modp, 0, &p1, i, 8);
            place(&mut modp, c2, &neg_2s2_t, i, 8);
            rows.push(MixedWord { bin, modp, e: 3 });
        }
        let neg_t03_t = t03.t().scale(-1);
        let b2 = a13.t().scale(-1).add(&a23.t().mul(&a12.t()));
        let neg_a23_t = a23.t().scale(-1);
        for j in 0..g {
            let (mut bin, mut modp) = new_row();
            place(&mut bin, 0, &neg_t03_t, j, 2);
            place(&mut modp, 0, &p2, j, 8);
            place(&mut modp, c2, &b2, j, 8);
            place(&mut modp, c3, &neg_a23_t, j, 8);
            modp[c4 + j] = 1;
            rows.push(MixedWord { bin, modp, e: 3 });
        }
        let neg_2a12_t = a12.t().scale(-2);
        for m in 0..k3 {
            let (bin, mut modp) = new_row();
            place(&mut modp, 0, &p3, m, 8);
            place(&mut modp, c2, &neg_2a12_t, m, 8);
            modp[c3 + m] = 2;
            rows.push(MixedWord { bin, modp, e: 3 });
        }
        for q in 0..k2 {
            let (bin, mut modp) = new_row();
            place(&mut modp, 0, &p4, q, 8);
            modp[c2 + q] = 4;
            rows.push(MixedWord { bin, modp, e: 3 });
        }
        Ok(ParityCheckMatrix { ambient: amb, rows })
    }
}

/// Generator rows of the dual of a standard-form code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    ambient: Ambient,
    rows: Vec<MixedWord>,
}

impl ParityCheckMatrix {
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rows(&self) -> &[MixedWord] {
        &self.rows
    }
}

/// Standard form with uniformly random free blocks for a Z2Z8 type.
pub fn random_standard_form(profile: &TypeProfile, seed: u64) -> Result<StandardFormMatrix, CodeError> {
    StandardFormMatrix::random(CodeType::Z2Z8(*profile), seed)
}

/// Writes rows in the line format: a header `alpha beta e`, then one row per
/// line with the binary entries, `|`, and the modular entries.
pub fn write_rows(ambient: Ambient, rows: &[MixedWord]) -> String {
    let mut out = format!("{} {} {}\n", ambient.alpha, ambient.beta, ambient.e);
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Parses the format produced by [`write_rows`]. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_rows(text: &str) -> Result<(Ambient, Vec<MixedWord>), CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(CodeError::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| CodeError::Parse {
            line: hline,
            msg: format!("bad header: {e}"),
        })?;
    let [alpha, beta, e] = nums[..] else {
        return Err(CodeError::Parse {
            line: hline,
            msg: "header must be `alpha beta e`".into(),
        });
    };
    let ambient = Ambient::new(alpha, beta, e)?;
    let mut rows = Vec::new();
    for (n, line) in lines {
        let (left, right) = line.split_once('|').ok_or(CodeError::Parse {
            line: n,
            msg: "missing `|` separator".into(),
        })?;
        let parse = |s: &str| -> Result<Vec<u8>, CodeError> {
            s.split_whitespace()
                .map(|t| {
                    t.parse::<u8>().map_err(|e| CodeError::Parse {
                        line: n,
                        msg: format!("bad entry `{t}`: {e}"),
                    })
                })
                .collect()
        };
        let word = MixedWord::new(parse(left)?, parse(right)?, e)?;
        ambient.check_word(&word)?;
        rows.push(word);
    }
    Ok((ambient, rows))
}

//! Exhaustive subgroup enumeration over `Z2^alpha x Z_{2^e}^beta`.
//!
//! Subgroups are found by breadth-first search over the subgroup lattice:
//! starting from `{0}`, every known subgroup is extended by every ambient
//! element outside it and the results are deduplicated by their sorted word
//! list. Nothing here uses the counting formulas, so a census produced this
//! way is an independent check on them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{self, Ambient, Code, CodeError, Packing};
use crate::mgn::{CodeType, MgnError, TypeProfile, Z2Z4Profile};
use crate::Nat;

/// Largest ambient group (as `log2` of its order) the oracle will enumerate.
/// Orders of `2^16` and up are refused: `Z2^4 x Z8^4` already has far too many
/// subgroups to list.
pub const MAX_ORACLE_LOG2: u64 = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ambient group of order 2^{log2_order} exceeds the enumeration limit 2^{limit}")]
    Guard { log2_order: u64, limit: u64 },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Mgn(#[from] MgnError),
    #[error("census JSON: {0}")]
    Json(String),
}

fn guarded(alpha: u32, beta: u32, e: u32) -> Result<Packing, OracleError> {
    let ambient = Ambient::new(alpha, beta, e)?;
    if ambient.log2_order() > MAX_ORACLE_LOG2 {
        return Err(OracleError::Guard {
            log2_order: ambient.log2_order(),
            limit: MAX_ORACLE_LOG2,
        });
    }
    Ok(Packing::new(ambient)?)
}

/// Every extension `S + <g>` for `g` outside `S`, deduplicated.
fn extensions(p: &Packing, sub: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in 0..p.order() {
        if sub.binary_search(&g).is_ok() {
            continue;
        }
        let t = p.extend(sub, g);
        if seen.insert(t.clone()) {
            out.push(t);
        }
    }
    out
}

fn finish(p: Packing, found: HashSet<Vec<u32>>) -> Vec<Code> {
    let mut all: Vec<Vec<u32>> = found.into_iter().collect();
    all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter().map(|w| Code::from_sorted(p, w)).collect()
}

/// All subgroups, each exactly once, ordered by size then by word list.
/// Frontiers are expanded in parallel.
pub fn enumerate_subgroups(alpha: u32, beta: u32, e: u32) -> Result<Vec<Code>, OracleError> {
    let p = guarded(alpha, beta, e)?;
    let seen: Mutex<HashSet<Vec<u32>>> = Mutex::new(HashSet::from([vec![0u32]]));
    let mut frontier = vec![vec![0u32]];
    while !frontier.is_empty() {
        frontier = frontier
            .par_iter()
            .flat_map_iter(|sub| extensions(&p, sub))
            .filter(|t| seen.lock().expect("dedup set poisoned").insert(t.clone()))
            .collect();
    }
    Ok(finish(p, seen.into_inner().expect("dedup set poisoned")))
}

/// Single-threaded [`enumerate_subgroups`]; returns the same list.
pub fn enumerate_subgroups_serial(alpha: u32, beta: u32, e: u32) -> Result<Vec<Code>, OracleError> {
    let p = guarded(alpha, beta, e)?;
    let mut seen = HashSet::from([vec![0u32]]);
    let mut frontier = vec![vec![0u32]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for sub in &frontier {
            for t in extensions(&p, sub) {
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    Ok(finish(p, seen))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Enumeration,
}

/// Number of codes per type over one ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub ambient: Ambient,
    pub counts: BTreeMap<CodeType, Nat>,
    pub total_subgroups: Nat,
    pub provenance: Provenance,
}

impl TypeCensus {
    pub fn get(&self, t: &CodeType) -> Nat {
        self.counts.get(t).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        let doc = CensusJson {
            alpha: self.ambient.alpha(),
            beta: self.ambient.beta(),
            e: self.ambient.e(),
            total: self.total_subgroups.to_string(),
            provenance: Some(self.provenance),
            counts: self
                .counts
                .iter()
                .map(|(t, n)| CountJson {
                    profile: t.slots(),
                    count: n.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("census serializes")
    }

    /// Parses [`to_json`](Self::to_json) output. A missing provenance is read
    /// as enumeration.
    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let bad = |m: String| OracleError::Json(m);
        let doc: CensusJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let ambient = Ambient::new(doc.alpha, doc.beta, doc.e)?;
        let mut counts = BTreeMap::new();
        for entry in doc.counts {
            let t = match (ambient.e(), &entry.profile[..]) {
                (3, &[a, b, k0, k1, k2, k3]) => CodeType::Z2Z8(TypeProfile::new(a, b, k0, k1, k2, k3)),
                (2, &[a, b, k0, k1, k2]) => CodeType::Z2Z4(Z2Z4Profile::new(a, b, k0, k1, k2)),
                _ => return Err(bad(format!("profile {:?} does not fit e = {}", entry.profile, ambient.e()))),
            };
            if t.alpha() != ambient.alpha() || t.beta() != ambient.beta() || !t.is_valid() {
                return Err(bad(format!("profile {t} is not valid for {ambient}")));
            }
            let n: Nat = entry.count.parse().map_err(|_| bad(format!("bad count `{}`", entry.count)))?;
            counts.insert(t, n);
        }
        let total: Nat = doc.total.parse().map_err(|_| bad(format!("bad total `{}`", doc.total)))?;
        if counts.values().sum::<Nat>() != total {
            return Err(bad("total does not equal the sum of counts".into()));
        }
        Ok(TypeCensus {
            ambient,
            counts,
            total_subgroups: total,
            provenance: doc.provenance.unwrap_or(Provenance::Enumeration),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CensusJson {
    alpha: u32,
    beta: u32,
    e: u32,
    total: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
    counts: Vec<CountJson>,
}

#[derive(Serialize, Deserialize)]
struct CountJson {
    profile: Vec<u32>,
    count: String,
}

/// Tally of enumerated subgroups by their classified type.
pub fn census(alpha: u32, beta: u32, e: u32) -> Result<TypeCensus, OracleError> {
    let subgroups = enumerate_subgroups(alpha, beta, e)?;
    let types = subgroups
        .par_iter()
        .map(codes::classify_type)
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts: BTreeMap<CodeType, Nat> = BTreeMap::new();
    for t in types {
        *counts.entry(t).or_default() += 1u32;
    }
    Ok(TypeCensus {
        ambient: Ambient::new(alpha, beta, e)?,
        counts,
        total_subgroups: Nat::from(subgroups.len()),
        provenance: Provenance::Enumeration,
    })
}

/// The formula's prediction for every valid type over the ambient (no size
/// guard; zero counts are left out).
pub fn formula_census(alpha: u32, beta: u32, e: u32) -> Result<TypeCensus, OracleError> {
    let ambient = Ambient::new(alpha, beta, e)?;
    let types: Vec<CodeType> = if e == 3 {
        TypeProfile::all(alpha, beta).map(CodeType::Z2Z8).collect()
    } else {
        Z2Z4Profile::all(alpha, beta).map(CodeType::Z2Z4).collect()
    };
    let mut counts = BTreeMap::new();
    for t in types {
        let n: Nat = t.count()?;
        if n != Nat::default() {
            counts.insert(t, n);
        }
    }
    Ok(TypeCensus {
        ambient,
        total_subgroups: counts.values().sum(),
        counts,
        provenance: Provenance::Formula,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub profile: CodeType,
    pub oracle: Nat,
    pub formula: Nat,
}

impl VerifyRow {
    pub fn matches(&self) -> bool {
        self.oracle == self.formula
    }
}

/// Per-type comparison of enumeration against formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ambient: Ambient,
    pub rows: Vec<VerifyRow>,
    pub oracle_total: Nat,
    pub formula_total: Nat,
}

impl VerifyReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn totals_match(&self) -> bool {
        self.oracle_total == self.formula_total
    }

    pub fn passed(&self) -> bool {
        self.totals_match() && self.rows.iter().all(VerifyRow::matches)
    }

    pub fn row(&self, t: &CodeType) -> Option<&VerifyRow> {
        self.rows.iter().find(|r| &r.profile == t)
    }
}

/// Compares [`census`] with [`formula_census`] on every type seen by either.
pub fn verify_formula(alpha: u32, beta: u32, e: u32) -> Result<VerifyReport, OracleError> {
    let oracle = census(alpha, beta, e)?;
    let formula = formula_census(alpha, beta, e)?;
    let keys: BTreeSet<CodeType> = oracle.counts.keys().chain(formula.counts.keys()).copied().collect();
    let rows = keys
        .into_iter()
        .map(|t| VerifyRow {
            profile: t,
            oracle: oracle.get(&t),
            formula: formula.get(&t),
        })
        .collect();
    Ok(VerifyReport {
        ambient: oracle.ambient,
        rows,
        oracle_total: oracle.total_subgroups,
        formula_total: formula.total_subgroups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8(a: u32, b: u32, k0: u32, k1: u32, k2: u32, k3: u32) -> CodeType {
        CodeType::Z2Z8(TypeProfile::new(a, b, k0, k1, k2, k3))
    }

    #[test]
    fn small_subgroup_counts() {
        assert_eq!(enumerate_subgroups(1, 1, 3).unwrap().len(), 11);
        assert_eq!(enumerate_subgroups(0, 1, 3).unwrap().len(), 4);
        assert_eq!(enumerate_subgroups(1, 0, 3).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(0, 0, 3).unwrap().len(), 1);
        // Z4 has 3 subgroups, Z2 x Z2 has 5
        assert_eq!(enumerate_subgroups(0, 1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_subgroups(2, 0, 2).unwrap().len(), 5);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            enumerate_subgroups(4, 4, 3),
            Err(OracleError::Guard { .. })
        ));
        assert!(matches!(
            enumerate_subgroups(0, 6, 3),
            Err(OracleError::Guard { .. })
        ));
        assert!(matches!(census(1, 1, 4), Err(OracleError::Code(_))));
    }

    #[test]
    fn parallel_equals_serial() {
        for (a, b, e) in [(1, 1, 3), (2, 1, 3), (1, 2, 2), (2, 2, 2)] {
            assert_eq!(
                enumerate_subgroups(a, b, e).unwrap(),
                enumerate_subgroups_serial(a, b, e).unwrap()
            );
        }
    }

    #[test]
    fn census_examples() {
        let c = census(1, 1, 3).unwrap();
        assert_eq!(c.get(&z8(1, 1, 1, 0, 0, 0)), Nat::from(2u32));
        assert_eq!(c.total_subgroups, Nat::from(11u32));
        assert_eq!(c.counts.values().sum::<Nat>(), c.total_subgroups);
        let c = census(2, 2, 2).unwrap();
        assert_eq!(
            c.get(&CodeType::Z2Z4(Z2Z4Profile::new(2, 2, 1, 1, 1))),
            Nat::from(18u32)
        );
    }

    #[test]
    fn verify_small() {
        for (a, b, e) in [(1, 1, 3), (2, 1, 2), (1, 1, 2)] {
            let r = verify_formula(a, b, e).unwrap();
            assert!(r.passed(), "{a} {b} {e}: {:?}", r.mismatches().collect::<Vec<_>>());
        }
    }

    #[test]
    fn json_round_trip() {
        let c = census(1, 1, 3).unwrap();
        let text = c.to_json();
        assert!(text.contains("\"count\": \"2\""));
        assert_eq!(TypeCensus::from_json(&text).unwrap(), c);
        let f = formula_census(2, 1, 2).unwrap();
        assert_eq!(TypeCensus::from_json(&f.to_json()).unwrap(), f);
        assert!(TypeCensus::from_json("{}").is_err());
        let broken = text.replace("\"total\": \"11\"", "\"total\": \"12\"");
        assert!(TypeCensus::from_json(&broken).is_err());
    }
}

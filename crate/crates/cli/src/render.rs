//! Plain and JSON rendering. Counts are always written as decimal strings.

use std::fmt::Write;

use serde_json::{json, Value};

use z2z8::codes::{self, Ambient, MixedWord, ParityCheckMatrix};
use z2z8::mgn::{self, DeltaExponents, IdentityCheck, IdentityReport, MgnError};
use z2z8::oracle::VerifyReport;
use z2z8::{Breakdown, CodeType, Nat, TypeProfile};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub struct CountView {
    profile: TypeProfile,
    count: Nat,
    breakdown: Option<(Breakdown, DeltaExponents)>,
    dual: Option<(TypeProfile, Nat)>,
}

impl CountView {
    /// Breakdown and dual are skipped for invalid types, whose count is 0.
    pub fn build(p: &TypeProfile, breakdown: bool, dual: bool) -> Result<Self, MgnError> {
        let valid = p.is_valid();
        let breakdown = match (breakdown && valid, mgn::delta_exponents(p)) {
            (true, Some(d)) => Some((mgn::count_product(p)?, d)),
            _ => None,
        };
        let dual = if dual && valid {
            let d = mgn::dual_type(p)?;
            Some((d, mgn::count(&d)?))
        } else {
            None
        };
        Ok(CountView {
            profile: *p,
            count: mgn::count(p)?,
            breakdown,
            dual,
        })
    }
}

pub fn count(v: &CountView, json: bool) -> String {
    if json {
        let mut doc = json!({
            "profile": v.profile.slots(),
            "count": v.count.to_string(),
        });
        if let Some((b, d)) = &v.breakdown {
            doc["breakdown"] = json!({
                "N": b.numerators().map(|x| x.to_string()),
                "D": b.denominators().map(|x| x.to_string()),
                "delta": d.delta,
                "delta_bar": d.delta_bar,
            });
        }
        if let Some((t, n)) = &v.dual {
            doc["dual"] = json!({ "profile": t.slots(), "count": n.to_string() });
        }
        return pretty(&doc);
    }
    let mut s = format!("{}\n", v.count);
    if let Some((b, d)) = &v.breakdown {
        for (i, x) in b.numerators().iter().enumerate() {
            writeln!(s, "N{} = {x}", i + 1).unwrap();
        }
        for (i, x) in b.denominators().iter().enumerate() {
            writeln!(s, "D{} = {x}", i + 1).unwrap();
        }
        writeln!(s, "delta = {}", d.delta).unwrap();
        writeln!(s, "delta_bar = {}", d.delta_bar).unwrap();
    }
    if let Some((t, n)) = &v.dual {
        writeln!(s, "dual {t} = {n}").unwrap();
    }
    s
}

pub fn sequence(terms: &[(i64, Nat)], bfile: bool, json: bool) -> String {
    if bfile {
        return z2z8::sequence::write_bfile(terms);
    }
    if json {
        let values: Vec<String> = terms.iter().map(|(_, v)| v.to_string()).collect();
        return pretty(&json!(values));
    }
    terms.iter().map(|(_, v)| format!("{v}\n")).collect()
}

pub fn verify(r: &VerifyReport, json: bool) -> String {
    let a = r.ambient;
    if json {
        let rows: Vec<Value> = r
            .rows
            .iter()
            .map(|row| {
                json!({
                    "profile": row.profile.slots(),
                    "oracle": row.oracle.to_string(),
                    "formula": row.formula.to_string(),
                    "match": row.matches(),
                })
            })
            .collect();
        return pretty(&json!({
            "alpha": a.alpha(),
            "beta": a.beta(),
            "e": a.e(),
            "passed": r.passed(),
            "total": { "oracle": r.oracle_total.to_string(), "formula": r.formula_total.to_string() },
            "rows": rows,
        }));
    }
    let mut s = format!("verify over {a}\n");
    for row in &r.rows {
        let mark = if row.matches() { "ok" } else { "MISMATCH" };
        writeln!(s, "{:<18} oracle {:>8}  formula {:>8}  {mark}", row.profile.to_string(), row.oracle, row.formula).unwrap();
    }
    let bad = r.mismatches().count();
    if r.passed() {
        writeln!(s, "all {} profiles match; total subgroups = {}", r.rows.len(), r.oracle_total).unwrap();
    } else {
        writeln!(
            s,
            "{bad} of {} profiles differ; total subgroups oracle {} formula {}",
            r.rows.len(),
            r.oracle_total,
            r.formula_total
        )
        .unwrap();
    }
    s
}

pub struct SelfDualView {
    profile: TypeProfile,
    dual: TypeProfile,
    condition: bool,
    count: Nat,
    dual_count: Nat,
}

impl SelfDualView {
    pub fn build(p: &TypeProfile) -> Result<Self, MgnError> {
        let dual = mgn::dual_type(p)?;
        Ok(SelfDualView {
            profile: *p,
            dual,
            condition: mgn::self_dual_count_condition(p),
            count: mgn::count(p)?,
            dual_count: mgn::count(&dual)?,
        })
    }
}

fn check_line(c: &IdentityCheck) -> String {
    let verdict = if c.passed() { "PASS" } else { "FAIL" };
    let mut s = format!("{verdict}  ({}) {}  [{} cases]", c.id, c.statement, c.checked);
    if let Some(w) = &c.counterexample {
        write!(s, "  counterexample: {w}").unwrap();
    }
    s
}

fn check_json(c: &IdentityCheck) -> Value {
    json!({
        "id": c.id,
        "statement": c.statement,
        "passed": c.passed(),
        "checked": c.checked,
        "failures": c.failures,
        "counterexample": c.counterexample,
    })
}

pub fn identities(
    r: &IdentityReport,
    confirmation: Option<&(TypeProfile, Nat)>,
    self_dual: Option<&SelfDualView>,
    json: bool,
) -> String {
    if json {
        let mut doc = json!({
            "bounds": [r.max_alpha, r.max_beta],
            "core": r.core.iter().map(check_json).collect::<Vec<_>>(),
            "readings": r.readings.iter().map(check_json).collect::<Vec<_>>(),
            "core_passed": r.core_passed(),
        });
        if let Some((t, n)) = confirmation {
            doc["oracle"] = json!({ "profile": t.slots(), "count": n.to_string() });
        }
        if let Some(v) = self_dual {
            doc["self_dual"] = json!({
                "profile": v.profile.slots(),
                "dual": v.dual.slots(),
                "condition": v.condition,
                "count": v.count.to_string(),
                "dual_count": v.dual_count.to_string(),
            });
        }
        return pretty(&doc);
    }
    let mut s = format!("identities over 1 <= alpha <= {}, 1 <= beta <= {}\n", r.max_alpha, r.max_beta);
    for c in &r.core {
        writeln!(s, "{}", check_line(c)).unwrap();
    }
    writeln!(s, "readings:").unwrap();
    for c in &r.readings {
        writeln!(s, "{}", check_line(c)).unwrap();
    }
    if let Some((t, n)) = confirmation {
        writeln!(s, "oracle: census(2,2,3) at {t} = {n}").unwrap();
    }
    if let Some(v) = self_dual {
        writeln!(
            s,
            "self-dual condition at {}: condition {}, N = {}, N(dual {}) = {}, counts {}",
            v.profile,
            v.condition,
            v.count,
            v.dual,
            v.dual_count,
            if v.count == v.dual_count { "equal" } else { "differ" }
        )
        .unwrap();
    }
    s
}

fn word_strings(words: &[MixedWord]) -> Vec<String> {
    words.iter().map(MixedWord::to_string).collect()
}

pub fn matrix(
    ambient: Ambient,
    rows: &[MixedWord],
    parity: Option<&ParityCheckMatrix>,
    span: Option<&[MixedWord]>,
    json: bool,
) -> String {
    if json {
        let mut doc = json!({
            "ambient": [ambient.alpha(), ambient.beta(), ambient.e()],
            "generators": word_strings(rows),
        });
        if let Some(h) = parity {
            doc["parity"] = json!(word_strings(h.rows()));
        }
        if let Some(w) = span {
            doc["span"] = json!(word_strings(w));
        }
        return pretty(&doc);
    }
    let mut s = codes::write_rows(ambient, rows);
    if let Some(h) = parity {
        s.push_str("# parity-check\n");
        s.push_str(&codes::write_rows(ambient, h.rows()));
    }
    if let Some(w) = span {
        writeln!(s, "# span: {} codewords", w.len()).unwrap();
        s.push_str(&codes::write_rows(ambient, w));
    }
    s
}

pub fn enumerate(ambient: Ambient, subgroups: &[(CodeType, usize, Vec<MixedWord>)], json: bool) -> String {
    if json {
        let list: Vec<Value> = subgroups
            .iter()
            .map(|(t, n, gens)| json!({ "type": t.slots(), "size": n, "generators": word_strings(gens) }))
            .collect();
        return pretty(&json!({
            "alpha": ambient.alpha(),
            "beta": ambient.beta(),
            "e": ambient.e(),
            "subgroups": list,
        }));
    }
    let mut s = String::new();
    for (i, (t, n, gens)) in subgroups.iter().enumerate() {
        writeln!(s, "# subgroup {i}: type {t}, {n} codewords").unwrap();
        s.push_str(&codes::write_rows(ambient, gens));
    }
    s
}

use std::collections::HashSet;

use z2z8::codes::classify_type;
use z2z8::mgn::{self, check_identities};
use z2z8::oracle::{census, enumerate_subgroups, enumerate_subgroups_serial, formula_census, verify_formula, Provenance};
use z2z8::{Census, CodeType, Nat, TypeProfile, Z2Z4Profile};

fn z8(a: u32, b: u32, k0: u32, k1: u32, k2: u32, k3: u32) -> CodeType {
    CodeType::Z2Z8(TypeProfile::new(a, b, k0, k1, k2, k3))
}

#[test]
fn worked_examples_from_enumeration() {
    let c = census(2, 2, 3).unwrap();
    assert_eq!(c.get(&z8(2, 2, 1, 1, 1, 0)), Nat::from(36u32));
    assert_eq!(c.provenance, Provenance::Enumeration);
    let c = census(2, 2, 2).unwrap();
    assert_eq!(c.get(&CodeType::Z2Z4(Z2Z4Profile::new(2, 2, 1, 1, 1))), Nat::from(18u32));
}

#[test]
fn full_binary_rank_needs_the_correction_factor() {
    let c = census(2, 2, 3).unwrap();
    let big = c.get(&z8(2, 2, 2, 1, 0, 0));
    assert_eq!(big, Nat::from(48u32));
    let small: Nat = mgn::count(&TypeProfile::new(1, 2, 1, 1, 0, 0)).unwrap();
    assert_eq!(small, Nat::from(24u32));
    // 2^{(alpha-1)(beta-l)} = 2
    assert_eq!(big, small * 2u32);
    let report = check_identities(2, 2).unwrap();
    assert!(!report.find("full-rank-literal").unwrap().passed());
    assert!(report.find("full-rank-corrected").unwrap().passed());
}

#[test]
fn every_small_ambient_matches_the_formula() {
    for (a, b, e) in [
        (0, 0, 3),
        (1, 0, 3),
        (0, 1, 3),
        (1, 1, 3),
        (2, 1, 3),
        (1, 2, 3),
        (3, 1, 3),
        (0, 2, 3),
        (1, 1, 2),
        (2, 1, 2),
        (1, 2, 2),
        (2, 2, 2),
        (3, 2, 2),
        (0, 3, 2),
    ] {
        let r = verify_formula(a, b, e).unwrap();
        assert!(r.passed(), "({a},{b},{e}): {:?}", r.mismatches().collect::<Vec<_>>());
    }
}

#[test]
fn enumeration_has_no_duplicates_and_classifies() {
    for (a, b, e) in [(2, 1, 3), (1, 2, 3), (2, 2, 2)] {
        let subs = enumerate_subgroups(a, b, e).unwrap();
        let distinct: HashSet<&[u32]> = subs.iter().map(|c| c.canonical_words()).collect();
        assert_eq!(distinct.len(), subs.len());
        for c in &subs {
            assert!(classify_type(c).is_ok());
        }
    }
}

#[test]
fn parallel_and_serial_censuses_agree() {
    assert_eq!(enumerate_subgroups(1, 2, 3).unwrap(), enumerate_subgroups_serial(1, 2, 3).unwrap());
}

#[test]
fn census_totals_and_json() {
    let oracle: Census = census(2, 1, 3).unwrap();
    assert_eq!(oracle.total_subgroups, Nat::from(38u32));
    assert_eq!(oracle.counts.values().sum::<Nat>(), oracle.total_subgroups);
    let formula = formula_census(2, 1, 3).unwrap();
    assert_eq!(formula.provenance, Provenance::Formula);
    assert_eq!(formula.counts, oracle.counts);

    let json: serde_json::Value = serde_json::from_str(&oracle.to_json()).unwrap();
    assert_eq!(json["alpha"], 2);
    assert_eq!(json["e"], 3);
    assert_eq!(json["total"], "38");
    assert!(json["counts"][0]["count"].is_string());
    assert_eq!(json["counts"][0]["profile"].as_array().unwrap().len(), 6);
    assert_eq!(Census::from_json(&oracle.to_json()).unwrap(), oracle);
}

#[test]
fn formula_census_ignores_the_guard() {
    let f = formula_census(5, 5, 3).unwrap();
    assert!(f.total_subgroups > Nat::from(1u64 << 40));
}

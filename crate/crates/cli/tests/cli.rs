use std::process::{Command, Output};

use z2z8::codes::{classify_type, parse_rows, span};
use z2z8::sequence::parse_bfile;
use z2z8::{Census, CodeType, Nat, TypeProfile};

fn z2z8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2z8"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = z2z8(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn profile_flags(p: [&'static str; 6]) -> Vec<&'static str> {
    ["--alpha", "--beta", "--k0", "--k1", "--k2", "--k3"]
        .into_iter()
        .zip(p)
        .flat_map(|(f, v)| [f, v])
        .collect()
}

fn count_args(p: [&'static str; 6]) -> Vec<&'static str> {
    let mut v = vec!["count"];
    v.extend(profile_flags(p));
    v
}

#[test]
fn count_examples() {
    assert_eq!(ok(&count_args(["2", "2", "1", "1", "1", "0"])), "36\n");
    assert_eq!(ok(&count_args(["3", "4", "2", "0", "1", "2"])), "11760\n");
    assert_eq!(ok(&count_args(["1", "2", "0", "0", "0", "5"])), "0\n");
}

#[test]
fn count_breakdown_and_dual() {
    let mut args = count_args(["2", "2", "1", "1", "1", "0"]);
    args.extend(["--breakdown", "--dual", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&ok(&args)).unwrap();
    assert_eq!(v["count"], "36");
    assert_eq!(v["breakdown"]["N"].as_array().unwrap().len(), 4);
    assert_eq!(v["dual"]["profile"], serde_json::json!([2, 2, 1, 0, 0, 1]));
    let num: Nat = v["breakdown"]["N"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse::<Nat>().unwrap())
        .product();
    let den: Nat = v["breakdown"]["D"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse::<Nat>().unwrap())
        .product();
    assert_eq!(num / den, Nat::from(36u32));
    let plain = ok(&args[..args.len() - 2]);
    assert!(plain.contains("delta = "));
    assert!(plain.contains("dual (2,2;1,0,0,1) = "));
}

#[test]
fn usage_errors_exit_two() {
    let o = z2z8(&["count", "--alpha", "-1", "--beta", "2", "--k0", "0", "--k1", "0", "--k2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = z2z8(&["count", "--alpha", "x", "--beta", "2", "--k0", "0", "--k1", "0", "--k2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(z2z8(&["sequence", "t99"]).status.code(), Some(2));
    assert_eq!(z2z8(&["sequence", "t2", "--from", "1", "--to", "20000"]).status.code(), Some(2));
    assert_eq!(z2z8(&["nonsense"]).status.code(), Some(2));
    let mut m = vec!["matrix"];
    m.extend(profile_flags(["3", "2", "4", "0", "0", "0"]));
    assert_eq!(z2z8(&m).status.code(), Some(2));
}

#[test]
fn sequence_formats() {
    assert_eq!(ok(&["sequence", "t2", "--from", "1", "--to", "5"]), "36\n84\n180\n372\n756\n");
    let b = ok(&["sequence", "t8", "--from", "3", "--to", "6", "--format", "bfile"]);
    assert_eq!(b, "3 42\n4 10080\n5 1666560\n6 239984640\n");
    let terms = parse_bfile(&b).unwrap();
    assert_eq!(terms.len(), 4);
    let j: Vec<String> = serde_json::from_str(&ok(&["sequence", "t7", "--to", "4", "--format", "json"])).unwrap();
    assert_eq!(j, ["3", "35", "1395", "200787"]);
    // default range starts at the family offset
    let t6 = ok(&["sequence", "t6", "--to", "4", "--format", "bfile"]);
    assert_eq!(t6, "2 840\n3 52080\n4 2187360\n");
    let custom = ok(&["sequence", "--slots", "r+1,2,r,1,1,0", "--from", "1", "--to", "2"]);
    assert_eq!(custom, "36\n84\n");
}

#[test]
fn bfile_round_trip_for_every_builtin() {
    for name in ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"] {
        let text = ok(&["sequence", name, "--format", "bfile"]);
        let terms = parse_bfile(&text).unwrap();
        assert_eq!(terms.len(), 10);
        assert_eq!(z2z8::sequence::write_bfile(&terms), text);
        assert!(text.is_ascii() && text.ends_with('\n') && !text.contains('\r'));
    }
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = ok(&["verify", "--alpha", "1", "--beta", "1", "--e", "3"]);
    assert!(out.contains("all 8 profiles match; total subgroups = 11"), "{out}");
    let j: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "--alpha", "2", "--beta", "1", "--e", "2", "--format", "json"])).unwrap();
    assert_eq!(j["passed"], true);
    let o = z2z8(&["verify", "--alpha", "4", "--beta", "4", "--e", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn verify_full_two_two() {
    let out = ok(&["verify", "--alpha", "2", "--beta", "2", "--e", "3"]);
    assert!(out.contains("(2,2;1,1,1,0)      oracle       36  formula       36  ok"), "{out}");
    assert!(out.contains("total subgroups = 671"));
}

#[test]
fn identity_report() {
    let out = ok(&["check-identities", "--no-oracle", "--profile", "2,2,1,0,1,1"]);
    for id in ["a", "b", "c", "d", "f", "g", "h"] {
        assert!(out.contains(&format!("PASS  ({id})")), "{id}");
    }
    assert!(out.contains("FAIL  (full-rank-literal)"));
    assert!(out.contains("48 != 24"));
    assert!(out.contains("PASS  (full-rank-corrected)"));
    assert!(out.contains("self-dual condition at (2,2;1,0,1,1): condition true"));
    assert!(out.contains("counts equal"));
}

#[test]
fn identity_report_with_oracle_json() {
    let j: serde_json::Value = serde_json::from_str(&ok(&["check-identities", "--format", "json"])).unwrap();
    assert_eq!(j["core_passed"], true);
    assert_eq!(j["oracle"]["count"], "48");
}

#[test]
fn matrix_output() {
    let mut args = vec!["matrix"];
    args.extend(profile_flags(["2", "2", "1", "1", "1", "0"]));
    let zero = ok(&[&args[..], &["--zero"]].concat());
    assert_eq!(zero, "2 2 3\n1 0 | 0 0\n0 0 | 1 0\n0 0 | 0 2\n");

    let seeded = [&args[..], &["--seed", "5", "--parity"]].concat();
    let first = ok(&seeded);
    assert_eq!(first, ok(&seeded));
    let (amb, rows) = parse_rows(first.split("# parity-check").next().unwrap()).unwrap();
    let code = span(amb, &rows).unwrap();
    assert_eq!(classify_type(&code).unwrap(), CodeType::Z2Z8(TypeProfile::new(2, 2, 1, 1, 1, 0)));

    let j: serde_json::Value = serde_json::from_str(&ok(&[&args[..], &["--span", "--format", "json"]].concat())).unwrap();
    assert_eq!(j["span"].as_array().unwrap().len(), 64);

    let mut big = vec!["matrix"];
    big.extend(profile_flags(["4", "4", "1", "1", "1", "1"]));
    big.push("--span");
    assert_eq!(z2z8(&big).status.code(), Some(3));
}

#[test]
fn census_export_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let p = path.to_str().unwrap();
    let printed = ok(&["census-export", "--alpha", "2", "--beta", "1", "--e", "3", "--out", p]);
    assert!(printed.is_empty());
    let census = Census::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(census.total_subgroups, Nat::from(38u32));
    let formula = ok(&["census-export", "--alpha", "2", "--beta", "1", "--e", "3", "--formula"]);
    assert_eq!(Census::from_json(&formula).unwrap().counts, census.counts);
}

#[test]
fn enumerate_lists_every_subgroup() {
    let out = ok(&["enumerate", "--alpha", "1", "--beta", "1", "--e", "3"]);
    assert_eq!(out.matches("# subgroup").count(), 11);
    assert_eq!(z2z8(&["enumerate", "--alpha", "4", "--beta", "4"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let a = ok(&["census-export", "--alpha", "1", "--beta", "2", "--e", "2"]);
    let b = ok(&["census-export", "--alpha", "1", "--beta", "2", "--e", "2"]);
    assert_eq!(a, b);
}

use std::process::{Command, Output};

use serde_json::Value;

fn drinfeld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld")).args(args).output().unwrap()
}

fn payload(args: &[&str]) -> Value {
    let out = drinfeld(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["payload"].clone()
}

#[test]
fn galois_order_of_the_flagship() {
    let p = payload(&["galois-order", "--q", "3", "--phi", "T + t - T^2*t^2", "--prime", "T+1"]);
    assert_eq!(p["total"], 48);
    assert_eq!(p["modulus"], "T + 1");
}

#[test]
fn witness_from_g1_g2() {
    let p = payload(&["witness", "--q", "2", "--g1", "0", "--g2", "T"]);
    assert_eq!(p["witness"]["kind"], "TwoConstant");
    assert_eq!(p["witness"]["moduli"], serde_json::json!(["T", "T + 1"]));
    assert_eq!(p["module"], "T + T*t^2");
}

#[test]
fn lemma_5_5_lists_four_subspaces() {
    let p = payload(&["verify-groups", "--lemma", "5.5"]);
    assert_eq!(p["invariant"].as_array().unwrap().len(), 4);
    assert_eq!(p["subspaceCount"], 212);
}

#[test]
fn payloads_replay_byte_for_byte() {
    let args = ["verify-groups", "--lemma", "5.6", "--trials", "50", "--seed", "7"];
    let a = serde_json::to_string(&payload(&args)).unwrap();
    let b = serde_json::to_string(&payload(&args)).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"seed\":7"));
    let img = ["image", "--q", "4", "--phi", "T + t - T^3*t^2", "--modulus", "T + w"];
    let c = payload(&img);
    assert_eq!(c["verdict"], "Surjective");
    assert_eq!(c, payload(&img));
}

#[test]
fn frobenius_csv_table() {
    let out = drinfeld(&[
        "frobenius", "--phi", "T + t - T^2*t^2", "--max-deg", "1", "--modulus", "T", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "prime,a,mu,identity,trace,traceMatches");
    // T is bad, T + 1 gives (a, mu) = (1, 1)
    assert_eq!(lines[1], "T + 1,1,1,true,1,true");
    assert_eq!(lines.len(), 3);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("drinfeld-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torsion.json");
    let out = drinfeld(&[
        "torsion", "--phi", "T + t - T^2*t^2", "--prime", "T^2+1", "--modulus", "T", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["payload"]["points"], 9);
    assert_eq!(v["payload"]["matches"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| drinfeld(args).status.code().unwrap();
    assert_eq!(code(&["witness", "--q", "2", "--g2", "T +"]), 2);
    assert_eq!(code(&["witness", "--q", "5", "--g2", "T"]), 2);
    assert_eq!(code(&["witness", "--q", "3", "--g2", "w"]), 2);
    assert_eq!(code(&["galois-order", "--g2", "T"]), 2);
    assert_eq!(code(&["witness", "--g2", "T", "--format", "csv"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(
        code(&["torsion", "--phi", "T + t - T^2*t^2", "--prime", "T+2", "--modulus", "T+2"]),
        3
    );
    let err = drinfeld(&["witness", "--g2", "T +"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("syntax error at 3"));
}

#[test]
fn suite_reports_every_criterion() {
    let out = drinfeld(&["suite", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 12);
    let failed: Vec<&str> = rows.iter().filter(|r| &r[2] == "false").map(|r| r.get(0).unwrap()).collect();
    // the wild and constant resolvent counterexamples make criterion 9 fail
    assert_eq!(failed, vec!["9"]);
    assert_eq!(out.status.code(), Some(4));
}

use std::path::PathBuf;
use std::process::Command;

use prinseries_cli::report::{parse_records, Record};
use prinseries_cli::{run, EXIT_OK, EXIT_USAGE};
use prinseries_core::characters::parse_characters;
use prinseries_core::distinction::{CounterexampleReport, PrincipalSeriesDatum};
use prinseries_core::Extension;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against `tests/golden/<name>`; `PRINSERIES_BLESS=1` rewrites the file.
fn golden(name: &str, args: &[&str]) -> String {
    let mut argv = vec!["prinseries"];
    argv.extend_from_slice(args);
    let (out, code) = run(argv);
    assert_eq!(code, EXIT_OK, "{args:?}:\n{out}");
    let path = golden_path(name);
    if std::env::var_os("PRINSERIES_BLESS").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, expected, "output of {args:?} drifted from {}", path.display());
    out
}

fn records(text: &str) -> Vec<Record> {
    parse_records(text).unwrap()
}

fn first<'a>(rs: &'a [Record], kind: &str) -> &'a Record {
    rs.iter().find(|r| r.kind == kind).unwrap_or_else(|| panic!("no {kind} record"))
}

#[test]
fn distinguish_mu_pair() {
    let out = golden(
        "distinguish_mu_pair.txt",
        &["distinguish", "--ext", "unram:p=3", "--chars", "c=1;c=5", "--format", "records"],
    );
    let rs = records(&out);
    let v = first(&rs, "verdict");
    assert_eq!(v.get("distinguished"), Some("true"));
    assert_eq!(v.get("certificate"), Some("(1,2)"));
    assert_eq!(first(&rs, "summary").get("failed"), Some("0"));
}

#[test]
fn distinguish_worked_counterexample() {
    let out = golden(
        "distinguish_worked.txt",
        &["distinguish", "--ext", "unram:p=3", "--chars", "c=0,phase=1/2;c=4,phase=1/2;c=0", "--format", "records"],
    );
    let v = first(&records(&out), "verdict").clone();
    assert_eq!(v.get("distinguished"), Some("false"));
    assert_eq!(v.get("eta_distinguished"), Some("false"));
    assert_eq!(v.get("sigma_selfdual"), Some("true"));
    assert_eq!(v.get("central_trivial"), Some("true"));
}

#[test]
fn distinguish_plain() {
    let out = golden("distinguish_plain.txt", &["distinguish", "--ext", "ram:p=5,u0=1", "--chars", "c=2;c=2"]);
    assert!(out.ends_with("0 failed\n"));
}

#[test]
fn counterexample_n3() {
    let out = golden(
        "counterexample_n3.txt",
        &["counterexample", "--n", "3", "--ext", "unram:p=3", "--budget", "4", "--format", "records"],
    );
    let rs = records(&out);
    assert_eq!(rs.iter().filter(|r| r.kind == "item").count(), 4);
}

#[test]
fn gamma_sweep() {
    let out = golden("gamma_c1.txt", &["gamma", "--ext", "unram:p=3", "--mu", "c=1", "--format", "records"]);
    let rs = records(&out);
    let sweep = first(&rs, "sweep");
    assert_eq!(sweep.get("all_products_one"), Some("true"));
    assert_eq!(sweep.get("distinguished_by_matching"), Some("true"));
    assert_eq!(rs.iter().filter(|r| r.kind == "chi").count(), 4);
}

#[test]
fn orbits_n2_q3() {
    let out = golden(
        "orbits_n2_q3.txt",
        &["orbits", "--n", "2", "--q", "3", "--full-enum", "--random-checks", "20", "--seed", "7", "--format", "records"],
    );
    let rs = records(&out);
    let space = first(&rs, "space");
    assert_eq!(space.get("s_enumerated"), Some("120"));
    assert_eq!(space.get("orbits"), Some("2"));
    let sizes: usize = rs
        .iter()
        .filter(|r| r.kind == "orbit")
        .map(|r| r.get("size").unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(sizes, 120);
}

#[test]
fn cells_n4() {
    let out = golden("cells_n4.txt", &["cells", "--n", "4", "--format", "records"]);
    let rs = records(&out);
    assert_eq!(rs.iter().filter(|r| r.kind == "cell").count(), 24);
}

#[test]
fn even_residue_characteristic_is_a_usage_error() {
    let (out, code) = run(["prinseries", "distinguish", "--ext", "unram:p=2", "--chars", "c=0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("even residue characteristic unsupported"), "{out}");
}

#[test]
fn small_counterexample_rank_is_rejected() {
    let (out, code) = run(["prinseries", "counterexample", "--n", "2", "--ext", "unram:p=3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("n >= 3"), "{out}");
}

#[test]
fn ramified_gamma_is_rejected() {
    let (out, code) = run(["prinseries", "gamma", "--ext", "ram:p=3,u0=0", "--mu", "c=1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("unsupported in gamma module"), "{out}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let (_, code) = run(["prinseries", "cells", "--bogus"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn counterexample_records_reload_and_reverify() {
    let (out, code) = run([
        "prinseries", "counterexample", "--n", "4", "--ext", "unram:p=3", "--budget", "5", "--format", "records",
    ]);
    assert_eq!(code, EXIT_OK);
    let items: Vec<Record> = records(&out).into_iter().filter(|r| r.kind == "item").collect();
    assert_eq!(items.len(), 5);
    for item in items {
        let ext: Extension = item.get("ext").unwrap().parse().unwrap();
        let chars = parse_characters(&ext, item.get("chars").unwrap()).unwrap();
        assert_eq!(chars.len(), 4);
        let datum = PrincipalSeriesDatum::new(chars).unwrap();
        let report = CounterexampleReport::verify(&datum).unwrap();
        assert!(report.passes() && report.all_distinct, "{datum}");
    }
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_prinseries");
    let ok = Command::new(bin).args(["cells", "--n", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("[PASS] closure"));
    let bad = Command::new(bin)
        .args(["distinguish", "--ext", "unram:p=2", "--chars", "c=0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("even residue characteristic unsupported"));
}

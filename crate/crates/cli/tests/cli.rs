use std::collections::BTreeSet;
use std::process::Command;

use spschur_cli::{catalog, run, CliError, Params, Report, Status};

const REQUIRED: [&str; 12] = [
    "thm-7.1-caseA1",
    "prop-8.5",
    "prop-9.3",
    "prop-10.6",
    "prop-11.1-case2",
    "sec-17-x1x3",
    "k-recursion",
    "so-counts",
    "relations-scan",
    "lemma-7.2",
    "class-sizes",
    "dye-bound",
];

fn spschur(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spschur")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn catalog_ids_are_unique_and_complete() {
    let ids: Vec<_> = catalog().into_iter().map(|s| s.id).collect();
    let unique: BTreeSet<_> = ids.iter().cloned().collect();
    assert_eq!(unique.len(), ids.len());
    for id in REQUIRED {
        assert!(unique.contains(id), "missing {id}");
    }
    for s in catalog() {
        assert!(!s.anchor.is_empty(), "{} has no anchor", s.id);
    }
}

#[test]
fn list_prints_every_suite() {
    let (code, out, _) = spschur(&["list"]);
    assert_eq!(code, 0);
    for s in catalog() {
        assert!(out.lines().any(|l| l.starts_with(&format!("{} ", s.id))), "{} not listed", s.id);
    }
}

#[test]
fn class_sizes_at_four() {
    let report = run("class-sizes", &Params::with_n(4)).unwrap();
    assert!(report.passed());
    let sizes = &report.checks.iter().find(|c| c.name == "sizes").unwrap().values;
    assert_eq!(sizes, &serde_json::json!([15, 45, 40, 20, 720]));
}

#[test]
fn dye_bound_records_small_m() {
    let report = run("dye-bound", &Params::default()).unwrap();
    assert!(report.passed());
    for m in [2, 3] {
        let c = report.checks.iter().find(|c| c.name == format!("m={m}")).unwrap();
        assert_eq!(c.status, Status::Recorded);
        assert_eq!(c.values["holds"], false);
    }
}

#[test]
fn listed_triples_suite_finds_sixteen() {
    let report = run("lemma-7.2", &Params::default()).unwrap();
    assert!(report.passed());
    assert_eq!(report.checks[0].values["found"], 16);
}

#[test]
fn exit_codes() {
    let (code, _, _) = spschur(&["run", "meeting-pair-factors"]);
    assert_eq!(code, 0);
    let (code, _, err) = spschur(&["run", "sec-17-x1x3"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = spschur(&["run", "no-such-suite"]);
    assert_eq!(code, 2);
    let (code, _, _) = spschur(&["run", "class-sizes", "--n", "5"]);
    assert_eq!(code, 2);
    let (code, _, _) = spschur(&["run", "class-sizes", "--family", "so-plus"]);
    assert_eq!(code, 2);
    let (code, _, _) = spschur(&["run", "partition-whole", "--n", "18"]);
    assert_eq!(code, 3);
    let (code, _, _) = spschur(&["run", "class-sizes", "--n", "4", "--update-goldens"]);
    assert_eq!(code, 2);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested/report.json");
    let (code, _, _) = spschur(&["run", "orthogonal-pair-factors", "--n", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, stdout, _) = spschur(&["run", "orthogonal-pair-factors", "--n", "6"]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout);
    let parsed: Report = serde_json::from_str(&written).unwrap();
    assert_eq!(parsed.parameters["n"], 6);
}

#[test]
fn csv_export_of_scan() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let args = ["run", "relations-scan", "--family", "sym-n+1", "--range", "8..12", "--csv", path.to_str().unwrap()];
    let (code, _, _) = spschur(&args);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("check,"));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(run("missing", &Params::default()).unwrap_err().exit_code(), 2);
    let guard: CliError = spschur::Error::SizeGuard("x".into()).into();
    assert_eq!(guard.exit_code(), 3);
}

#[test]
fn suites_accept_larger_n() {
    for id in ["lemma-7.2", "orthogonal-tail-triples", "thm-7.1-caseA1", "meeting-blocks-case-b21"] {
        assert!(run(id, &Params::with_n(8)).unwrap().passed(), "{id}");
    }
}

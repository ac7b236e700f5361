//! Partition verifier runs.

use std::collections::BTreeMap;

use serde_json::json;
use spschur::ortho::QuadForm;
use spschur::schur::{verify_partition, zero_triangle_count, TPartition};

use crate::params::{param_map, CliError, CliResult, Params};
use crate::report::Report;

/// Adds every verifier check plus the counting and zero-triangle identities,
/// prefixed by `label`.
fn verify_into(report: &mut Report, label: &str, p: &TPartition) {
    let v = verify_partition(p);
    for c in &v.checks {
        let check = report.check(format!("{label}: {}", c.name), c.passed, json!(null));
        if let Some(w) = &c.witness {
            check.witness(w);
        }
    }
    let z = zero_triangle_count(p);
    report.check(
        format!("{label}: zero-triangle identity"),
        z.from_profiles == z.expected,
        json!({"from_profiles": z.from_profiles.to_string(), "expected": z.expected.to_string()}),
    );
    let profiles: Vec<_> = v
        .profiles
        .iter()
        .map(|p| p.constant().map(|f| [f.f1, f.f2, f.f3, f.f4]))
        .collect();
    report.record(format!("{label}: statistics"), json!(profiles));
}

/// Dimensions above the verifier's limit pass through so that its size
/// guard reports them.
fn n_list(params: &Params, default: &[usize], lo: usize, hi: usize) -> CliResult<Vec<usize>> {
    match params.n {
        Some(_) => Ok(vec![params.n_in(0, lo, hi)?]),
        None => Ok(default.to_vec()),
    }
}

pub fn partition_whole(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let ns = n_list(params, &[4, 6, 8], 2, 30)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(ns))]));
    for n in ns {
        verify_into(&mut report, &format!("n={n}"), &TPartition::whole(n)?);
    }
    Ok(report)
}

pub fn partition_orthogonal(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n", "family"])?;
    let ns = n_list(params, &[6, 8], 4, 30)?;
    let signs: Vec<(bool, &str)> = match params.family.as_deref() {
        None => vec![(false, "so-plus"), (true, "so-minus")],
        Some("so-plus") => vec![(false, "so-plus")],
        Some("so-minus") => vec![(true, "so-minus")],
        Some(f) => return Err(CliError::InvalidParams(format!("family {f:?} must be so-plus or so-minus"))),
    };
    let names: Vec<_> = signs.iter().map(|s| s.1).collect();
    let mut report = Report::new(id, anchor, param_map([("family", json!(names)), ("n", json!(ns))]));
    for n in ns {
        for &(alpha, name) in &signs {
            let q = QuadForm::standard(n, alpha)?;
            let p = TPartition::complement_pair(n, q.so_transvections()?)?;
            verify_into(&mut report, &format!("{name} n={n}"), &p);
        }
    }
    Ok(report)
}

/// Number of colorings drawn per run.
pub const RANDOM_COLORINGS: u64 = 100;

pub fn partition_random(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n", "seed"])?;
    let n = params.n_in(6, 4, 30)?;
    let seed = params.seed.unwrap_or(0);
    let mut report = Report::new(
        id,
        anchor,
        param_map([("n", json!(n)), ("seed", json!(seed)), ("colorings", json!(RANDOM_COLORINGS))]),
    );
    let mut first_failures: BTreeMap<String, u64> = BTreeMap::new();
    let mut accepted = None;
    for s in seed..seed + RANDOM_COLORINGS {
        let p = TPartition::random_two_coloring(n, s)?;
        match verify_partition(&p).first_failure() {
            Some(c) => *first_failures.entry(c.name.clone()).or_default() += 1,
            None => {
                accepted.get_or_insert(s);
            }
        }
    }
    let check = report.check("every coloring is rejected", accepted.is_none(), json!(first_failures));
    if let Some(s) = accepted {
        check.witness(format!("seed {s}"));
    }
    Ok(report)
}

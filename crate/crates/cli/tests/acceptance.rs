//! Runs every acceptance criterion through the suite runner and prints one
//! line per criterion. Exits nonzero when a check fails that is not in the
//! list of known unattainable checks.

use std::process::ExitCode;

use spschur_cli::{run, Params, Range, Report};

/// Checks known to fail: the path-graph cube never shows coefficients
/// (1, 3) in X1 X3 against X3 X1; only (3, 5) and (5, 3) occur.
const KNOWN_FAILURES: [(&str, &str); 1] = [("sec-17-x1x3", "coefficients (1, 3) occur")];

struct Criterion {
    title: &'static str,
    runs: Vec<(&'static str, Params)>,
}

fn n(n: usize) -> Params {
    Params::with_n(n)
}

fn d() -> Params {
    Params::default()
}

fn criteria() -> Vec<Criterion> {
    let at = |id: &'static str, ns: &[usize]| ns.iter().map(move |&k| (id, n(k))).collect::<Vec<_>>();
    vec![
        Criterion {
            title: "class sizes against enumeration",
            runs: at("class-sizes", &[2, 4, 6]),
        },
        Criterion {
            title: "square of the transvection class",
            runs: at("class-square", &[4, 6]),
        },
        Criterion {
            title: "factorization lists",
            runs: vec![
                ("meeting-pair-factors", d()),
                ("orthogonal-pair-factors", d()),
                ("no-two-factor-transvection", d()),
                ("three-to-one-families", d()),
                ("lemma-7.2", d()),
                ("orthogonal-tail-triples", d()),
            ],
        },
        Criterion {
            title: "multiplicity contradictions at n = 6 and n = 8",
            runs: ["prop-8.5", "prop-9.3", "prop-10.6", "prop-11.1-case2", "sec-17-x1x3"]
                .iter()
                .flat_map(|id| at(id, &[6, 8]))
                .collect(),
        },
        Criterion {
            title: "isotropic block counts",
            runs: vec![("isotropic-counts", d())],
        },
        Criterion {
            title: "orthogonal counts and the K recursion",
            runs: at("so-counts", &[4, 6, 8, 10])
                .into_iter()
                .chain(at("k-recursion", &[8, 10]))
                .collect(),
        },
        Criterion {
            title: "relation systems",
            runs: vec![
                ("relations-solve", d()),
                ("relations-cross-check", d()),
                ("relations-scan", d()),
                ("dye-bound", Params { range: Some(Range { lo: 4, hi: 20 }), ..d() }),
            ],
        },
        Criterion {
            title: "partition verifier",
            runs: vec![("partition-whole", d()), ("partition-orthogonal", d()), ("partition-random", d())],
        },
        Criterion {
            title: "subgroup desk checks",
            runs: vec![("gelfand-sp2", d()), ("gelfand-sp4", d()), ("orbits-n6", d())],
        },
        Criterion {
            title: "randomized property suites",
            runs: vec![("properties", d())],
        },
    ]
}

fn label(id: &str, p: &Params) -> String {
    match p.n {
        Some(k) => format!("{id} n={k}"),
        None => id.to_string(),
    }
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    for (i, c) in criteria().iter().enumerate() {
        let mut known = Vec::new();
        let mut failed = Vec::new();
        let mut checks = 0;
        for (id, params) in &c.runs {
            let report: Report = match run(id, params) {
                Ok(r) => r,
                Err(e) => {
                    failed.push(format!("{}: error {e}", label(id, params)));
                    continue;
                }
            };
            checks += report.checks.len();
            for f in report.failures() {
                let line = format!("{}: {}", label(id, params), f.name);
                if KNOWN_FAILURES.contains(&(id, f.name.as_str())) {
                    known.push(line);
                } else {
                    failed.push(line);
                }
            }
        }
        let status = if failed.is_empty() && known.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {} ({} runs, {checks} checks)", i + 1, c.title, c.runs.len());
        for k in &known {
            println!("    known unattainable: {k}");
        }
        for f in &failed {
            println!("    unexpected failure: {f}");
        }
        unexpected += failed.len();
    }
    if unexpected == 0 {
        println!("acceptance: ok (only known unattainable checks fail)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failures");
        ExitCode::FAILURE
    }
}

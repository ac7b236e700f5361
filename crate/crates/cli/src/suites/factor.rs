//! Factorization suites defined by JSON query files in `suites/`.
//!
//! Vectors are in frame notation (`"1,2,n"` is `e_1 + e_2 + e_n`), so a
//! query written for one `n` runs unchanged for larger `n`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::json;
use spschur::cases::frame_vector;
use spschur::factorize::{enumerate, Constraint, FactorQuery};
use spschur::{Gf2Vector, SpElement};

use crate::params::{param_map, CliError, CliResult, Params};
use crate::report::Report;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub id: String,
    pub anchor: String,
    pub n: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub target: Target,
    pub length: usize,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    /// The complete list of solutions; empty when none may exist.
    pub expected: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Product of transvections, left factor applied first.
    Product(Vec<String>),
    /// Every transvection in turn.
    EachTransvection,
}

pub const QUERY_FILES: [&str; 8] = [
    include_str!("../../suites/meeting-pair-factors.json"),
    include_str!("../../suites/orthogonal-pair-factors.json"),
    include_str!("../../suites/no-two-factor-transvection.json"),
    include_str!("../../suites/lemma-7.2.json"),
    include_str!("../../suites/orthogonal-tail-triples.json"),
    include_str!("../../suites/thm-7.1-caseA1.json"),
    include_str!("../../suites/meeting-blocks-case-a21.json"),
    include_str!("../../suites/meeting-blocks-case-b21.json"),
];

pub fn query_files() -> Vec<QueryFile> {
    QUERY_FILES
        .iter()
        .map(|s| serde_json::from_str(s).expect("bundled query file parses"))
        .collect()
}

fn vectors(n: usize, list: &[String]) -> CliResult<Vec<Gf2Vector>> {
    Ok(list.iter().map(|s| frame_vector(n, s)).collect::<spschur::Result<_>>()?)
}

fn show(t: &[Gf2Vector]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn run_query(q: &QueryFile, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(q.n, q.min_n, q.max_n)?;
    let mut report = Report::new(&q.id, &q.anchor, param_map([("n", json!(n)), ("length", json!(q.length))]));
    let targets: Vec<SpElement> = match &q.target {
        Target::Product(fs) => vec![SpElement::product_of_transvections(n, &vectors(n, fs)?)?],
        Target::EachTransvection => Gf2Vector::nonzero(n)?.map(SpElement::transvection).collect(),
    };
    let expected: BTreeSet<Vec<Gf2Vector>> =
        q.expected.iter().map(|t| vectors(n, t)).collect::<CliResult<_>>()?;
    if expected.len() != q.expected.len() {
        return Err(CliError::InvalidParams(format!("{}: duplicate expected tuples", q.id)));
    }
    let mut total = 0;
    let mut witness = None;
    for target in &targets {
        let mut query = FactorQuery::new(*target, q.length);
        for (name, list) in &q.sets {
            query = query.with_set(name, vectors(n, list)?);
        }
        for c in &q.constraints {
            query = query.with_constraint(c.clone());
        }
        let found: BTreeSet<_> = enumerate(&query)?.into_iter().collect();
        total += found.len();
        if witness.is_none() {
            if let Some(t) = found.difference(&expected).next() {
                witness = Some(format!("unlisted solution {}", show(t)));
            } else if let Some(t) = expected.difference(&found).next() {
                witness = Some(format!("listed tuple {} is not a solution", show(t)));
            }
        }
    }
    let c = report.check(
        "solutions match the listed tuples",
        witness.is_none(),
        json!({"targets": targets.len(), "found": total, "listed": expected.len()}),
    );
    if let Some(w) = witness {
        c.witness(w);
    }
    Ok(report)
}

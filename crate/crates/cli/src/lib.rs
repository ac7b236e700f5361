//! Suite runner: every verification is a named suite producing a JSON
//! report with one record per check.
//!
//! A report passes when no check has status `fail`. Reports carry no timing
//! or host data, so identical parameters give byte-identical output.

pub mod params;
pub mod report;
pub mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

pub use params::{CliError, CliResult, Params, Range};
pub use report::{Check, Report, Status, SCHEMA_VERSION};

use suites::cases::{self as case_suites, SplitSuite};
use suites::factor::{query_files, run_query, QueryFile};
use suites::{gelfand, groups, ortho, partitions, properties, relations};

type Builtin = fn(&str, &str, &Params) -> CliResult<Report>;

#[derive(Clone, Debug)]
enum Runner {
    Builtin(Builtin),
    Split(&'static SplitSuite),
    Listed(usize),
    Query(Box<QueryFile>),
}

impl std::fmt::Debug for SplitSuite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SplitSuite{:?}", self.expected)
    }
}

/// One catalog entry.
#[derive(Clone, Debug)]
pub struct SuiteDescriptor {
    pub id: String,
    pub anchor: String,
    /// Flags the suite reads.
    pub flags: &'static [&'static str],
    runner: Runner,
}

impl SuiteDescriptor {
    pub fn run(&self, params: &Params) -> CliResult<Report> {
        let (id, anchor) = (self.id.as_str(), self.anchor.as_str());
        match &self.runner {
            Runner::Builtin(f) => f(id, anchor, params),
            Runner::Split(s) => case_suites::split_suite(id, anchor, s, params),
            Runner::Listed(n) => gelfand::listed_subgroups(id, anchor, *n, params),
            Runner::Query(q) => run_query(q, params),
        }
    }
}

fn builtin(id: &str, anchor: &str, flags: &'static [&'static str], f: Builtin) -> SuiteDescriptor {
    SuiteDescriptor {
        id: id.into(),
        anchor: anchor.into(),
        flags,
        runner: Runner::Builtin(f),
    }
}

fn split(id: &str, anchor: &str, s: &'static SplitSuite) -> SuiteDescriptor {
    SuiteDescriptor {
        id: id.into(),
        anchor: anchor.into(),
        flags: &["n"],
        runner: Runner::Split(s),
    }
}

fn listed(id: &str, anchor: &str, n: usize) -> SuiteDescriptor {
    SuiteDescriptor {
        id: id.into(),
        anchor: anchor.into(),
        flags: &[],
        runner: Runner::Listed(n),
    }
}

/// Every suite, in listing order.
pub fn catalog() -> Vec<SuiteDescriptor> {
    let mut v = vec![
        builtin(
            "class-sizes",
            "sizes of the transvection class, the two classes of transvection pairs and the zero triangles",
            &["n"],
            groups::class_sizes_suite,
        ),
        builtin("class-square", "square of the transvection class sum", &["n"], groups::class_square),
        builtin(
            "three-to-one-families",
            "three-transvection products equal to a single transvection",
            &["n"],
            groups::three_to_one,
        ),
    ];
    v.extend(query_files().into_iter().map(|q| SuiteDescriptor {
        id: q.id.clone(),
        anchor: q.anchor.clone(),
        flags: &["n"],
        runner: Runner::Query(Box::new(q)),
    }));
    v.extend([
        split("prop-8.5", "three blocks inside a four-dimensional subspace", &case_suites::THREE_BLOCKS),
        split("prop-9.3", "complement of an isotropic half-space", &case_suites::ISOTROPIC_HALF),
        split("prop-10.6", "two meeting directions with coset blocks", &case_suites::MEETING_DIRECTIONS),
        split("prop-11.1-case2", "frame split into two hyperbolic blocks", &case_suites::SPLIT_FRAME),
        builtin(
            "sec-17-x1x3",
            "cube of the singular part of a six-dimensional path-graph space",
            &["n"],
            case_suites::path_cube_suite,
        ),
        builtin(
            "isotropic-counts",
            "isotropic second block of dimension below n/2",
            &["n"],
            case_suites::isotropic_counts_suite,
        ),
        builtin(
            "so-counts",
            "transvections of the orthogonal groups and their orthogonal companions",
            &["n"],
            ortho::so_counts,
        ),
        builtin(
            "k-recursion",
            "two-step recursion for quadratic-form counts on a path-graph basis",
            &["n", "range"],
            ortho::k_recursion,
        ),
        builtin(
            "relations-solve",
            "two-block relation systems with an orthogonal second block",
            &["family", "range"],
            relations::relations_solve,
        ),
        builtin(
            "relations-scan",
            "integrality of the symmetric and three-block relation systems",
            &["family", "range", "r"],
            relations::relations_scan,
        ),
        builtin(
            "relations-cross-check",
            "solved relation systems against measured block statistics",
            &["family", "n"],
            relations::relations_cross_check,
        ),
        builtin(
            "dye-bound",
            "character degree bound excluding spread stabilizers",
            &["range"],
            relations::dye,
        ),
        builtin(
            "partition-whole",
            "the one-block partition of the transvections",
            &["n"],
            partitions::partition_whole,
        ),
        builtin(
            "partition-orthogonal",
            "orthogonal transvections and their complement",
            &["n", "family"],
            partitions::partition_orthogonal,
        ),
        builtin(
            "partition-random",
            "seeded random two-colorings of the transvections",
            &["n", "seed"],
            partitions::partition_random,
        ),
        listed("gelfand-sp2", "subgroups of Sp(2, 2) with commutative class algebras", 2),
        listed("gelfand-sp4", "listed subgroups of Sp(4, 2) with commutative class algebras", 4),
        listed("orbits-n6", "orbits of the orthogonal block and of the full group at n = 6", 6),
        builtin("properties", "seeded randomized algebraic invariants", &["seed"], properties::properties),
    ]);
    v
}

pub fn find(id: &str) -> CliResult<SuiteDescriptor> {
    catalog()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| CliError::UnknownSuite(id.to_string()))
}

/// Runs a suite by id.
pub fn run(id: &str, params: &Params) -> CliResult<Report> {
    find(id)?.run(params)
}

/// Exit status for a finished report: 0 when nothing failed, else 1.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

/// Writes `contents` through a temporary file in the same directory and
/// renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err(&dir))?;
    tmp.write_all(contents.as_bytes()).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

/// Directory holding the reference reports for default parameters.
pub fn goldens_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens")
}

pub fn golden_path(id: &str) -> PathBuf {
    goldens_dir().join(format!("{id}.json"))
}

/// Replaces the golden for `report` and returns a line diff against the
/// previous version (empty when unchanged).
pub fn update_golden(report: &Report) -> CliResult<String> {
    let path = golden_path(&report.suite);
    let old = std::fs::read_to_string(&path).unwrap_or_default();
    let new = report.to_json();
    if old == new {
        return Ok(String::new());
    }
    write_atomic(&path, &new)?;
    let diff = similar::TextDiff::from_lines(&old, &new);
    Ok(diff
        .unified_diff()
        .header(&format!("a/{}", report.suite), &format!("b/{}", report.suite))
        .to_string())
}

/// Rows of every check that carries a `rows` table, as CSV with a leading
/// `check` column.
pub fn table_csv(report: &Report) -> CliResult<Option<String>> {
    let mut columns: Vec<String> = Vec::new();
    let mut records: Vec<(String, serde_json::Map<String, Value>)> = Vec::new();
    for c in &report.checks {
        let Some(rows) = c.values.get("rows").and_then(Value::as_array) else { continue };
        for row in rows.iter().filter_map(Value::as_object) {
            for k in row.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
            records.push((c.name.clone(), row.clone()));
        }
    }
    if records.is_empty() {
        return Ok(None);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = std::iter::once("check").chain(columns.iter().map(String::as_str)).collect();
    let csv_err = |e: csv::Error| CliError::InvalidParams(format!("CSV output: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for (check, row) in records {
        let mut fields = vec![check];
        for k in &columns {
            fields.push(match row.get(k) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            });
        }
        w.write_record(&fields).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::InvalidParams(format!("CSV output: {e}")))?;
    Ok(Some(String::from_utf8(bytes).expect("CSV of UTF-8 fields")))
}

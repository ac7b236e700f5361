//! Explicit configurations where two products disagree at one element.

use serde_json::json;
use spschur::cases::{
    isotropic_counts, isotropic_half_space, path_cube, split_frame, three_blocks_in_w, two_meeting_directions,
    SplitCount, PATH_CUBE_SPECTRUM,
};

use crate::params::{param_map, CliResult, Params};
use crate::report::{big, Report};

/// Which configuration a split-count suite builds, and the coefficients it
/// expects in the stated order.
pub struct SplitSuite {
    pub build: fn(usize) -> spschur::Result<SplitCount>,
    pub expected: (u64, u64),
}

pub const THREE_BLOCKS: SplitSuite = SplitSuite { build: three_blocks_in_w, expected: (3, 5) };
pub const ISOTROPIC_HALF: SplitSuite = SplitSuite { build: isotropic_half_space, expected: (4, 0) };
pub const MEETING_DIRECTIONS: SplitSuite = SplitSuite { build: two_meeting_directions, expected: (6, 3) };
pub const SPLIT_FRAME: SplitSuite = SplitSuite { build: split_frame, expected: (3, 5) };

pub fn split_suite(id: &str, anchor: &str, suite: &SplitSuite, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(6, 6, 10)?;
    let sc = (suite.build)(n)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    for f in &sc.facts {
        report.check(f.name.clone(), f.holds, json!(null));
    }
    let counts = json!({
        "left": format!("{} {}", sc.left, sc.right),
        "right": format!("{} {}", sc.right, sc.left),
        "counts": [big(&sc.counts.0), big(&sc.counts.1)],
    });
    report.check("products differ at target", sc.differs(), counts).witness(sc.target.serialize());
    let (a, b) = suite.expected;
    report.check(
        format!("coefficients ({a}, {b})"),
        sc.is_ordered(a, b),
        json!([big(&sc.counts.0), big(&sc.counts.1)]),
    );
    report.record("target", json!({"support_dim": sc.support_dim, "min_length": sc.min_length}));
    Ok(report)
}

pub fn path_cube_suite(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(6, 6, 8)?;
    let c = path_cube(n)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    let spectrum: Vec<_> = c.spectrum.iter().map(big).collect();
    let want: Vec<num_bigint::BigUint> = PATH_CUBE_SPECTRUM.iter().map(|&k| k.into()).collect();
    report.check("cube multiplicities", c.spectrum == want, json!(spectrum));
    let check = report.check(
        "X1 X3 differs from X3 X1",
        c.first_difference.is_some(),
        json!(c.first_difference.as_ref().map(|(_, x, y)| [big(x), big(y)])),
    );
    if let Some((g, _, _)) = &c.first_difference {
        check.witness(g.serialize());
    }
    report.record(
        "listed target",
        json!({
            "counts": [big(&c.listed.counts.0), big(&c.listed.counts.1)],
            "factor_multiplicities": [big(&c.factor_multiplicities.0), big(&c.factor_multiplicities.1)],
        }),
    );
    let histogram: Vec<_> = c
        .difference_histogram
        .iter()
        .map(|((x, y), k)| json!({"x1x3": big(x), "x3x1": big(y), "elements": k}))
        .collect();
    report.record("difference histogram", json!(histogram));
    report.check("coefficients (1, 3) occur", c.has_difference(1, 3), json!(null));
    Ok(report)
}

pub fn isotropic_counts_suite(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(6, 6, 12)?;
    let p = 2;
    let c = isotropic_counts(n, p)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n)), ("p", json!(p))]));
    let (want1, want_m) = ((1usize << (p - 1)) - 1, (1usize << p) - 1);
    report.check(
        "orthogonal to b_1",
        c.orthogonal_to_b1 == want1,
        json!({"count": c.orthogonal_to_b1, "expected": want1}),
    );
    report.check(
        "orthogonal to b_m",
        c.orthogonal_to_bm == want_m,
        json!({"count": c.orthogonal_to_bm, "expected": want_m}),
    );
    let failure = c.failure.as_ref();
    let check = report.check(
        "statistics are not constant",
        failure.is_some_and(|f| f.name == "f-constancy"),
        json!(failure.map(|f| &f.name)),
    );
    if let Some(w) = failure.and_then(|f| f.witness.as_ref()) {
        check.witness(w);
    }
    Ok(report)
}

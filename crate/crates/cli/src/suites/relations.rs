//! Relation systems, integrality scans, profile cross-checks and the degree
//! bound.

use serde_json::{json, Value};
use spschur::relations::{
    cross_check_profiles, dye_bound, integrality_scan, so_closed_form, solve_case, CaseSolution, Family, Verdict,
};

use crate::params::{param_map, CliError, CliResult, Params, Range};
use crate::report::{big, bigint, Report};

const ORTHOGONAL: [Family; 2] = [Family::SOplus, Family::SOminus];

fn orthogonal_families(params: &Params) -> CliResult<Vec<Family>> {
    match params.family()? {
        None => Ok(ORTHOGONAL.to_vec()),
        Some(f) if ORTHOGONAL.contains(&f) => Ok(vec![f]),
        Some(f) => Err(CliError::InvalidParams(format!("{f} has no closed-form profile"))),
    }
}

fn family_names(fs: &[Family]) -> Value {
    json!(fs.iter().map(|f| f.name()).collect::<Vec<_>>())
}

fn even_range(r: Range) -> CliResult<Range> {
    if r.lo < 6 || r.hi > spschur::relations::SCAN_MAX_N {
        return Err(CliError::InvalidParams(format!(
            "n range {}..{} outside 6..{}",
            r.lo,
            r.hi,
            spschur::relations::SCAN_MAX_N
        )));
    }
    Ok(r)
}

pub fn relations_solve(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["family", "range"])?;
    let families = orthogonal_families(params)?;
    let range = even_range(params.range_or(6, 40))?;
    let mut report = Report::new(
        id,
        anchor,
        param_map([("family", family_names(&families)), ("n", json!([range.lo, range.hi])), ("r", json!(2))]),
    );
    for f in families {
        let mut bad = None;
        let mut cases = 0;
        for n in (range.lo..=range.hi).filter(|n| n % 2 == 0) {
            let s = solve_case(f, 2, n)?;
            cases += 1;
            let total = &s.system.a3 + &s.system.b3;
            let ok = s.verdict == Verdict::Feasible
                && s.profile_values() == so_closed_form(f, n)
                && total == (num_bigint::BigInt::from(1) << n) - 1;
            if !ok && bad.is_none() {
                bad = Some(n);
            }
        }
        let first = solve_case(f, 2, range.lo)?.profile_values().map(|p| {
            json!({
                "n": range.lo,
                "a": p.a.iter().map(bigint).collect::<Vec<_>>(),
                "b": p.b.iter().map(bigint).collect::<Vec<_>>(),
                "lambda1": bigint(&p.lambda1),
                "lambda2": bigint(&p.lambda2),
            })
        });
        let check = report.check(
            format!("{f} matches closed forms"),
            bad.is_none(),
            json!({"cases": cases, "first": first}),
        );
        if let Some(n) = bad {
            check.witness(format!("n = {n}"));
        }
    }
    Ok(report)
}

fn row_json(n: usize, s: &CaseSolution) -> Value {
    let cert = s.certificate.as_ref();
    let (verdict, value) = match &s.verdict {
        Verdict::Feasible => ("feasible", None),
        Verdict::Infeasible { value, .. } => ("infeasible", Some(value.clone())),
        Verdict::Underdetermined { .. } => ("underdetermined", None),
    };
    json!({
        "n": n,
        "verdict": verdict,
        "value": value,
        "kernel_dim": s.kernel_dim,
        "variable": cert.map(|c| c.variable.clone()),
        "numerator": cert.map(|c| c.numerator.clone()),
        "denominator": cert.map(|c| c.denominator.clone()),
        "residue": cert.map(|c| c.residue.clone()),
        "half_integer_residue": cert.map(|c| c.half_integer_residue.clone()),
    })
}

/// Least `n` from which infeasibility is asserted.
fn asserted_from(family: Family, r: usize) -> usize {
    match (family, r) {
        (Family::SymNplus1, 2) => 8,
        (Family::SymNplus2, 2) => 14,
        _ => 6,
    }
}

/// Runs the scan and adds one check for the asserted range and one record
/// for smaller `n`.
fn scan_into(report: &mut Report, family: Family, r: usize, range: Range) -> CliResult<()> {
    let rows = integrality_scan(family, r, range.lo, range.hi)?;
    let from = asserted_from(family, r);
    let (small, asserted): (Vec<_>, Vec<_>) = rows.iter().partition(|row| row.n < from);
    let name = format!("{family} r={r}");
    if !small.is_empty() {
        let values: Vec<_> = small.iter().map(|row| row_json(row.n, &row.solution)).collect();
        report.record(format!("{name} below n={from}"), json!({"rows": values}));
    }
    if asserted.is_empty() {
        return Ok(());
    }
    let feasible = asserted
        .iter()
        .find(|row| !matches!(row.solution.verdict, Verdict::Infeasible { .. }));
    let values: Vec<_> = asserted.iter().map(|row| row_json(row.n, &row.solution)).collect();
    let check = report.check(format!("{name} infeasible"), feasible.is_none(), json!({"rows": values}));
    if let Some(row) = feasible {
        check.witness(format!("n = {}", row.n));
    }
    Ok(())
}

pub fn relations_scan(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["family", "range", "r"])?;
    let explicit = params.family.is_some() || params.range.is_some() || params.r.is_some();
    let scans: Vec<(Family, usize, Range)> = if explicit {
        let r = params.r.unwrap_or(2);
        if r != 2 && r != 3 {
            return Err(CliError::InvalidParams(format!("r = {r} must be 2 or 3")));
        }
        let families = match params.family()? {
            Some(f) => vec![f],
            None => Family::ALL.to_vec(),
        };
        let range = even_range(params.range_or(6, 64))?;
        families.into_iter().map(|f| (f, r, range)).collect()
    } else {
        let mut v = vec![
            (Family::SymNplus1, 2, Range { lo: 8, hi: 64 }),
            (Family::SymNplus2, 2, Range { lo: 8, hi: 64 }),
        ];
        v.extend(Family::ALL.map(|f| (f, 3, Range { lo: 6, hi: 64 })));
        v
    };
    let described: Vec<_> = scans
        .iter()
        .map(|(f, r, range)| json!({"family": f.name(), "r": r, "n": [range.lo, range.hi]}))
        .collect();
    let mut report = Report::new(id, anchor, param_map([("scans", json!(described))]));
    for (f, r, range) in scans {
        if ORTHOGONAL.contains(&f) && r == 2 {
            return Err(CliError::InvalidParams(format!("{f} with r = 2 is feasible; use relations-solve")));
        }
        scan_into(&mut report, f, r, range)?;
    }
    Ok(report)
}

pub fn relations_cross_check(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["family", "n"])?;
    let families = orthogonal_families(params)?;
    let ns = match params.n {
        Some(_) => vec![params.n_in(6, 4, 10)?],
        None => vec![6, 8, 10],
    };
    let mut report = Report::new(
        id,
        anchor,
        param_map([("family", family_names(&families)), ("n", json!(ns))]),
    );
    for f in families {
        for &n in &ns {
            let c = cross_check_profiles(f, n)?;
            let values = c.geometric().map(|p| {
                json!({
                    "a": p.a.iter().map(bigint).collect::<Vec<_>>(),
                    "b": p.b.iter().map(bigint).collect::<Vec<_>>(),
                    "lambda1": bigint(&p.lambda1),
                    "lambda2": bigint(&p.lambda2),
                })
            });
            report.check(format!("{f} n={n}"), c.agrees(), json!(values));
        }
    }
    Ok(report)
}

pub fn dye(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["range"])?;
    let range = params.range_or(2, 20);
    if range.lo < 2 || range.hi > 64 {
        return Err(CliError::InvalidParams("m must lie in 2..64".into()));
    }
    let mut report = Report::new(id, anchor, param_map([("m", json!([range.lo, range.hi]))]));
    let mut rows = Vec::new();
    let mut bad = None;
    for m in range.lo..=range.hi {
        let row = dye_bound(m as u32);
        let values = json!({"m": m, "lhs": big(&row.lhs), "rhs": big(&row.rhs), "holds": row.holds});
        if m <= 3 {
            report.record(format!("m={m}"), values);
            continue;
        }
        rows.push(values);
        if !row.holds && bad.is_none() {
            bad = Some(m);
        }
    }
    if range.hi >= 4 {
        let check = report.check("bound holds for m > 3", bad.is_none(), json!({"rows": rows}));
        if let Some(m) = bad {
            check.witness(format!("m = {m}"));
        }
    }
    Ok(report)
}

//! Orthogonal transvection counts and the `n_(eps, delta)` recursion.

use num_bigint::BigInt;
use serde_json::json;
use spschur::ortho::{
    characteristic_polynomial, f4_of_so, k_closed_form, k_power_apply, n_eps_delta, path_basis,
    so_transvection_count, QuadForm, Sign, EXPECTED_CHAR_POLY, K_MATRIX,
};
use spschur::Gf2Vector;

use crate::params::{param_map, CliError, CliResult, Params};
use crate::report::{bigint, Report};

/// Counts at `n = 8` that start the recursion.
const K_START: [i64; 5] = [31, 31, 32, 32, 1];

pub fn so_counts(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(8, 4, 12)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    for (alpha, sign, name) in [(false, Sign::Plus, "so-plus"), (true, Sign::Minus, "so-minus")] {
        let q = QuadForm::standard(n, alpha)?;
        let enumerated = Gf2Vector::nonzero(n)?.filter(|v| q.eval(*v)).count() as u64;
        let formula = so_transvection_count(n, sign);
        report.check(
            format!("{name} transvections"),
            enumerated == formula && q.sign() == sign,
            json!({"enumerated": enumerated, "formula": formula}),
        );
        let expected = (1u64 << (n - 2)) - 1;
        let f4 = f4_of_so(&q)?;
        let values = match &f4 {
            Ok(v) => json!({"f4": v, "formula": expected}),
            Err(_) => json!({"f4": null, "formula": expected}),
        };
        let name = format!("{name} f4");
        if n >= 8 {
            let check = report.check(name, f4 == Ok(expected), values);
            if let Err(p) = f4 {
                check.witness(format!("{p:?}"));
            }
        } else {
            report.record(name, values);
        }
    }
    Ok(report)
}

pub fn k_recursion(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n", "range"])?;
    let range = params.range_or(0, 12);
    if range.hi > 64 {
        return Err(CliError::InvalidParams("m is limited to 64".into()));
    }
    let n = params.n_in(8, 8, 12)?;
    let mut report = Report::new(
        id,
        anchor,
        param_map([("n", json!(n)), ("m", json!([range.lo, range.hi]))]),
    );
    let poly = characteristic_polynomial(&K_MATRIX);
    report.check("characteristic polynomial", poly == EXPECTED_CHAR_POLY, json!(poly));
    let mut first_bad = None;
    for m in range.lo..=range.hi {
        if k_power_apply(m as u32, &K_START) != k_closed_form(m as u32) && first_bad.is_none() {
            first_bad = Some(m);
        }
    }
    let top = k_closed_form(range.hi as u32);
    let check = report.check(
        "closed form of K^m",
        first_bad.is_none(),
        json!({"last": top.iter().map(bigint).collect::<Vec<_>>()}),
    );
    if let Some(m) = first_bad {
        check.witness(format!("m = {m}"));
    }
    let direct = n_eps_delta(&path_basis(n, n)?)?;
    let want = k_closed_form(((n - 8) / 2) as u32);
    report.check(
        "direct counts",
        (0..4).all(|i| BigInt::from(direct[i]) == want[i]),
        json!({"direct": direct, "recursion": want[..4].iter().map(bigint).collect::<Vec<_>>()}),
    );
    Ok(report)
}

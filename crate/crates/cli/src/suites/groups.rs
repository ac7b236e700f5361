//! Class sizes, the square of the transvection class, and three-factor
//! products equal to one transvection.

use std::collections::BTreeSet;

use serde_json::json;
use spschur::cases::{three_to_one_brute_force, three_to_one_families};
use spschur::factorize::{enumerate, FactorQuery};
use spschur::spgroup::class_sizes;
use spschur::subgroups::{close_generators, SubgroupSpec, MAX_GELFAND_ORDER};
use spschur::{ClassTag, Gf2Vector, Multiset, SpElement};

use crate::params::{param_map, CliResult, Params};
use crate::report::{big, Report};

struct Pairs {
    tt0: BTreeSet<SpElement>,
    tt1: BTreeSet<SpElement>,
    zero_triangles: u64,
}

/// Every product `t_a t_b` with `a != b`, split by `a . b`.
fn enumerate_pairs(n: usize) -> CliResult<Pairs> {
    let all: Vec<_> = Gf2Vector::nonzero(n)?.collect();
    let mut p = Pairs { tt0: BTreeSet::new(), tt1: BTreeSet::new(), zero_triangles: 0 };
    for &a in &all {
        for &b in &all {
            if a == b {
                continue;
            }
            let g = SpElement::transvection(a) * SpElement::transvection(b);
            if a.dot(b) {
                p.tt1.insert(g);
                if a.bits() < b.bits() && b.bits() < (a + b).bits() {
                    p.zero_triangles += 1;
                }
            } else {
                p.tt0.insert(g);
            }
        }
    }
    Ok(p)
}

pub fn class_sizes_suite(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(4, 2, 8)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    let sizes = class_sizes(n)?;
    let pairs = enumerate_pairs(n)?;
    let transvections = Gf2Vector::nonzero(n)?.count();
    report.check(
        "transvections",
        sizes.transvections == transvections.into(),
        json!({"formula": big(&sizes.transvections), "enumerated": transvections}),
    );
    report.check(
        "tt0 class",
        sizes.tt0 == pairs.tt0.len().into(),
        json!({"formula": big(&sizes.tt0), "enumerated": pairs.tt0.len()}),
    );
    report.check(
        "tt1 class",
        sizes.tt1 == pairs.tt1.len().into(),
        json!({"formula": big(&sizes.tt1), "enumerated": pairs.tt1.len()}),
    );
    report.check(
        "zero triangles",
        sizes.zero_triangles == pairs.zero_triangles.into(),
        json!({"formula": big(&sizes.zero_triangles), "enumerated": pairs.zero_triangles}),
    );
    let misfiled = pairs
        .tt0
        .iter()
        .find(|g| g.class_tag() != ClassTag::TT0)
        .or_else(|| pairs.tt1.iter().find(|g| g.class_tag() != ClassTag::TT1));
    let split = pairs.tt0.is_disjoint(&pairs.tt1) && misfiled.is_none();
    let c = report.check("tt0/tt1 split", split, json!({"tt0": pairs.tt0.len(), "tt1": pairs.tt1.len()}));
    if let Some(g) = misfiled {
        c.witness(g.serialize());
    }
    match close_generators(&SubgroupSpec::full(n)?, MAX_GELFAND_ORDER) {
        Ok(group) => {
            report.check(
                "group order",
                sizes.group_order == group.len().into(),
                json!({"formula": big(&sizes.group_order), "enumerated": group.len()}),
            );
        }
        Err(spschur::Error::CapExceeded(_)) => {
            report.record("group order", json!({"formula": big(&sizes.group_order)}));
        }
        Err(e) => return Err(e.into()),
    }
    report.record(
        "sizes",
        json!([
            big(&sizes.transvections),
            big(&sizes.tt0),
            big(&sizes.tt1),
            big(&sizes.zero_triangles),
            big(&sizes.group_order)
        ]),
    );
    Ok(report)
}

pub fn class_square(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(4, 2, 8)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    let t = Multiset::transvection_class(n)?;
    let sq = t.convolve(&t)?;
    let pairs = enumerate_pairs(n)?;
    let id_el = SpElement::identity(n)?;
    let t_size = (1u64 << n) - 1;
    report.check(
        "identity coefficient",
        sq.coefficient_u64(&id_el) == t_size,
        json!({"coefficient": sq.coefficient_u64(&id_el), "expected": t_size}),
    );
    for (name, class, coef) in [("tt0 coefficients", &pairs.tt0, 2), ("tt1 coefficients", &pairs.tt1, 3)] {
        let bad = class.iter().find(|g| sq.coefficient_u64(g) != coef);
        let c = report.check(name, bad.is_none(), json!({"elements": class.len(), "expected": coef}));
        if let Some(g) = bad {
            c.witness(g.serialize());
        }
    }
    let stray = sq
        .support()
        .find(|g| **g != id_el && !pairs.tt0.contains(g) && !pairs.tt1.contains(g));
    let c = report.check("no other support", stray.is_none(), json!({"support": sq.support_len()}));
    if let Some(g) = stray {
        c.witness(g.serialize());
    }
    Ok(report)
}

pub fn three_to_one(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["n"])?;
    let n = params.n_in(4, 2, 6)?;
    let mut report = Report::new(id, anchor, param_map([("n", json!(n))]));
    let mut total = 0;
    let mut mismatch = None;
    for a in Gf2Vector::nonzero(n)? {
        let fam = three_to_one_families(a)?;
        let brute = three_to_one_brute_force(a)?;
        let found: BTreeSet<_> = enumerate(&FactorQuery::new(SpElement::transvection(a), 3))?.into_iter().collect();
        total += fam.len();
        if mismatch.is_none() && (fam != brute || found != brute) {
            mismatch = Some(a);
        }
    }
    let targets = (1usize << n) - 1;
    let c = report.check(
        "families match brute force",
        mismatch.is_none(),
        json!({"targets": targets, "solutions": total}),
    );
    if let Some(a) = mismatch {
        c.witness(a);
    }
    Ok(report)
}

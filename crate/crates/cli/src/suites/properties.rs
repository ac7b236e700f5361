//! Seeded randomized checks of the algebraic invariants.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use spschur::factorize::{enumerate, FactorQuery};
use spschur::ortho::QuadForm;
use spschur::{Gf2Vector, Multiset, SpElement, Subspace};

use crate::params::{param_map, CliResult, Params};
use crate::report::Report;

const CONVOLUTION_TRIALS: usize = 200;
const LINEAR_TRIALS: usize = 200;
const ARF_BASES: usize = 20;
const FACTOR_TARGETS: usize = 50;

fn vector(rng: &mut ChaCha8Rng, n: usize) -> Gf2Vector {
    Gf2Vector::new(n, rng.gen_range(1..1u32 << n)).expect("nonzero word fits")
}

fn element(rng: &mut ChaCha8Rng, n: usize) -> SpElement {
    let k = rng.gen_range(0..12);
    let vs: Vec<_> = (0..k).map(|_| vector(rng, n)).collect();
    SpElement::product_of_transvections(n, &vs).expect("valid dimension")
}

fn multiset(rng: &mut ChaCha8Rng, n: usize) -> CliResult<Multiset> {
    let mut m = Multiset::empty(n)?;
    for _ in 0..rng.gen_range(1..6) {
        let g = element(rng, n);
        m.add_term(g, BigUint::from(rng.gen_range(1u32..4)))?;
    }
    Ok(m)
}

/// Index of the first failing trial.
fn first_failure(trials: usize, mut ok: impl FnMut(usize) -> CliResult<bool>) -> CliResult<Option<usize>> {
    for i in 0..trials {
        if !ok(i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn add(report: &mut Report, name: &str, trials: usize, failure: Option<usize>) {
    let check = report.check(name, failure.is_none(), json!({"trials": trials}));
    if let Some(i) = failure {
        check.witness(format!("trial {i}"));
    }
}

/// Every `k`-tuple of nonzero vectors whose transvection product is `target`.
fn brute_force(target: &SpElement, k: usize) -> CliResult<BTreeSet<Vec<Gf2Vector>>> {
    let n = target.dim();
    let all: Vec<_> = Gf2Vector::nonzero(n)?.collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let t: Vec<_> = idx.iter().map(|&i| all[i]).collect();
        if SpElement::product_of_transvections(n, &t)? == *target {
            out.insert(t);
        }
        let Some(p) = (0..k).rev().find(|&p| idx[p] + 1 < all.len()) else {
            return Ok(out);
        };
        idx[p] += 1;
        idx[p + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

pub fn properties(id: &str, anchor: &str, params: &Params) -> CliResult<Report> {
    params.only(&["seed"])?;
    let seed = params.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(id, anchor, param_map([("seed", json!(seed))]));
    let n = 4;

    let f = first_failure(CONVOLUTION_TRIALS, |_| {
        let (a, b, c) = (multiset(&mut rng, n)?, multiset(&mut rng, n)?, multiset(&mut rng, n)?);
        Ok(a.convolve(&b)?.convolve(&c)? == a.convolve(&b.convolve(&c)?)?)
    })?;
    add(&mut report, "convolution is associative", CONVOLUTION_TRIALS, f);

    let f = first_failure(CONVOLUTION_TRIALS, |_| {
        let (a, b) = (multiset(&mut rng, n)?, multiset(&mut rng, n)?);
        Ok(a.convolve(&b)?.mass() == a.mass() * b.mass())
    })?;
    add(&mut report, "convolution multiplies mass", CONVOLUTION_TRIALS, f);

    let f = first_failure(CONVOLUTION_TRIALS, |_| {
        let (a, b, g) = (multiset(&mut rng, n)?, multiset(&mut rng, n)?, element(&mut rng, n));
        Ok(a.convolve(&b)?.conjugate(&g)? == a.conjugate(&g)?.convolve(&b.conjugate(&g)?)?)
    })?;
    add(&mut report, "convolution commutes with conjugation", CONVOLUTION_TRIALS, f);

    let f = first_failure(LINEAR_TRIALS, |_| {
        let dim = 2 * rng.gen_range(1..=5);
        let k = rng.gen_range(0..dim);
        let u = Subspace::span(dim, (0..k).map(|_| vector(&mut rng, dim)).collect::<Vec<_>>())?;
        let p = u.perp();
        Ok(u.rank() + p.rank() == dim && p.perp() == u)
    })?;
    add(&mut report, "perp is an involution", LINEAR_TRIALS, f);

    let f = first_failure(LINEAR_TRIALS, |_| {
        let dim = 2 * rng.gen_range(1..=5);
        let q = QuadForm::from_diagonal(dim, rng.gen_range(0..1u32 << dim))?;
        let (u, v) = (vector(&mut rng, dim), vector(&mut rng, dim));
        Ok(q.eval(u + v) == q.eval(u) ^ q.eval(v) ^ u.dot(v))
    })?;
    add(&mut report, "polarization identity", LINEAR_TRIALS, f);

    let f = first_failure(ARF_BASES, |_| {
        let dim = 2 * rng.gen_range(1..=4);
        let q = QuadForm::from_diagonal(dim, rng.gen_range(0..1u32 << dim))?;
        let g = element(&mut rng, dim);
        let basis: Vec<_> = (1..=dim / 2)
            .flat_map(|i| [i, dim + 1 - i])
            .map(|i| Gf2Vector::basis(dim, i).map(|e| g.apply(e)))
            .collect::<spschur::Result<_>>()?;
        Ok(q.arf_over(&basis) == q.arf())
    })?;
    add(&mut report, "Arf invariant is basis independent", ARF_BASES, f);

    let f = first_failure(FACTOR_TARGETS, |_| {
        let k = rng.gen_range(1..=3);
        let vs: Vec<_> = (0..k).map(|_| vector(&mut rng, n)).collect();
        let target = SpElement::product_of_transvections(n, &vs)?;
        let found: BTreeSet<_> = enumerate(&FactorQuery::new(target, k))?.into_iter().collect();
        Ok(found == brute_force(&target, k)?)
    })?;
    add(&mut report, "factorization search is complete", FACTOR_TARGETS, f);

    Ok(report)
}

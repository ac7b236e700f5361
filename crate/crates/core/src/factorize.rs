//! Factorizations of a group element into products of transvections.
//!
//! Any factorization `A = t_{v_1} ... t_{v_k}` has `Span{vA - v}` inside
//! `Span(v_1, ..., v_k)`. The search keeps the prefix span joined with that
//! space at dimension at most `k`, solves the last factor directly, and
//! switches to a meet-in-the-middle join when every factor is forced into a
//! space of dimension exactly `k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galg::Multiset;
use crate::gf2::{Gf2Vector, Subspace};
use crate::spgroup::SpElement;

/// Longest factorization the search accepts.
pub const MAX_LENGTH: usize = 6;

/// Estimated product count above which a forced-span search is split in two.
const MITM_THRESHOLD: f64 = 2.0e6;

/// `Span{ vA - v }`.
pub fn support_span(a: &SpElement) -> Subspace {
    Subspace::span(a.dim(), a.displacement_words()).expect("element has valid dimension")
}

/// Relation between two members of a block `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `a . b = 1` and `a + b` in `C`.
    F1,
    /// `a . b = 1` and `a + b` not in `C`.
    F2,
    /// `a . b = 0` and `a != b`.
    F4,
}

/// Predicate on factor positions (0-based). Sets are referenced by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Constraint {
    Member { position: usize, set: String },
    NotMember { position: usize, set: String },
    /// Both positions lie in `set` and form a pair of the given kind.
    PairType { first: usize, second: usize, set: String, pair: PairKind },
    Orthogonal { first: usize, second: usize },
    Meeting { first: usize, second: usize },
    /// One position lies in `left` and the other in `right`, in either order.
    EitherOrder { first: usize, second: usize, left: String, right: String },
}

impl Constraint {
    fn positions(&self) -> (usize, usize) {
        match self {
            Constraint::Member { position, .. } | Constraint::NotMember { position, .. } => {
                (*position, *position)
            }
            Constraint::PairType { first, second, .. }
            | Constraint::Orthogonal { first, second }
            | Constraint::Meeting { first, second }
            | Constraint::EitherOrder { first, second, .. } => (*first, *second),
        }
    }

    fn sets(&self) -> Vec<&str> {
        match self {
            Constraint::Member { set, .. }
            | Constraint::NotMember { set, .. }
            | Constraint::PairType { set, .. } => vec![set.as_str()],
            Constraint::EitherOrder { left, right, .. } => vec![left.as_str(), right.as_str()],
            _ => vec![],
        }
    }

    fn holds(&self, tuple: &[Gf2Vector], sets: &BTreeMap<String, BTreeSet<Gf2Vector>>) -> bool {
        let has = |name: &str, v: Gf2Vector| sets[name].contains(&v);
        match self {
            Constraint::Member { position, set } => has(set, tuple[*position]),
            Constraint::NotMember { position, set } => !has(set, tuple[*position]),
            Constraint::PairType {
                first,
                second,
                set,
                pair,
            } => {
                let (a, b) = (tuple[*first], tuple[*second]);
                if !has(set, a) || !has(set, b) || a == b {
                    return false;
                }
                match pair {
                    PairKind::F1 => a.dot(b) && has(set, a + b),
                    PairKind::F2 => a.dot(b) && !has(set, a + b),
                    PairKind::F4 => !a.dot(b),
                }
            }
            Constraint::Orthogonal { first, second } => !tuple[*first].dot(tuple[*second]),
            Constraint::Meeting { first, second } => tuple[*first].dot(tuple[*second]),
            Constraint::EitherOrder {
                first,
                second,
                left,
                right,
            } => {
                let (a, b) = (tuple[*first], tuple[*second]);
                (has(left, a) && has(right, b)) || (has(right, a) && has(left, b))
            }
        }
    }
}

/// A factorization request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorQuery {
    pub target: SpElement,
    pub length: usize,
    /// Restricts every factor to this set when present.
    pub allowed: Option<BTreeSet<Gf2Vector>>,
    pub sets: BTreeMap<String, BTreeSet<Gf2Vector>>,
    pub constraints: Vec<Constraint>,
}

impl FactorQuery {
    /// An unconstrained query.
    pub fn new(target: SpElement, length: usize) -> Self {
        FactorQuery {
            target,
            length,
            allowed: None,
            sets: BTreeMap::new(),
            constraints: Vec::new(),
        }
    }

    pub fn with_set(mut self, name: &str, vectors: impl IntoIterator<Item = Gf2Vector>) -> Self {
        self.sets.insert(name.to_string(), vectors.into_iter().collect());
        self
    }

    pub fn with_constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.target.dim();
        if self.length == 0 || self.length > MAX_LENGTH {
            return Err(Error::InvalidQuery(format!(
                "length {} outside 1..={MAX_LENGTH}",
                self.length
            )));
        }
        let all = self
            .sets
            .values()
            .flatten()
            .chain(self.allowed.iter().flatten());
        for v in all {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: v.dim(),
                });
            }
        }
        if self.allowed.iter().flatten().any(|v| v.is_zero()) {
            return Err(Error::InvalidQuery("allowed vectors must be nonzero".into()));
        }
        for c in &self.constraints {
            let (p, q) = c.positions();
            if p >= self.length || q >= self.length {
                return Err(Error::InvalidQuery(format!(
                    "constraint {c:?} refers past length {}",
                    self.length
                )));
            }
            if let Some(name) = c.sets().into_iter().find(|s| !self.sets.contains_key(*s)) {
                return Err(Error::InvalidQuery(format!("unknown set {name:?}")));
            }
        }
        Ok(())
    }

    /// Candidate vectors for each position after single-position filters.
    fn candidates(&self) -> Vec<Vec<Gf2Vector>> {
        let n = self.target.dim();
        let base: Vec<Gf2Vector> = match &self.allowed {
            Some(a) => a.iter().copied().collect(),
            None => Gf2Vector::nonzero(n).expect("valid dimension").collect(),
        };
        (0..self.length)
            .map(|pos| {
                base.iter()
                    .copied()
                    .filter(|&v| {
                        self.constraints.iter().all(|c| match c {
                            Constraint::Member { position, set } if *position == pos => {
                                self.sets[set].contains(&v)
                            }
                            Constraint::NotMember { position, set } if *position == pos => {
                                !self.sets[set].contains(&v)
                            }
                            Constraint::PairType {
                                first, second, set, ..
                            } if *first == pos || *second == pos => self.sets[set].contains(&v),
                            _ => true,
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Constraints grouped by the last position they involve.
    fn checks_by_position(&self) -> Vec<Vec<&Constraint>> {
        let mut out = vec![Vec::new(); self.length];
        for c in &self.constraints {
            let (p, q) = c.positions();
            out[p.max(q)].push(c);
        }
        out
    }
}

struct Search<'a> {
    q: &'a FactorQuery,
    cands: Vec<Vec<Gf2Vector>>,
    last_ok: BTreeSet<Gf2Vector>,
    checks: Vec<Vec<&'a Constraint>>,
    support: Subspace,
}

impl<'a> Search<'a> {
    fn new(q: &'a FactorQuery) -> Self {
        let cands = q.candidates();
        let last_ok = cands[q.length - 1].iter().copied().collect();
        Search {
            q,
            cands,
            last_ok,
            checks: q.checks_by_position(),
            support: support_span(&q.target),
        }
    }

    fn prefix_ok(&self, tuple: &[Gf2Vector]) -> bool {
        self.checks[tuple.len() - 1]
            .iter()
            .all(|c| c.holds(tuple, &self.q.sets))
    }

    /// Depth-first search from a prefix; `span` already contains the support.
    fn dfs(
        &self,
        tuple: &mut Vec<Gf2Vector>,
        prod: SpElement,
        span: &Subspace,
        limit: Option<usize>,
        out: &mut Vec<Vec<Gf2Vector>>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let k = self.q.length;
        if tuple.len() == k - 1 {
            let rest = prod.inverse() * self.q.target;
            if let Some(v) = rest.as_transvection() {
                if self.last_ok.contains(&v) {
                    tuple.push(v);
                    if self.prefix_ok(tuple) {
                        out.push(tuple.clone());
                    }
                    tuple.pop();
                }
            }
            return;
        }
        let full = span.rank() == k;
        for &v in &self.cands[tuple.len()] {
            if full && !span.contains(v) {
                continue;
            }
            tuple.push(v);
            if self.prefix_ok(tuple) {
                let mut next = span.clone();
                next.insert(v);
                self.dfs(tuple, prod * SpElement::transvection(v), &next, limit, out);
            }
            tuple.pop();
        }
    }

    fn run_dfs(&self, limit: Option<usize>) -> Vec<Vec<Gf2Vector>> {
        let k = self.q.length;
        let id = SpElement::identity(self.q.target.dim()).expect("valid dimension");
        if k == 1 {
            let mut out = Vec::new();
            self.dfs(&mut Vec::new(), id, &self.support, limit, &mut out);
            return out;
        }
        let full = self.support.rank() == k;
        let firsts: Vec<Gf2Vector> = self.cands[0]
            .iter()
            .copied()
            .filter(|&v| !full || self.support.contains(v))
            .collect();
        let parts: Vec<Vec<Vec<Gf2Vector>>> = firsts
            .par_iter()
            .map(|&v| {
                let mut out = Vec::new();
                let mut tuple = vec![v];
                if self.prefix_ok(&tuple) {
                    let mut span = self.support.clone();
                    span.insert(v);
                    self.dfs(&mut tuple, SpElement::transvection(v), &span, limit, &mut out);
                }
                out
            })
            .collect();
        let mut out: Vec<Vec<Gf2Vector>> = parts.into_iter().flatten().collect();
        if let Some(l) = limit {
            out.truncate(l);
        }
        out
    }

    fn half_products(&self, positions: std::ops::Range<usize>) -> Vec<(SpElement, Vec<Gf2Vector>)> {
        let n = self.q.target.dim();
        let mut acc = vec![(SpElement::identity(n).expect("valid dimension"), Vec::new())];
        for pos in positions {
            let pool: Vec<Gf2Vector> = self.cands[pos]
                .iter()
                .copied()
                .filter(|&v| self.support.contains(v))
                .collect();
            let mut next = Vec::with_capacity(acc.len() * pool.len());
            for (g, t) in &acc {
                for &v in &pool {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push((*g * SpElement::transvection(v), t2));
                }
            }
            acc = next;
        }
        acc
    }

    /// Join of left and right halves when all factors lie in the support.
    fn run_mitm(&self) -> Vec<Vec<Gf2Vector>> {
        let k = self.q.length;
        let h = k / 2;
        let left = self.half_products(0..h);
        let right = self.half_products(h..k);
        let mut index: HashMap<SpElement, Vec<usize>> = HashMap::with_capacity(right.len());
        for (i, (g, _)) in right.iter().enumerate() {
            index.entry(*g).or_default().push(i);
        }
        let right = &right;
        let index = &index;
        left.par_iter()
            .flat_map_iter(|(g, lt)| {
                let need = g.inverse() * self.q.target;
                let hits = index.get(&need).cloned().unwrap_or_default();
                hits.into_iter().filter_map(move |i| {
                    let mut t = lt.clone();
                    t.extend_from_slice(&right[i].1);
                    self.q
                        .constraints
                        .iter()
                        .all(|c| c.holds(&t, &self.q.sets))
                        .then_some(t)
                })
            })
            .collect()
    }

    fn use_mitm(&self) -> bool {
        let k = self.q.length;
        if self.support.rank() != k || k < 4 {
            return false;
        }
        let pool = ((1u64 << k) - 1) as f64;
        pool.powi(k as i32 - 1) > MITM_THRESHOLD
    }
}

/// All tuples `(v_1, ..., v_k)` with `t_{v_1} ... t_{v_k} = target` that
/// satisfy the query, in lexicographic order.
pub fn enumerate(q: &FactorQuery) -> Result<Vec<Vec<Gf2Vector>>> {
    q.validate()?;
    let s = Search::new(q);
    if s.support.rank() > q.length {
        return Ok(Vec::new());
    }
    let mut out = if s.use_mitm() { s.run_mitm() } else { s.run_dfs(None) };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether at least one factorization satisfies the query.
pub fn exists(q: &FactorQuery) -> Result<bool> {
    q.validate()?;
    let s = Search::new(q);
    if s.support.rank() > q.length {
        return Ok(false);
    }
    Ok(if s.use_mitm() {
        !s.run_mitm().is_empty()
    } else {
        !s.run_dfs(Some(1)).is_empty()
    })
}

/// Outcome of a minimal-length search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinLength {
    Exact(usize),
    ExceedsCap(usize),
}

/// Least number of transvections whose product is `a`, up to `cap`.
pub fn min_length(a: &SpElement, cap: usize) -> Result<MinLength> {
    if cap > MAX_LENGTH {
        return Err(Error::InvalidQuery(format!("cap {cap} above {MAX_LENGTH}")));
    }
    if a.is_identity() {
        return Ok(MinLength::Exact(0));
    }
    let d = support_span(a).rank();
    for k in d.max(1)..=cap {
        if exists(&FactorQuery::new(*a, k))? {
            return Ok(MinLength::Exact(k));
        }
    }
    Ok(MinLength::ExceedsCap(cap))
}

/// Coefficients of `target` in `A * B` and in `B * A`, without forming the
/// products.
pub fn count_split(target: &SpElement, a: &Multiset, b: &Multiset) -> Result<(BigUint, BigUint)> {
    if a.dim() != b.dim() || a.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim().max(target.dim()),
        });
    }
    let side = |x: &Multiset, y: &Multiset| -> BigUint {
        x.iter()
            .map(|(g, c)| c * y.coefficient(&(g.inverse() * *target)))
            .sum()
    };
    Ok((side(a, b), side(b, a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, s: &str) -> Gf2Vector {
        Gf2Vector::parse(n, s).unwrap()
    }

    fn prod(n: usize, vs: &[&str]) -> SpElement {
        let vs: Vec<Gf2Vector> = vs.iter().map(|s| v(n, s)).collect();
        SpElement::product_of_transvections(n, &vs).unwrap()
    }

    #[test]
    fn support_spans() {
        let n = 6;
        assert_eq!(support_span(&SpElement::identity(n).unwrap()).rank(), 0);
        let a = prod(n, &["e2+e6", "e1", "e6"]);
        let want = Subspace::span(n, [v(n, "e1"), v(n, "e2"), v(n, "e6")]).unwrap();
        assert_eq!(support_span(&a), want);
    }

    #[test]
    fn product_of_meeting_pair_has_three_factorizations() {
        let n = 6;
        let (a, b) = (v(n, "e1+e3"), v(n, "e6"));
        let target = prod(n, &["e1+e3", "e6"]);
        let got = enumerate(&FactorQuery::new(target, 2)).unwrap();
        let mut want = vec![vec![a, b], vec![b, a + b], vec![a + b, a]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn min_lengths() {
        let n = 6;
        assert_eq!(
            min_length(&SpElement::identity(n).unwrap(), 6).unwrap(),
            MinLength::Exact(0)
        );
        assert_eq!(min_length(&prod(n, &["e1", "e6"]), 6).unwrap(), MinLength::Exact(2));
        assert_eq!(
            min_length(&prod(n, &["e1", "e6"]), 1).unwrap(),
            MinLength::ExceedsCap(1)
        );
    }

    #[test]
    fn mitm_agrees_with_dfs() {
        let n = 4;
        let target = prod(n, &["e1", "e2", "e3", "e4+e1"]);
        let q = FactorQuery::new(target, 4);
        let s = Search::new(&q);
        assert_eq!(s.support.rank(), 4);
        let mut a = s.run_mitm();
        let mut b = s.run_dfs(None);
        a.sort();
        b.sort();
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_queries() {
        let t = prod(4, &["e1"]);
        assert!(enumerate(&FactorQuery::new(t, 0)).is_err());
        assert!(enumerate(&FactorQuery::new(t, 7)).is_err());
        let q = FactorQuery::new(t, 2).with_constraint(Constraint::Member {
            position: 0,
            set: "C1".into(),
        });
        assert!(matches!(enumerate(&q), Err(Error::InvalidQuery(_))));
        let q = FactorQuery::new(t, 2).with_constraint(Constraint::Orthogonal { first: 0, second: 2 });
        assert!(enumerate(&q).is_err());
    }

    #[test]
    fn count_split_matches_full_products() {
        let n = 4;
        let a = Multiset::transvections(n, [v(n, "e1"), v(n, "e2"), v(n, "e1+e4")]).unwrap();
        let b = Multiset::transvection_class(n).unwrap();
        let ab = a.convolve(&b).unwrap();
        let ba = b.convolve(&a).unwrap();
        for (g, _) in ab.iter().take(20) {
            let (x, y) = count_split(g, &a, &b).unwrap();
            assert_eq!(x, ab.coefficient(g));
            assert_eq!(y, ba.coefficient(g));
        }
    }
}

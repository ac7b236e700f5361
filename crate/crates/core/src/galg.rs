//! Finitely supported multisets in the integral group algebra of `Sp(n, 2)`.
//!
//! Coefficients are arbitrary precision. Entries are kept in key order so
//! iteration, dumps and witnesses are deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHasher};

use crate::error::{Error, Result};
use crate::gf2::{check_dim, Gf2Vector};
use crate::spgroup::{ClassTag, SpElement};

/// Work size (outer times inner support) above which products run in parallel.
const PARALLEL_THRESHOLD: usize = 1 << 16;

/// An element of `Z[Sp(n, 2)]` with nonnegative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiset {
    dim: u8,
    entries: BTreeMap<SpElement, BigUint>,
}

impl Multiset {
    /// The zero element.
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Multiset {
            dim: dim as u8,
            entries: BTreeMap::new(),
        })
    }

    /// The identity with coefficient 1.
    pub fn unit(dim: usize) -> Result<Self> {
        Self::indicator(dim, [SpElement::identity(dim)?])
    }

    /// Coefficient 1 on every distinct element given.
    pub fn indicator(dim: usize, elements: impl IntoIterator<Item = SpElement>) -> Result<Self> {
        let mut m = Self::empty(dim)?;
        for g in elements {
            m.check(&g)?;
            m.entries.insert(g, BigUint::one());
        }
        Ok(m)
    }

    /// The indicator of `{t_v : v in vectors}`.
    pub fn transvections(dim: usize, vectors: impl IntoIterator<Item = Gf2Vector>) -> Result<Self> {
        let mut els = Vec::new();
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            if !v.is_zero() {
                els.push(SpElement::transvection(v));
            }
        }
        Self::indicator(dim, els)
    }

    /// The class sum of all transvections.
    pub fn transvection_class(dim: usize) -> Result<Self> {
        Self::transvections(dim, Gf2Vector::nonzero(dim)?)
    }

    fn check(&self, g: &SpElement) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: g.dim(),
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Adds `c` to the coefficient of `g`.
    pub fn add_term(&mut self, g: SpElement, c: BigUint) -> Result<()> {
        self.check(&g)?;
        if !c.is_zero() {
            *self.entries.entry(g).or_default() += c;
        }
        Ok(())
    }

    pub fn coefficient(&self, g: &SpElement) -> BigUint {
        self.entries.get(g).cloned().unwrap_or_default()
    }

    /// Coefficient as `u64`; panics if it does not fit.
    pub fn coefficient_u64(&self, g: &SpElement) -> u64 {
        self.coefficient(g).to_u64().expect("coefficient fits in u64")
    }

    pub fn contains(&self, g: &SpElement) -> bool {
        self.entries.contains_key(g)
    }

    /// Number of elements with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&SpElement, &BigUint)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &SpElement> {
        self.entries.keys()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Multiset) -> Result<Multiset> {
        let mut out = self.clone();
        for (g, c) in &other.entries {
            out.add_term(*g, c.clone())?;
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigUint) -> Multiset {
        let mut out = Multiset {
            dim: self.dim,
            entries: BTreeMap::new(),
        };
        if !k.is_zero() {
            out.entries = self.entries.iter().map(|(g, c)| (*g, c * k)).collect();
        }
        out
    }

    fn small_entries(&self) -> Option<Vec<(SpElement, u64)>> {
        self.entries.iter().map(|(g, c)| c.to_u64().map(|c| (*g, c))).collect()
    }

    /// The product `self * other` in the group algebra.
    pub fn convolve(&self, other: &Multiset) -> Result<Multiset> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        if let (Some(a), Some(b)) = (self.small_entries(), other.small_entries()) {
            if let Some(m) = convolve_small(self.dim(), &a, &b) {
                return Ok(m);
            }
        }
        Ok(self.convolve_big(other))
    }

    fn convolve_big(&self, other: &Multiset) -> Multiset {
        let a: Vec<(&SpElement, &BigUint)> = self.entries.iter().collect();
        let b: Vec<(&SpElement, &BigUint)> = other.entries.iter().collect();
        let mut acc: HashMap<SpElement, BigUint> = HashMap::new();
        for (x, cx) in &a {
            for (y, cy) in &b {
                *acc.entry(**x * **y).or_default() += *cx * *cy;
            }
        }
        Multiset {
            dim: self.dim,
            entries: acc.into_iter().collect(),
        }
    }

    /// The `n`-th power under convolution.
    pub fn power(&self, n: u32) -> Result<Multiset> {
        let mut acc = Multiset::unit(self.dim())?;
        for _ in 0..n {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }

    /// Elements whose coefficient equals `m`, as an indicator.
    pub fn filter_multiplicity(&self, m: u64) -> Multiset {
        let m = BigUint::from(m);
        Multiset {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(_, c)| **c == m)
                .map(|(g, _)| (*g, BigUint::one()))
                .collect(),
        }
    }

    /// Keeps the entries whose element has the given class tag.
    pub fn restrict_by_tag(&self, tag: ClassTag) -> Multiset {
        self.restrict(|g| g.class_tag() == tag)
    }

    /// Keeps the entries whose element satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&SpElement) -> bool) -> Multiset {
        Multiset {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (*g, c.clone()))
                .collect(),
        }
    }

    /// Same support with every coefficient set to 1.
    pub fn support_indicator(&self) -> Multiset {
        Multiset {
            dim: self.dim,
            entries: self.entries.keys().map(|g| (*g, BigUint::one())).collect(),
        }
    }

    /// The image under `x -> g^{-1} x g`.
    pub fn conjugate(&self, g: &SpElement) -> Result<Multiset> {
        self.check(g)?;
        let gi = g.inverse();
        Ok(Multiset {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(x, c)| (gi * *x * *g, c.clone()))
                .collect(),
        })
    }

    /// Map from coefficient value to the number of elements carrying it.
    pub fn spectrum(&self) -> BTreeMap<BigUint, usize> {
        let mut out = BTreeMap::new();
        for c in self.entries.values() {
            *out.entry(c.clone()).or_insert(0) += 1;
        }
        out
    }

    /// One line per element, `coefficient<TAB>element`, in key order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (g, c) in &self.entries {
            writeln!(s, "{c}\t{}", g.serialize()).expect("write to string");
        }
        s
    }

    /// Parses the output of [`Multiset::dump`].
    pub fn parse_dump(dim: usize, text: &str) -> Result<Multiset> {
        let mut m = Multiset::empty(dim)?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (c, g) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("missing tab in {line:?}")))?;
            let c: BigUint = c
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad coefficient {c:?}: {e}")))?;
            m.add_term(SpElement::parse(g)?, c)?;
        }
        Ok(m)
    }
}

/// Shards used to merge partial products in parallel.
const SHARDS: usize = 64;

fn shard_of<K: Hash>(k: &K) -> usize {
    let mut h = FxHasher::default();
    k.hash(&mut h);
    (h.finish() >> 58) as usize % SHARDS
}

/// Sums `cx * cy` over products keyed by `key(x * y)`; `None` on overflow.
fn accumulate<K, F>(outer: &[(SpElement, u64)], inner: &[(SpElement, u64)], key: F) -> Option<Vec<(K, u128)>>
where
    K: Hash + Eq + Copy + Send + Sync,
    F: Fn(SpElement, SpElement) -> K + Sync,
{
    let work = outer.len().saturating_mul(inner.len());
    let threads = rayon::current_num_threads();
    if work < PARALLEL_THRESHOLD || threads == 1 || outer.len() == 1 {
        let mut acc: FxHashMap<K, u128> = FxHashMap::default();
        acc.reserve(work.min(1 << 20));
        for &(x, cx) in outer {
            for &(y, cy) in inner {
                let slot = acc.entry(key(x, y)).or_insert(0);
                *slot = slot.checked_add(cx as u128 * cy as u128)?;
            }
        }
        return Some(acc.into_iter().collect());
    }
    let chunk = outer.len().div_ceil(threads * 4).max(1);
    let parts: Vec<Vec<FxHashMap<K, u128>>> = outer
        .par_chunks(chunk)
        .map(|chunk| {
            let mut shards: Vec<FxHashMap<K, u128>> = vec![FxHashMap::default(); SHARDS];
            for &(x, cx) in chunk {
                for &(y, cy) in inner {
                    let k = key(x, y);
                    let slot = shards[shard_of(&k)].entry(k).or_insert(0);
                    *slot = slot.checked_add(cx as u128 * cy as u128)?;
                }
            }
            Some(shards)
        })
        .collect::<Option<_>>()?;
    let merged: Vec<Vec<(K, u128)>> = (0..SHARDS)
        .into_par_iter()
        .map(|s| {
            let mut total: FxHashMap<K, u128> = FxHashMap::default();
            for part in &parts {
                for (k, v) in &part[s] {
                    let slot = total.entry(*k).or_insert(0);
                    *slot = slot.checked_add(*v)?;
                }
            }
            Some(total.into_iter().collect())
        })
        .collect::<Option<_>>()?;
    Some(merged.into_iter().flatten().collect())
}

fn convolve_small(dim: usize, a: &[(SpElement, u64)], b: &[(SpElement, u64)]) -> Option<Multiset> {
    // The smaller side is the outer loop; the key order of products does
    // not depend on it.
    let outer_is_a = a.len() <= b.len();
    let (outer, inner) = if outer_is_a { (a, b) } else { (b, a) };
    let product = move |x: SpElement, y: SpElement| if outer_is_a { x * y } else { y * x };
    let mut merged: Vec<(SpElement, u128)> = if dim * dim <= 128 {
        accumulate(outer, inner, |x, y| product(x, y).pack().expect("small dimension"))?
            .into_iter()
            .map(|(k, c)| (SpElement::unpack(dim, k), c))
            .collect()
    } else {
        accumulate(outer, inner, product)?
    };
    merged.par_sort_unstable_by(|x, y| x.0.cmp(&y.0));
    Some(Multiset {
        dim: dim as u8,
        entries: merged.into_iter().map(|(g, c)| (g, BigUint::from(c))).collect(),
    })
}

/// Whether `a * b = b * a`; otherwise the least element where they differ.
pub fn commutes(a: &Multiset, b: &Multiset) -> Result<std::result::Result<(), SpElement>> {
    let ab = a.convolve(b)?;
    let ba = b.convolve(a)?;
    Ok(match first_difference(&ab, &ba) {
        None => Ok(()),
        Some(g) => Err(g),
    })
}

/// Least key at which two multisets have different coefficients.
pub fn first_difference(x: &Multiset, y: &Multiset) -> Option<SpElement> {
    let mut i = x.entries.iter().peekable();
    let mut j = y.entries.iter().peekable();
    loop {
        match (i.peek(), j.peek()) {
            (None, None) => return None,
            (Some((g, _)), None) | (None, Some((g, _))) => return Some(**g),
            (Some((g, c)), Some((h, d))) => match g.cmp(h) {
                std::cmp::Ordering::Less => return Some(**g),
                std::cmp::Ordering::Greater => return Some(**h),
                std::cmp::Ordering::Equal => {
                    if c != d {
                        return Some(**g);
                    }
                    i.next();
                    j.next();
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_neutral() {
        let t = Multiset::transvection_class(4).unwrap();
        let e = Multiset::unit(4).unwrap();
        assert_eq!(t.convolve(&e).unwrap(), t);
        assert_eq!(e.convolve(&t).unwrap(), t);
    }

    #[test]
    fn class_square_coefficients() {
        for n in [4, 6] {
            let t = Multiset::transvection_class(n).unwrap();
            let sq = t.convolve(&t).unwrap();
            let size = (1u64 << n) - 1;
            for (g, c) in sq.iter() {
                let want = match g.class_tag() {
                    ClassTag::Identity => size,
                    ClassTag::TT0 => 2,
                    ClassTag::TT1 => 3,
                    other => panic!("unexpected {other:?}"),
                };
                assert_eq!(*c, BigUint::from(want));
            }
            assert_eq!(sq.mass(), BigUint::from(size * size));
        }
    }

    #[test]
    fn big_and_small_paths_agree() {
        let t = Multiset::transvection_class(4).unwrap();
        let big = t.scale(&(BigUint::one() << 70u32));
        let p = big.convolve(&t).unwrap();
        let q = t.convolve(&t).unwrap().scale(&(BigUint::one() << 70u32));
        assert_eq!(p, q);
    }

    #[test]
    fn dump_round_trip() {
        let t = Multiset::transvection_class(4).unwrap();
        let sq = t.convolve(&t).unwrap();
        assert_eq!(Multiset::parse_dump(4, &sq.dump()).unwrap(), sq);
    }

    #[test]
    fn non_commuting_witness() {
        let n = 4;
        let a = Multiset::transvections(n, [Gf2Vector::parse(n, "e1").unwrap()]).unwrap();
        let b = Multiset::transvections(n, [Gf2Vector::parse(n, "e4").unwrap()]).unwrap();
        let w = commutes(&a, &b).unwrap().unwrap_err();
        let ab = a.convolve(&b).unwrap();
        let ba = b.convolve(&a).unwrap();
        assert_ne!(ab.coefficient(&w), ba.coefficient(&w));
        assert!(commutes(&a, &a).unwrap().is_ok());
    }
}

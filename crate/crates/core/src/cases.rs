//! Explicit configurations where two products of block sums are compared at
//! a single group element, plus the smaller counting checks that feed the
//! case analysis.
//!
//! Vectors are written in frame notation: a comma-separated list of indices
//! from `1, 2, 3, n-2, n-1, n`, so `"1,2,n"` is `e_1 + e_2 + e_n`. Every
//! configuration lives in the span of those six basis vectors and runs
//! unchanged for any even `n >= 6`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::{count_split, enumerate, min_length, support_span, FactorQuery, MinLength};
use crate::galg::Multiset;
use crate::gf2::{complete_symplectic_basis, realize_gram, Gf2Vector, Subspace};
use crate::schur::{verify_partition, CheckResult, TPartition};
use crate::spgroup::{ClassTag, SpElement};

/// Parses one frame index: a number, `n`, or `n-k`.
fn frame_index(n: usize, tok: &str) -> Result<usize> {
    let tok = tok.trim();
    let bad = || Error::Parse(format!("bad frame index {tok:?}"));
    let idx = if tok == "n" {
        n
    } else if let Some(k) = tok.strip_prefix("n-") {
        n.checked_sub(k.parse::<usize>().map_err(|_| bad())?).ok_or_else(bad)?
    } else {
        tok.parse::<usize>().map_err(|_| bad())?
    };
    if idx == 0 || idx > n {
        return Err(bad());
    }
    Ok(idx)
}

/// `"1,2,n"` to `e_1 + e_2 + e_n`.
pub fn frame_vector(n: usize, s: &str) -> Result<Gf2Vector> {
    let idx: Vec<usize> = s.split(',').map(|t| frame_index(n, t)).collect::<Result<_>>()?;
    let v = Gf2Vector::from_indices(n, &idx)?;
    if v.is_zero() {
        return Err(Error::Parse(format!("frame vector {s:?} is zero")));
    }
    Ok(v)
}

/// Product of transvections, leftmost applied first.
pub fn frame_product(n: usize, factors: &[&str]) -> Result<SpElement> {
    let vs: Vec<Gf2Vector> = factors.iter().map(|s| frame_vector(n, s)).collect::<Result<_>>()?;
    SpElement::product_of_transvections(n, &vs)
}

fn frame_span(n: usize, vs: &[&str]) -> Result<Subspace> {
    let vs: Vec<Gf2Vector> = vs.iter().map(|s| frame_vector(n, s)).collect::<Result<_>>()?;
    Subspace::span(n, vs)
}

fn check_frame_dim(n: usize) -> Result<()> {
    if n < 6 || n % 2 == 1 || n > 12 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

fn sum(n: usize, vs: &BTreeSet<Gf2Vector>) -> Result<Multiset> {
    Multiset::transvections(n, vs.iter().copied())
}

/// A named fact about the configuration, such as a membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
}

fn fact(name: impl Into<String>, holds: bool) -> Fact {
    Fact { name: name.into(), holds }
}

/// Coefficients of `target` in `P Q` and `Q P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCount {
    pub n: usize,
    pub target: SpElement,
    /// Names of `P` and `Q`.
    pub left: String,
    pub right: String,
    pub counts: (BigUint, BigUint),
    pub facts: Vec<Fact>,
    /// Minimal transvection length of the target, when computed.
    pub min_length: Option<usize>,
    pub support_dim: usize,
}

impl SplitCount {
    pub fn differs(&self) -> bool {
        self.counts.0 != self.counts.1
    }

    /// True when the counts are `{a, b}` in either order.
    pub fn is_pair(&self, a: u64, b: u64) -> bool {
        let (x, y) = (&self.counts.0, &self.counts.1);
        (*x == a.into() && *y == b.into()) || (*x == b.into() && *y == a.into())
    }

    pub fn is_ordered(&self, a: u64, b: u64) -> bool {
        self.counts == (a.into(), b.into())
    }
}

/// Three blocks inside `W = Span(e_1, e_2, e_(n-1), e_n)`: `C2 = {e_1, e_n,
/// e_1 + e_n}`, `C3 = {e_2, e_(n-1), e_2 + e_(n-1)}` and `C1` the other nine
/// vectors. With `X = C1 C2` restricted to products of two orthogonal
/// transvections, `Y = C1^2` restricted to products of two meeting ones and
/// `Z = C1 Y`, the counts are the numbers of pairs `(x, z)` of distinct
/// elements with `x z = alpha` (and `z x = alpha`).
pub fn three_blocks_in_w(n: usize) -> Result<SplitCount> {
    check_frame_dim(n)?;
    let w = frame_span(n, &["1", "2", "n-1", "n"])?;
    let c2: BTreeSet<_> = ["1", "n", "1,n"].iter().map(|s| frame_vector(n, s)).collect::<Result<_>>()?;
    let c3: BTreeSet<_> = ["2", "n-1", "2,n-1"].iter().map(|s| frame_vector(n, s)).collect::<Result<_>>()?;
    let c1: BTreeSet<_> = w.nonzero_elements().into_iter().filter(|x| !c2.contains(x) && !c3.contains(x)).collect();
    let (m1, m2) = (sum(n, &c1)?, sum(n, &c2)?);
    let x = m1.convolve(&m2)?.restrict_by_tag(ClassTag::TT0);
    let y = m1.convolve(&m1)?.restrict_by_tag(ClassTag::TT1);
    let z = m1.convolve(&y)?;
    let alpha1 = frame_product(n, &["1,2,n-1,n", "1,n"])?;
    let beta = frame_product(n, &["n-1,n", "2,n"])?;
    let alpha2 = frame_product(n, &["1,n-1,n", "n-1,n", "2,n"])?;
    let alpha = alpha1 * alpha2;
    let (xs, zs) = (x.support_indicator(), z.support_indicator());
    let all_in_w = enumerate(&FactorQuery::new(alpha, 5))?.iter().all(|t| t.iter().all(|v| w.contains(*v)));
    Ok(SplitCount {
        n,
        target: alpha,
        left: "X".into(),
        right: "Z".into(),
        counts: count_split(&alpha, &xs, &zs)?,
        facts: vec![
            fact("alpha1 in X", x.contains(&alpha1)),
            fact("t_(n-1,n) t_(2,n) in Y", y.contains(&beta)),
            fact("alpha2 in Z", z.contains(&alpha2)),
            fact("length-5 factors lie in W", all_in_w),
        ],
        min_length: match min_length(&alpha, 6)? {
            MinLength::Exact(k) => Some(k),
            MinLength::ExceedsCap(_) => None,
        },
        support_dim: support_span(&alpha).rank(),
    })
}

/// Complement of the isotropic space `A = Span(e_1, ..., e_(n/2))` as `C1`.
/// `X = C1^2` on orthogonal pairs, `Y = C1 A` on meeting pairs, `Z = Y A`,
/// and `Z1` the elements of `Z` with coefficient 1. The target is
/// `alpha1 alpha3` with `alpha3 = alpha2 t_(1,3)`.
pub fn isotropic_half_space(n: usize) -> Result<SplitCount> {
    check_frame_dim(n)?;
    let a_sp = Subspace::span(n, (1..=n / 2).map(|i| Gf2Vector::basis(n, i)).collect::<Result<Vec<_>>>()?)?;
    let a: BTreeSet<_> = a_sp.nonzero_elements().into_iter().collect();
    let c1: BTreeSet<_> = Gf2Vector::nonzero(n)?.filter(|v| !a.contains(v)).collect();
    let (m1, ma) = (sum(n, &c1)?, sum(n, &a)?);
    let x = m1.convolve(&m1)?.restrict_by_tag(ClassTag::TT0);
    let y = m1.convolve(&ma)?.restrict_by_tag(ClassTag::TT1);
    let z = y.convolve(&ma)?;
    let z1 = z.filter_multiplicity(1);
    let spectrum: Vec<String> = z.spectrum().keys().map(|k| k.to_string()).collect();
    // The top multiplicity is 2^(n/2 - 1): 4 at n = 6, 8 at n = 8.
    let top = 1u64 << (n / 2 - 1);
    let alpha1 = frame_product(n, &["1,2,3,n", "1,n-1"])?;
    let alpha2 = frame_product(n, &["2,n-1", "1,2,3"])?;
    let alpha3 = alpha2 * frame_product(n, &["1,3"])?;
    let alpha = alpha1 * alpha3;
    Ok(SplitCount {
        n,
        target: alpha,
        left: "X".into(),
        right: "Z1".into(),
        counts: count_split(&alpha, &x, &z1)?,
        facts: vec![
            fact("alpha1 in X", x.contains(&alpha1)),
            fact("alpha2 in Y", y.contains(&alpha2)),
            fact("alpha3 in Z1", z1.contains(&alpha3)),
            fact(format!("Z has multiplicities 1, 2, {top}"), spectrum == ["1".to_string(), "2".into(), top.to_string()]),
        ],
        min_length: None,
        support_dim: support_span(&alpha).rank(),
    })
}

/// With `a_i = e_i`, `b_i = e_(7-i)` in the frame and `W` their span:
/// `C1` the vectors of `W` meeting `a_1` or `a_2`, `C2` the cosets
/// `u + Span(a_1, a_2)` for `u` in `{a_3, b_3, a_3 + b_3}`. `A` and `B` are
/// the coefficient-1 parts of `C1^3` and `C1 C2 C1`.
pub fn two_meeting_directions(n: usize) -> Result<SplitCount> {
    check_frame_dim(n)?;
    let names = ["1", "2", "3", "n-2", "n-1", "n"];
    let e = |i: usize| frame_vector(n, names[i - 1]);
    let (a1, a2, a3) = (e(1)?, e(2)?, e(3)?);
    let (b1, b2, b3) = (e(6)?, e(5)?, e(4)?);
    let w = Subspace::span(n, [a1, b1, a2, b2, a3, b3])?;
    let c1: BTreeSet<_> = w.nonzero_elements().into_iter().filter(|x| x.dot(a1) || x.dot(a2)).collect();
    let mut c2 = BTreeSet::new();
    for u in [a3, b3, a3 + b3] {
        for x in Subspace::span(n, [a1, a2])?.elements() {
            c2.insert(u + x);
        }
    }
    let (m1, m2) = (sum(n, &c1)?, sum(n, &c2)?);
    let am = m1.convolve(&m1)?.convolve(&m1)?.filter_multiplicity(1);
    let bm = m1.convolve(&m2)?.convolve(&m1)?.filter_multiplicity(1);
    let tt = |vs: &[Gf2Vector]| SpElement::product_of_transvections(n, vs);
    let alpha1 = tt(&[b2 + b1, a1 + a3 + b2 + b1, a1 + b3 + b2 + b1])?;
    let alpha2 = tt(&[a2 + a3 + b3 + b2, a2 + a3 + b3, a1 + a2 + b2])?;
    let alpha = alpha1 * alpha2;
    Ok(SplitCount {
        n,
        target: alpha,
        left: "A".into(),
        right: "B".into(),
        counts: count_split(&alpha, &am, &bm)?,
        facts: vec![
            fact("|C1| = 48", c1.len() == 48),
            fact("|C2| = 12", c2.len() == 12),
            fact("alpha1 in A", am.contains(&alpha1)),
            fact("alpha2 in B", bm.contains(&alpha2)),
        ],
        min_length: None,
        support_dim: support_span(&alpha).rank(),
    })
}

/// `C2 = Span(e_1, e_2, e_(n-1), e_n)# u Span(e_3, e_(n-2))#` and `C1` the
/// rest of the frame span. `X = C1 C2` on orthogonal pairs, `Y = C1^2` on
/// meeting pairs, `Z = C1 Y` and `Z1` its coefficient-1 part; the counts
/// are for `(Z1 X, X Z1)`.
pub fn split_frame(n: usize) -> Result<SplitCount> {
    check_frame_dim(n)?;
    let vu = frame_span(n, &["1", "2", "n-1", "n"])?;
    let vv = frame_span(n, &["3", "n-2"])?;
    let w = frame_span(n, &["1", "2", "3", "n-2", "n-1", "n"])?;
    let c2: BTreeSet<_> = vu.nonzero_elements().into_iter().chain(vv.nonzero_elements()).collect();
    let c1: BTreeSet<_> = w.nonzero_elements().into_iter().filter(|x| !c2.contains(x)).collect();
    let (m1, m2) = (sum(n, &c1)?, sum(n, &c2)?);
    let x = m1.convolve(&m2)?.restrict_by_tag(ClassTag::TT0);
    let y = m1.convolve(&m1)?.restrict_by_tag(ClassTag::TT1);
    let z1 = m1.convolve(&y)?.filter_multiplicity(1);
    let zz = frame_product(n, &["n-2,n", "2,n-2,n-1", "n-2,n-1"])?;
    let xx = frame_product(n, &["2,3,n", "1,2,n-1"])?;
    let alpha = zz * xx;
    Ok(SplitCount {
        n,
        target: alpha,
        left: "Z1".into(),
        right: "X".into(),
        counts: count_split(&alpha, &z1, &x)?,
        facts: vec![fact("first factor in Z1", z1.contains(&zz)), fact("second factor in X", x.contains(&xx))],
        min_length: None,
        support_dim: support_span(&alpha).rank(),
    })
}

/// The cube of the quadratic-form-zero part of a six-dimensional path-graph
/// space, split by multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCube {
    pub n: usize,
    pub basis: Vec<Gf2Vector>,
    pub spectrum: Vec<BigUint>,
    /// The listed target `alpha1 alpha2`, its counts in `X1 X3` and `X3 X1`.
    pub listed: SplitCount,
    /// Multiplicities of `alpha1` and `alpha2` in the cube.
    pub factor_multiplicities: (BigUint, BigUint),
    /// `(coef in X1 X3, coef in X3 X1) -> number of elements`, over elements
    /// where the two differ.
    pub difference_histogram: BTreeMap<(BigUint, BigUint), usize>,
    /// Least element where `X1 X3` and `X3 X1` differ.
    pub first_difference: Option<(SpElement, BigUint, BigUint)>,
}

impl PathCube {
    pub fn has_difference(&self, a: u64, b: u64) -> bool {
        self.difference_histogram.contains_key(&(a.into(), b.into()))
    }
}

pub const PATH_CUBE_SPECTRUM: [u64; 6] = [1, 3, 4, 6, 20, 87];

/// `b_1, ..., b_6` with `b_i . b_j = 1` exactly when `|i - j| = 1`; `C1`
/// the nonzero vectors of their span where `Q(sum c_i b_i) = sum c_i +
/// sum_(i<j) c_i c_j b_i . b_j` vanishes.
pub fn path_cube(n: usize) -> Result<PathCube> {
    check_frame_dim(n)?;
    let k = 6;
    let gram: Vec<Vec<bool>> = (0..k).map(|i: usize| (0..k).map(|j: usize| i.abs_diff(j) == 1).collect()).collect();
    let bs = realize_gram(n, &gram)?;
    let mut c1 = BTreeSet::new();
    for mask in 1u32..1 << k {
        let mut x = Gf2Vector::zero(n)?;
        let mut q = false;
        for i in (0..k).filter(|i| mask >> i & 1 == 1) {
            x += bs[i];
            q ^= true;
            for j in (0..i).filter(|j| mask >> j & 1 == 1) {
                q ^= bs[i].dot(bs[j]);
            }
        }
        if !q {
            c1.insert(x);
        }
    }
    let m1 = sum(n, &c1)?;
    let cube = m1.convolve(&m1)?.convolve(&m1)?;
    let x1 = cube.filter_multiplicity(1);
    let x3 = cube.filter_multiplicity(3);
    let b = |i: usize| bs[i - 1];
    let tt = |vs: &[Gf2Vector]| SpElement::product_of_transvections(n, vs);
    let alpha1 = tt(&[b(1) + b(2) + b(4), b(2) + b(5), b(1) + b(5)])?;
    let alpha2 = tt(&[b(1) + b(2) + b(3) + b(4) + b(5), b(2) + b(3) + b(5) + b(6), b(1) + b(2) + b(3) + b(5) + b(6)])?;
    let alpha = alpha1 * alpha2;
    let listed = SplitCount {
        n,
        target: alpha,
        left: "X1".into(),
        right: "X3".into(),
        counts: count_split(&alpha, &x1, &x3)?,
        facts: vec![fact("alpha1 in X1", x1.contains(&alpha1)), fact("alpha2 in X3", x3.contains(&alpha2))],
        min_length: None,
        support_dim: support_span(&alpha).rank(),
    };
    let p13 = x1.convolve(&x3)?;
    let p31 = x3.convolve(&x1)?;
    let mut histogram = BTreeMap::new();
    let mut first: Option<(SpElement, BigUint, BigUint)> = None;
    let keys: BTreeSet<SpElement> = p13.support().chain(p31.support()).copied().collect();
    for g in keys {
        let (c, d) = (p13.coefficient(&g), p31.coefficient(&g));
        if c != d {
            if first.is_none() {
                first = Some((g, c.clone(), d.clone()));
            }
            *histogram.entry((c, d)).or_insert(0) += 1;
        }
    }
    Ok(PathCube {
        n,
        basis: bs,
        spectrum: cube.spectrum().into_keys().collect(),
        factor_multiplicities: (cube.coefficient(&alpha1), cube.coefficient(&alpha2)),
        listed,
        difference_histogram: histogram,
        first_difference: first,
    })
}

/// Isotropic second block `X#` for `X = Span(a_1, ..., a_p)` of a symplectic
/// basis `a_1, b_1, ..., a_m, b_m`, `p < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicCounts {
    pub n: usize,
    pub p: usize,
    /// `#{x in X# : x . b_1 = 0}`, expected `2^(p-1) - 1`.
    pub orthogonal_to_b1: usize,
    /// `#{x in X# : x . b_m = 0}`, expected `2^p - 1`.
    pub orthogonal_to_bm: usize,
    /// The verifier's first failed check on the partition `{V# - X#, X#}`.
    pub failure: Option<CheckResult>,
}

pub fn isotropic_counts(n: usize, p: usize) -> Result<IsotropicCounts> {
    if p == 0 || 2 * p >= n {
        return Err(Error::InvalidQuery(format!("need 0 < p < n/2, got p = {p} at n = {n}")));
    }
    let basis = complete_symplectic_basis(n, &[])?;
    let a: Vec<Gf2Vector> = (0..p).map(|i| basis[2 * i]).collect();
    let (b1, bm) = (basis[1], basis[n - 1]);
    let x = Subspace::span(n, a)?.nonzero_elements();
    let count = |b: Gf2Vector| x.iter().filter(|v| !v.dot(b)).count();
    let partition = TPartition::complement_pair(n, x.iter().copied())?;
    Ok(IsotropicCounts {
        n,
        p,
        orthogonal_to_b1: count(b1),
        orthogonal_to_bm: count(bm),
        failure: verify_partition(&partition).first_failure().cloned(),
    })
}

/// Triples `[x, y, z]` with `t_x t_y t_z = t_a` predicted by the five
/// families: `[a, d, d]`, `[d, a, d]` with `a . d = 0`, `[d, d, a]`,
/// `[b, a, a + b]` and `[b, a + b, b]` with `a . b = 1`.
pub fn three_to_one_families(a: Gf2Vector) -> Result<BTreeSet<Vec<Gf2Vector>>> {
    let n = a.dim();
    let mut out = BTreeSet::new();
    for d in Gf2Vector::nonzero(n)? {
        out.insert(vec![a, d, d]);
        out.insert(vec![d, d, a]);
        if !a.dot(d) {
            out.insert(vec![d, a, d]);
        } else {
            out.insert(vec![d, a, a + d]);
            out.insert(vec![d, a + d, d]);
        }
    }
    Ok(out)
}

/// All triples with product `t_a`, by exhaustive search without pruning.
pub fn three_to_one_brute_force(a: Gf2Vector) -> Result<BTreeSet<Vec<Gf2Vector>>> {
    let n = a.dim();
    let target = SpElement::transvection(a);
    let all: Vec<Gf2Vector> = Gf2Vector::nonzero(n)?.collect();
    let mut out = BTreeSet::new();
    for &x in &all {
        for &y in &all {
            let xy = SpElement::transvection(x) * SpElement::transvection(y);
            for &z in &all {
                if xy * SpElement::transvection(z) == target {
                    out.insert(vec![x, y, z]);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_notation() {
        assert_eq!(frame_vector(8, "1,n").unwrap(), Gf2Vector::from_indices(8, &[1, 8]).unwrap());
        assert_eq!(frame_vector(8, "n-2").unwrap(), Gf2Vector::basis(8, 6).unwrap());
        assert!(frame_vector(6, "1,1").is_err());
        assert!(frame_vector(6, "n-6").is_err());
        assert!(frame_vector(6, "x").is_err());
    }

    #[test]
    fn isotropic_counts_six() {
        let c = isotropic_counts(6, 2).unwrap();
        assert_eq!((c.orthogonal_to_b1, c.orthogonal_to_bm), (1, 3));
        assert_eq!(c.failure.unwrap().name, "f-constancy");
    }

    #[test]
    fn families_match_brute_force_small() {
        for a in Gf2Vector::nonzero(2).unwrap() {
            assert_eq!(three_to_one_families(a).unwrap(), three_to_one_brute_force(a).unwrap());
        }
    }
}

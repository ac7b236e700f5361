//! Elements of `Sp(n, 2)` as row-word matrices acting on the right.
//!
//! Row `i` holds the image of `e_{i+1}`; a vector maps to `v M`, and the
//! product `A * B` applies `A` first.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{check_dim, dot_bits, rank_of, Gf2Vector, MAX_DIM};

/// Cap used when probing element orders.
pub const ORDER_PROBE_CAP: u32 = 12;

/// A symplectic matrix over `F_2`.
#[derive(Clone, Copy)]
pub struct SpElement {
    dim: u8,
    rows: [u32; MAX_DIM],
}

impl PartialEq for SpElement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rows() == other.rows()
    }
}

impl Eq for SpElement {}

impl Hash for SpElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.rows().hash(state);
    }
}

impl PartialOrd for SpElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on `(dim, rows)`, the order of the canonical key.
impl Ord for SpElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.rows().cmp(other.rows()))
    }
}

/// Conjugacy type of an element relative to the transvection class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Identity,
    Transvection,
    /// `t_a t_b` with `a . b = 0`, `a != b`: rank 2, order 2.
    TT0,
    /// `t_a t_b` with `a . b = 1`: rank 2, order 3.
    TT1,
    Other,
}

impl SpElement {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut rows = [0u32; MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(dim) {
            *r = 1 << i;
        }
        Ok(SpElement {
            dim: dim as u8,
            rows,
        })
    }

    /// The transvection `w -> w + (v . w) v`; `t_0` is the identity.
    pub fn transvection(v: Gf2Vector) -> Self {
        let n = v.dim();
        let mut rows = [0u32; MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = 1 << i;
            if v.bits() >> (n - 1 - i) & 1 == 1 {
                *r ^= v.bits();
            }
        }
        let t = SpElement { dim: n as u8, rows };
        debug_assert!(t.is_symplectic());
        t
    }

    /// Product `t_{v_1} t_{v_2} ...` (apply `t_{v_1}` first).
    pub fn product_of_transvections(dim: usize, vs: &[Gf2Vector]) -> Result<Self> {
        let mut g = Self::identity(dim)?;
        for &v in vs {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            g = g * Self::transvection(v);
        }
        Ok(g)
    }

    /// Builds an element from row words, checking the form is preserved.
    pub fn from_rows(dim: usize, rows: &[u32]) -> Result<Self> {
        check_dim(dim)?;
        if rows.len() != dim {
            return Err(Error::Parse(format!("expected {dim} rows, got {}", rows.len())));
        }
        let mut r = [0u32; MAX_DIM];
        for (i, &w) in rows.iter().enumerate() {
            if w >> dim != 0 {
                return Err(Error::OutOfRange {
                    dim,
                    bits: w as u64,
                });
            }
            r[i] = w;
        }
        let g = SpElement {
            dim: dim as u8,
            rows: r,
        };
        if !g.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(g)
    }

    /// The rows packed into one word, when `dim^2 <= 128`.
    #[inline]
    pub(crate) fn pack(&self) -> Option<u128> {
        let n = self.dim();
        if n * n > 128 {
            return None;
        }
        Some(self.rows().iter().rev().fold(0u128, |acc, &r| acc << n | r as u128))
    }

    /// Inverse of `pack`.
    pub(crate) fn unpack(dim: usize, mut word: u128) -> Self {
        let mut rows = [0u32; MAX_DIM];
        let mask = (1u128 << dim) - 1;
        for r in rows.iter_mut().take(dim) {
            *r = (word & mask) as u32;
            word >>= dim;
        }
        SpElement { dim: dim as u8, rows }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.dim as usize]
    }

    /// True when the rows pair like the standard basis.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| dot_bits(n, self.rows[i], self.rows[j]) == (i + j == n - 1))
        }) && rank_of(self.rows().iter().copied()) == n
    }

    #[inline]
    fn apply_bits(&self, mut v: u32) -> u32 {
        let mut out = 0;
        while v != 0 {
            let i = v.trailing_zeros();
            out ^= self.rows[i as usize];
            v &= v - 1;
        }
        out
    }

    /// The image `v M`.
    #[inline]
    pub fn apply(&self, v: Gf2Vector) -> Gf2Vector {
        assert_eq!(v.dim(), self.dim(), "vector and matrix dimensions differ");
        Gf2Vector::from_raw(self.dim(), self.apply_bits(v.bits()))
    }

    /// Inverse, computed as `Omega M^T Omega`.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut rows = [0u32; MAX_DIM];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            for j in 0..n {
                if self.rows[n - 1 - j] >> (n - 1 - i) & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        SpElement { dim: self.dim, rows }
    }

    /// `g^{-1} self g`.
    pub fn conj(&self, g: &SpElement) -> Self {
        g.inverse() * *self * *g
    }

    pub fn is_identity(&self) -> bool {
        self.rows().iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = SpElement::identity(self.dim()).expect("valid dimension");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Order of the element if it is at most `cap`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut g = *self;
        for k in 1..=cap {
            if g.is_identity() {
                return Some(k);
            }
            g = g * *self;
        }
        None
    }

    /// The rows of `M - 1`.
    fn displacement_rows(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows().iter().enumerate().map(|(i, &r)| r ^ (1 << i))
    }

    /// Rank of `M - 1`.
    pub fn rank_minus_identity(&self) -> usize {
        rank_of(self.displacement_rows())
    }

    /// Basis-free description of `Span{ vM - v }` as spanning words.
    pub fn displacement_words(&self) -> Vec<Gf2Vector> {
        self.displacement_rows()
            .filter(|&w| w != 0)
            .map(|w| Gf2Vector::from_raw(self.dim(), w))
            .collect()
    }

    pub fn class_tag(&self) -> ClassTag {
        match self.rank_minus_identity() {
            0 => ClassTag::Identity,
            1 => ClassTag::Transvection,
            2 => match self.order(ORDER_PROBE_CAP) {
                Some(2) => ClassTag::TT0,
                Some(3) => ClassTag::TT1,
                _ => ClassTag::Other,
            },
            _ => ClassTag::Other,
        }
    }

    /// If the element is a transvection `t_v`, returns `v`.
    pub fn as_transvection(&self) -> Option<Gf2Vector> {
        let words = self.displacement_words();
        let v = *words.first()?;
        if words.iter().any(|&w| w != v) {
            return None;
        }
        (SpElement::transvection(v) == *self).then_some(v)
    }

    /// Canonical text form: the row words in hex, comma separated.
    pub fn serialize(&self) -> String {
        let words: Vec<String> = self.rows().iter().map(|r| format!("{r:x}")).collect();
        words.join(",")
    }

    /// Parses the output of [`SpElement::serialize`].
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<u32> = s
            .split(',')
            .map(|w| {
                let w = w.trim();
                let w = w.strip_prefix("0x").unwrap_or(w);
                u32::from_str_radix(w, 16).map_err(|e| Error::Parse(format!("bad row {w:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        SpElement::from_rows(rows.len(), &rows)
    }
}

impl Mul for SpElement {
    type Output = SpElement;
    #[inline]
    fn mul(self, rhs: SpElement) -> SpElement {
        assert_eq!(self.dim, rhs.dim, "product of elements of different dimension");
        let mut rows = [0u32; MAX_DIM];
        for (i, r) in rows.iter_mut().enumerate().take(self.dim as usize) {
            *r = rhs.apply_bits(self.rows[i]);
        }
        SpElement {
            dim: self.dim,
            rows,
        }
    }
}

impl fmt::Display for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

impl fmt::Debug for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp[{}]", self.serialize())
    }
}

impl Serialize for SpElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&SpElement::serialize(self))
    }
}

impl<'de> Deserialize<'de> for SpElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SpElement::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Order of `t_a t_b`: 1 if equal, 2 if orthogonal, 3 otherwise.
pub fn pair_order(a: Gf2Vector, b: Gf2Vector) -> u32 {
    if a == b {
        1
    } else if a.dot(b) {
        3
    } else {
        2
    }
}

/// Sizes of the classes built from the transvections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSizes {
    pub transvections: BigUint,
    /// Elements `t_a t_b` with `a . b = 0`, `a != b`.
    pub tt0: BigUint,
    /// Elements `t_a t_b` with `a . b = 1`.
    pub tt1: BigUint,
    /// Triples `{a, b, a + b}` with `a . b = 1`.
    pub zero_triangles: BigUint,
    pub group_order: BigUint,
}

/// Closed-form class sizes for `Sp(n, 2)`.
pub fn class_sizes(n: usize) -> Result<ClassSizes> {
    check_dim(n)?;
    let one = BigUint::from(1u32);
    let pow2 = |k: usize| BigUint::from(1u32) << k;
    let t = pow2(n) - &one;
    let m = n / 2;
    let mut order = pow2(m * m);
    for k in 1..=m {
        order *= pow2(2 * k) - &one;
    }
    Ok(ClassSizes {
        tt0: &t * (pow2(n - 2) - &one),
        tt1: &t * pow2(n - 1) / 3u32,
        zero_triangles: &t * pow2(n - 2) / 3u32,
        transvections: t,
        group_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, s: &str) -> Gf2Vector {
        Gf2Vector::parse(n, s).unwrap()
    }

    #[test]
    fn transvection_acts_by_formula() {
        let n = 6;
        for a in Gf2Vector::nonzero(n).unwrap().step_by(5) {
            let t = SpElement::transvection(a);
            assert!(t.is_symplectic());
            for w in Gf2Vector::nonzero(n).unwrap() {
                let want = if a.dot(w) { w + a } else { w };
                assert_eq!(t.apply(w), want);
            }
            assert_eq!(t.as_transvection(), Some(a));
            assert_eq!(t * t, SpElement::identity(n).unwrap());
        }
    }

    #[test]
    fn product_applies_left_factor_first() {
        let a = SpElement::transvection(v(4, "e1"));
        let b = SpElement::transvection(v(4, "e4"));
        let w = v(4, "e4");
        assert_eq!((a * b).apply(w), b.apply(a.apply(w)));
    }

    #[test]
    fn inverse_and_conjugation() {
        let n = 6;
        let g = SpElement::product_of_transvections(n, &[v(n, "e1+e2"), v(n, "e6"), v(n, "e3+e5")])
            .unwrap();
        assert!((g * g.inverse()).is_identity());
        let a = v(n, "e2+e4");
        let c = SpElement::transvection(a).conj(&g);
        assert_eq!(c, SpElement::transvection(g.apply(a)));
    }

    #[test]
    fn class_tags() {
        let n = 6;
        let t = |s| SpElement::transvection(v(n, s));
        assert_eq!((t("e1") * t("e2")).class_tag(), ClassTag::TT0);
        assert_eq!((t("e1") * t("e6")).class_tag(), ClassTag::TT1);
        assert_eq!(SpElement::identity(n).unwrap().class_tag(), ClassTag::Identity);
        assert_eq!(t("e3").class_tag(), ClassTag::Transvection);
        assert_eq!((t("e1") * t("e6") * t("e2")).class_tag(), ClassTag::Other);
    }

    #[test]
    fn rejects_non_symplectic_rows() {
        assert_eq!(SpElement::from_rows(2, &[1, 1]), Err(Error::NotSymplectic));
        assert_eq!(SpElement::from_rows(4, &[1, 2, 4, 8 | 2]), Err(Error::NotSymplectic));
        assert!(SpElement::from_rows(2, &[2, 1]).is_ok());
    }

    #[test]
    fn serialization_round_trip() {
        let g = SpElement::product_of_transvections(6, &[v(6, "e1+e2"), v(6, "e6")]).unwrap();
        assert_eq!(SpElement::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn class_size_formulas() {
        let tuple = |n| {
            let c = class_sizes(n).unwrap();
            [c.transvections, c.tt0, c.tt1, c.zero_triangles, c.group_order]
                .map(|x| x.to_string().parse::<u64>().unwrap())
        };
        assert_eq!(tuple(6), [63, 945, 672, 336, 1451520]);
        assert_eq!(tuple(4), [15, 45, 40, 20, 720]);
        assert_eq!(tuple(2), [3, 0, 2, 1, 6]);
        assert!(class_sizes(5).is_err());
    }
}

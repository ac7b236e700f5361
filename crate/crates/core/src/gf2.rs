//! Vectors and subspaces of `V = F_2^n` carrying the standard symplectic form.
//!
//! A vector is a bit word: bit `i - 1` is the coefficient of `e_i`. The form
//! pairs `e_i` with `e_{n+1-i}`, so `u . v` is the parity of `u & rev_n(v)`.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 30;

/// Checks that `n` is an even dimension in `2..=MAX_DIM`.
pub fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) && n.is_multiple_of(2) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(n))
    }
}

#[inline]
fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Reverses the low `n` bits of `bits`, so `e_i` goes to `e_{n+1-i}`.
#[inline]
pub fn reverse_bits(n: usize, bits: u32) -> u32 {
    bits.reverse_bits() >> (32 - n)
}

/// Symplectic product of two words in dimension `n`.
#[inline]
pub fn dot_bits(n: usize, u: u32, v: u32) -> bool {
    (u & reverse_bits(n, v)).count_ones() & 1 == 1
}

/// A vector of `F_2^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gf2Vector {
    dim: u8,
    bits: u32,
}

impl Gf2Vector {
    pub fn new(dim: usize, bits: u32) -> Result<Self> {
        check_dim(dim)?;
        if bits & !mask(dim) != 0 {
            return Err(Error::OutOfRange {
                dim,
                bits: bits as u64,
            });
        }
        Ok(Gf2Vector {
            dim: dim as u8,
            bits,
        })
    }

    /// Builds a vector without validation. Callers guarantee the invariants.
    #[inline]
    pub(crate) fn from_raw(dim: usize, bits: u32) -> Self {
        debug_assert!(check_dim(dim).is_ok() && bits & !mask(dim) == 0);
        Gf2Vector {
            dim: dim as u8,
            bits,
        }
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, 0)
    }

    /// The basis vector `e_i`, with `i` counted from 1.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        check_dim(dim)?;
        if i == 0 || i > dim {
            return Err(Error::Parse(format!("basis index e{i} outside 1..={dim}")));
        }
        Ok(Self::from_raw(dim, 1 << (i - 1)))
    }

    /// Sum of the basis vectors `e_i` for the given 1-based indices.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zero(dim)?;
        for &i in indices {
            v += Self::basis(dim, i)?;
        }
        Ok(v)
    }

    /// `e_1 + ... + e_n`.
    pub fn all_ones(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::from_raw(dim, mask(dim)))
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// 1-based indices of the nonzero coordinates.
    pub fn indices(self) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.bits >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// Symplectic product. Panics if the dimensions differ.
    #[inline]
    pub fn dot(self, other: Gf2Vector) -> bool {
        assert_eq!(self.dim, other.dim, "dot of vectors of different dimension");
        dot_bits(self.dim(), self.bits, other.bits)
    }

    /// Symplectic product, reporting a dimension mismatch as an error.
    pub fn try_dot(self, other: Gf2Vector) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.dot(other))
    }

    /// Parses `e1+e2+e6`, `0x23` or `0` in dimension `dim`.
    pub fn parse(dim: usize, s: &str) -> Result<Self> {
        check_dim(dim)?;
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let bits = u32::from_str_radix(hex, 16)
                .map_err(|e| Error::Parse(format!("bad hex vector {s:?}: {e}")))?;
            return Self::new(dim, bits);
        }
        if s == "0" {
            return Self::zero(dim);
        }
        let mut v = Self::zero(dim)?;
        for term in s.split('+') {
            let term = term.trim();
            let idx = term
                .strip_prefix('e')
                .and_then(|t| usize::from_str(t).ok())
                .ok_or_else(|| Error::Parse(format!("bad vector term {term:?} in {s:?}")))?;
            v += Self::basis(dim, idx)?;
        }
        Ok(v)
    }

    /// All nonzero vectors of `F_2^dim` in increasing order.
    pub fn nonzero(dim: usize) -> Result<impl Iterator<Item = Gf2Vector>> {
        check_dim(dim)?;
        Ok((1..=mask(dim)).map(move |b| Gf2Vector::from_raw(dim, b)))
    }
}

impl Add for Gf2Vector {
    type Output = Gf2Vector;
    #[inline]
    fn add(self, rhs: Gf2Vector) -> Gf2Vector {
        assert_eq!(self.dim, rhs.dim, "sum of vectors of different dimension");
        Gf2Vector {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for Gf2Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Gf2Vector) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.indices().iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// True when the symplectic form vanishes on every pair of `vectors`.
pub fn is_isotropic(vectors: &[Gf2Vector]) -> bool {
    vectors
        .iter()
        .enumerate()
        .all(|(i, &u)| vectors[i + 1..].iter().all(|&v| !u.dot(v)))
}

/// Inserts `v` into a reduced echelon basis whose pivots are the highest set
/// bits. Returns false when `v` is already in the span.
fn rref_insert(rows: &mut Vec<u32>, v: u32) -> bool {
    let r = rref_reduce(rows, v);
    if r == 0 {
        return false;
    }
    let pivot = 31 - r.leading_zeros();
    for row in rows.iter_mut() {
        if *row >> pivot & 1 == 1 {
            *row ^= r;
        }
    }
    let pos = rows
        .iter()
        .position(|&row| row.leading_zeros() > r.leading_zeros())
        .unwrap_or(rows.len());
    rows.insert(pos, r);
    true
}

#[inline]
fn rref_reduce(rows: &[u32], mut v: u32) -> u32 {
    for &row in rows {
        let pivot = 31 - row.leading_zeros();
        if v >> pivot & 1 == 1 {
            v ^= row;
        }
    }
    v
}

/// Rank of a list of words over `F_2`.
pub fn rank_of(words: impl IntoIterator<Item = u32>) -> usize {
    let mut rows = Vec::new();
    for w in words {
        rref_insert(&mut rows, w);
    }
    rows.len()
}

/// Null space of the rows under the standard (non-symplectic) dot product.
fn std_nullspace(n: usize, rows: &[u32]) -> Vec<u32> {
    let mut ech = Vec::new();
    for &r in rows {
        rref_insert(&mut ech, r);
    }
    let pivots: Vec<u32> = ech.iter().map(|r| 31 - r.leading_zeros()).collect();
    let mut out = Vec::new();
    for free in 0..n as u32 {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = 1u32 << free;
        for (row, &p) in ech.iter().zip(&pivots) {
            if row >> free & 1 == 1 {
                v |= 1 << p;
            }
        }
        out.push(v);
    }
    out
}

/// A subspace of `F_2^n`, stored as a reduced echelon basis so that equal
/// subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    dim: u8,
    rows: Vec<u32>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Subspace {
            dim: dim as u8,
            rows: Vec::new(),
        })
    }

    pub fn full(dim: usize) -> Result<Self> {
        let mut s = Self::zero(dim)?;
        for i in 0..dim {
            s.rows.push(1 << (dim - 1 - i));
        }
        Ok(s)
    }

    /// Span of the given vectors, all of dimension `dim`.
    pub fn span(dim: usize, vectors: impl IntoIterator<Item = Gf2Vector>) -> Result<Self> {
        let mut s = Self::zero(dim)?;
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Adds `v` to the span; returns true if the dimension grew.
    pub fn insert(&mut self, v: Gf2Vector) -> bool {
        assert_eq!(v.dim(), self.dim as usize, "subspace dimension mismatch");
        rref_insert(&mut self.rows, v.bits())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim as usize
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: Gf2Vector) -> bool {
        v.dim() == self.ambient_dim() && rref_reduce(&self.rows, v.bits()) == 0
    }

    /// The canonical basis.
    pub fn basis(&self) -> Vec<Gf2Vector> {
        self.rows
            .iter()
            .map(|&b| Gf2Vector::from_raw(self.ambient_dim(), b))
            .collect()
    }

    /// All elements, in increasing order.
    pub fn elements(&self) -> Vec<Gf2Vector> {
        let k = self.rank();
        let mut out: Vec<Gf2Vector> = (0u64..1 << k)
            .map(|c| {
                let mut b = 0;
                for (i, &row) in self.rows.iter().enumerate() {
                    if c >> i & 1 == 1 {
                        b ^= row;
                    }
                }
                Gf2Vector::from_raw(self.ambient_dim(), b)
            })
            .collect();
        out.sort();
        out
    }

    /// Nonzero elements, in increasing order.
    pub fn nonzero_elements(&self) -> Vec<Gf2Vector> {
        let mut e = self.elements();
        e.remove(0);
        e
    }

    /// Orthogonal complement under the symplectic form.
    pub fn perp(&self) -> Subspace {
        let n = self.ambient_dim();
        let rows: Vec<u32> = self.rows.iter().map(|&b| reverse_bits(n, b)).collect();
        let mut s = Subspace {
            dim: self.dim,
            rows: Vec::new(),
        };
        for v in std_nullspace(n, &rows) {
            rref_insert(&mut s.rows, v);
        }
        s
    }

    /// The sum `self + other`.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for &r in &other.rows {
            rref_insert(&mut s.rows, r);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.perp().join(&other.perp()).perp()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().into_iter().all(|v| other.contains(v))
    }

    pub fn is_totally_isotropic(&self) -> bool {
        is_isotropic(&self.basis())
    }

    /// Standard basis vectors spanning a complement of the subspace.
    pub fn complement_basis(&self) -> Vec<Gf2Vector> {
        let n = self.ambient_dim();
        let pivots: Vec<u32> = self.rows.iter().map(|r| 31 - r.leading_zeros()).collect();
        (0..n as u32)
            .filter(|p| !pivots.contains(p))
            .map(|p| Gf2Vector::from_raw(n, 1 << p))
            .collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Span{:?}", self.basis())
    }
}

/// Smallest nonzero word `v` outside `avoid` with `v . known[j] = want[j]`
/// for every `j`, or `None` when no such word exists.
pub(crate) fn least_solution(
    n: usize,
    known: &[Gf2Vector],
    want: &[bool],
    avoid: &Subspace,
) -> Option<Gf2Vector> {
    // Each constraint is an affine equation under the standard dot product
    // with rev(known[j]). Row-reduce the augmented system.
    let mut ech: Vec<(u32, bool)> = Vec::new();
    for (k, &w) in known.iter().zip(want) {
        let mut row = reverse_bits(n, k.bits());
        let mut rhs = w;
        for &(r, b) in &ech {
            let p = 31 - r.leading_zeros();
            if row >> p & 1 == 1 {
                row ^= r;
                rhs ^= b;
            }
        }
        if row == 0 {
            if rhs {
                return None;
            }
            continue;
        }
        let p = 31 - row.leading_zeros();
        for e in ech.iter_mut() {
            if e.0 >> p & 1 == 1 {
                e.0 ^= row;
                e.1 ^= rhs;
            }
        }
        ech.push((row, rhs));
    }
    // Particular solution: free variables zero, pivot variable from rhs.
    let mut x0 = 0u32;
    for &(r, b) in &ech {
        if b {
            x0 |= 1 << (31 - r.leading_zeros());
        }
    }
    let rows: Vec<u32> = ech.iter().map(|e| e.0).collect();
    let mut kernel = Vec::new();
    for v in std_nullspace(n, &rows) {
        rref_insert(&mut kernel, v);
    }
    let x0 = rref_reduce(&kernel, x0);
    // With highest-bit pivots, the coset elements increase with the
    // coefficient word read from the largest pivot down.
    let k = kernel.len();
    for c in 0u64..1 << k {
        let mut v = x0;
        for i in 0..k {
            if c >> i & 1 == 1 {
                v ^= kernel[k - 1 - i];
            }
        }
        let cand = Gf2Vector::from_raw(n, v);
        if v != 0 && !avoid.contains(cand) {
            return Some(cand);
        }
    }
    None
}

/// Completes a partial symplectic basis.
///
/// Slots are ordered `a_1, b_1, a_2, b_2, ...` with `a_i . b_j = [i = j]` and
/// all other products zero. Filled slots are kept; each empty slot receives
/// the least vector consistent with every vector fixed so far.
pub fn complete_symplectic_basis(n: usize, partial: &[Option<Gf2Vector>]) -> Result<Vec<Gf2Vector>> {
    check_dim(n)?;
    if partial.len() > n {
        return Err(Error::GramPattern(format!(
            "{} slots supplied for dimension {n}",
            partial.len()
        )));
    }
    let gram = |i: usize, j: usize| i / 2 == j / 2 && i != j;
    let mut slots: Vec<Option<Gf2Vector>> = partial.to_vec();
    slots.resize(n, None);
    let fixed: Vec<(usize, Gf2Vector)> = slots
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    for &(_, v) in &fixed {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: v.dim(),
            });
        }
    }
    if rank_of(fixed.iter().map(|(_, v)| v.bits())) < fixed.len() {
        return Err(Error::Dependent);
    }
    for (x, &(i, u)) in fixed.iter().enumerate() {
        for &(j, v) in &fixed[x + 1..] {
            if u.dot(v) != gram(i, j) {
                return Err(Error::GramPattern(format!(
                    "slots {i} and {j}: {u} . {v} should be {}",
                    gram(i, j) as u8
                )));
            }
        }
    }
    for slot in 0..n {
        if slots[slot].is_some() {
            continue;
        }
        let known: Vec<(usize, Gf2Vector)> = slots
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i, v)))
            .collect();
        let vecs: Vec<Gf2Vector> = known.iter().map(|k| k.1).collect();
        let want: Vec<bool> = known.iter().map(|k| gram(slot, k.0)).collect();
        let avoid = Subspace::span(n, vecs.iter().copied())?;
        let v = least_solution(n, &vecs, &want, &avoid)
            .ok_or_else(|| Error::GramPattern(format!("no vector fits slot {slot}")))?;
        slots[slot] = Some(v);
    }
    Ok(slots.into_iter().map(|v| v.expect("all slots filled")).collect())
}

/// Lexicographically least independent vectors `b_1, ..., b_k` with
/// `b_i . b_j = gram[i][j]`, chosen greedily in order.
pub fn realize_gram(n: usize, gram: &[Vec<bool>]) -> Result<Vec<Gf2Vector>> {
    check_dim(n)?;
    let mut out: Vec<Gf2Vector> = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != gram.len() || row[i] {
            return Err(Error::GramPattern(format!("row {i} is malformed")));
        }
        let want: Vec<bool> = (0..i).map(|j| row[j]).collect();
        for j in 0..i {
            if gram[j][i] != row[j] {
                return Err(Error::GramPattern("matrix is not symmetric".into()));
            }
        }
        let avoid = Subspace::span(n, out.iter().copied())?;
        let v = least_solution(n, &out, &want, &avoid)
            .ok_or_else(|| Error::GramPattern(format!("no vector fits position {i}")))?;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, s: &str) -> Gf2Vector {
        Gf2Vector::parse(n, s).unwrap()
    }

    #[test]
    fn form_pairs_opposite_indices() {
        let n = 6;
        for i in 1..=n {
            for j in 1..=n {
                let d = Gf2Vector::basis(n, i).unwrap().dot(Gf2Vector::basis(n, j).unwrap());
                assert_eq!(d, i + j == n + 1, "e{i}.e{j}");
            }
        }
        assert!(v(6, "e1+e2").dot(v(6, "e6")));
        assert!(!v(6, "e1+e6").dot(v(6, "e1+e6")));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = v(6, "e1+e2+e6");
        assert_eq!(x.bits(), 0b100011);
        assert_eq!(x.to_string(), "e1+e2+e6");
        assert_eq!(v(6, "0x23"), x);
        assert!(Gf2Vector::parse(6, "e7").is_err());
        assert!(Gf2Vector::parse(5, "e1").is_err());
        assert!(Gf2Vector::new(4, 16).is_err());
    }

    #[test]
    fn dot_rejects_mismatched_dimensions() {
        let a = v(4, "e1");
        let b = v(6, "e1");
        assert!(matches!(a.try_dot(b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn perp_of_e1_at_n4() {
        let s = Subspace::span(4, [v(4, "e1")]).unwrap();
        let p = s.perp();
        assert_eq!(p.rank(), 3);
        for x in p.elements() {
            assert!(!x.dot(v(4, "e1")));
        }
        assert!(!p.contains(v(4, "e4")));
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(6, [v(6, "e1+e2"), v(6, "e2")]).unwrap();
        let b = Subspace::span(6, [v(6, "e1"), v(6, "e1+e2")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.elements().len(), 4);
    }

    #[test]
    fn completion_of_empty_is_standard_basis() {
        let b = complete_symplectic_basis(6, &[]).unwrap();
        let want: Vec<Gf2Vector> = ["e1", "e6", "e2", "e5", "e3", "e4"]
            .iter()
            .map(|s| v(6, s))
            .collect();
        assert_eq!(b, want);
    }

    #[test]
    fn completion_keeps_supplied_vector() {
        let b = complete_symplectic_basis(4, &[Some(v(4, "e1"))]).unwrap();
        assert_eq!(b[1], v(4, "e4"));
        let b = complete_symplectic_basis(4, &[Some(v(4, "e1+e2")), None, Some(v(4, "e2"))])
            .unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b[i].dot(b[j]), i / 2 == j / 2 && i != j);
            }
        }
    }

    #[test]
    fn completion_rejects_bad_input() {
        assert_eq!(
            complete_symplectic_basis(4, &[Some(v(4, "e1")), Some(v(4, "e2"))]),
            Err(Error::GramPattern("slots 0 and 1: e1 . e2 should be 1".into()))
        );
        assert_eq!(
            complete_symplectic_basis(4, &[Some(v(4, "e1")), None, Some(v(4, "e1"))]),
            Err(Error::Dependent)
        );
    }

    #[test]
    fn realize_path_gram() {
        let k = 6;
        let gram: Vec<Vec<bool>> = (0..k)
            .map(|i: usize| (0..k).map(|j: usize| i.abs_diff(j) == 1).collect())
            .collect();
        let b = realize_gram(6, &gram).unwrap();
        assert_eq!(rank_of(b.iter().map(|x| x.bits())), 6);
        for i in 0..k {
            for j in 0..k {
                assert_eq!(b[i].dot(b[j]), gram[i][j]);
            }
        }
        assert_eq!(b[0], v(6, "e1"));
        assert_eq!(b[1], v(6, "e6"));
        assert_eq!(b[2], v(6, "e1+e2"));
    }
}

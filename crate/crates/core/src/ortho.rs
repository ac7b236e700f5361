//! Quadratic forms polarizing to the symplectic form, the Arf invariant, and
//! the transvection sets `{v : Q(v) = 1}` of the orthogonal groups.
//!
//! A form is stored by its values on the standard basis; every other value
//! follows from `Q(x + y) = Q(x) + Q(y) + x . y`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{check_dim, reverse_bits, Gf2Vector};
use crate::schur::{f_profile_of, FProfile, VectorSet};

/// Largest dimension for scans over all of `V`.
pub const MAX_SCAN_DIM: usize = 22;

/// A quadratic form on `F_2^n` whose polarization is the symplectic form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    dim: u8,
    /// Bit `i - 1` is `Q(e_i)`.
    diag: u32,
}

/// Sign of an orthogonal group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_arf(arf: bool) -> Sign {
        if arf {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn arf(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl QuadForm {
    /// The form with the given values on `e_1, ..., e_n`.
    pub fn from_diagonal(dim: usize, diag: u32) -> Result<Self> {
        Gf2Vector::new(dim, diag)?;
        Ok(QuadForm {
            dim: dim as u8,
            diag,
        })
    }

    /// `Q_alpha(x) = alpha x_1 + x_1 x_n + alpha x_n + x_2 x_(n-1) + ... + x_m x_(m+1)`.
    pub fn standard(dim: usize, alpha: bool) -> Result<Self> {
        check_dim(dim)?;
        let diag = if alpha { 1 | 1 << (dim - 1) } else { 0 };
        Self::from_diagonal(dim, diag)
    }

    /// The form taking the given values on a basis.
    pub fn from_basis_values(basis: &[Gf2Vector], values: &[bool]) -> Result<Self> {
        let dim = basis.first().map(|b| b.dim()).ok_or(Error::Dependent)?;
        if basis.len() != dim || values.len() != dim {
            return Err(Error::InvalidQuery(format!(
                "need {dim} basis vectors and values, got {} and {}",
                basis.len(),
                values.len()
            )));
        }
        let coords = coordinate_rows(basis)?;
        let mut diag = 0u32;
        for (j, &c) in coords.iter().enumerate() {
            let mut q = false;
            let picked: Vec<usize> = (0..dim).filter(|&i| c >> i & 1 == 1).collect();
            for (k, &i) in picked.iter().enumerate() {
                q ^= values[i];
                for &l in &picked[..k] {
                    q ^= basis[i].dot(basis[l]);
                }
            }
            diag |= (q as u32) << j;
        }
        Self::from_diagonal(dim, diag)
    }

    /// The form with `Q(b) = 1` for every `b` in the basis.
    pub fn from_basis(basis: &[Gf2Vector]) -> Result<Self> {
        Self::from_basis_values(basis, &vec![true; basis.len()])
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn diagonal(&self) -> u32 {
        self.diag
    }

    #[inline]
    pub fn eval_bits(&self, v: u32) -> bool {
        let n = self.dim();
        let low = (1u32 << (n / 2)) - 1;
        let cross = (v & reverse_bits(n, v) & low).count_ones();
        ((v & self.diag).count_ones() + cross) & 1 == 1
    }

    pub fn eval(&self, v: Gf2Vector) -> bool {
        assert_eq!(v.dim(), self.dim(), "form and vector dimensions differ");
        self.eval_bits(v.bits())
    }

    /// `sum Q(a_i) Q(b_i)` over the standard symplectic basis `a_i = e_i`,
    /// `b_i = e_(n+1-i)`.
    pub fn arf(&self) -> bool {
        let n = self.dim();
        (0..n / 2).fold(false, |acc, i| acc ^ (self.diag >> i & self.diag >> (n - 1 - i) & 1 == 1))
    }

    /// `sum Q(a_i) Q(b_i)` over a basis listed as `a_1, b_1, a_2, b_2, ...`.
    pub fn arf_over(&self, symplectic_basis: &[Gf2Vector]) -> bool {
        symplectic_basis
            .chunks(2)
            .fold(false, |acc, p| acc ^ (self.eval(p[0]) && self.eval(p[1])))
    }

    /// The value taken most often on `V`.
    pub fn majority_value(&self) -> Result<bool> {
        let ones = self.count_ones()?;
        Ok(2 * ones > 1u64 << self.dim())
    }

    /// `#{v : Q(v) = 1}`.
    pub fn count_ones(&self) -> Result<u64> {
        scan_guard(self.dim())?;
        Ok((0..1u32 << self.dim()).filter(|&v| self.eval_bits(v)).count() as u64)
    }

    /// Whether some `n/2`-dimensional subspace has `Q = 0` on it. Exhaustive,
    /// so limited to `n <= 8`.
    pub fn has_singular_half_space(&self) -> Result<bool> {
        let n = self.dim();
        if n > 8 {
            return Err(Error::SizeGuard("singular subspace search is limited to n <= 8".into()));
        }
        let singular: Vec<u32> = (1..1u32 << n).filter(|&v| !self.eval_bits(v)).collect();
        Ok(extend_singular(n, &singular, &mut Vec::new(), 0))
    }

    /// Transvection vectors of the orthogonal group of `Q`.
    pub fn so_transvections(&self) -> Result<Vec<Gf2Vector>> {
        scan_guard(self.dim())?;
        Ok(Gf2Vector::nonzero(self.dim())?.filter(|v| self.eval(*v)).collect())
    }

    pub fn sign(&self) -> Sign {
        Sign::from_arf(self.arf())
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadForm(n={}, diag={:#x})", self.dim, self.diag)
    }
}

fn scan_guard(n: usize) -> Result<()> {
    if n > MAX_SCAN_DIM {
        return Err(Error::SizeGuard(format!("scans over V are limited to n <= {MAX_SCAN_DIM}")));
    }
    Ok(())
}

fn extend_singular(n: usize, singular: &[u32], chosen: &mut Vec<u32>, start: usize) -> bool {
    if chosen.len() == n / 2 {
        return true;
    }
    for (k, &v) in singular.iter().enumerate().skip(start) {
        if chosen.iter().any(|&c| crate::gf2::dot_bits(n, c, v)) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(v);
        if crate::gf2::rank_of(trial.iter().copied()) < trial.len() {
            continue;
        }
        chosen.push(v);
        if extend_singular(n, singular, chosen, k + 1) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Row `j` holds the coordinates of `e_(j+1)` with respect to `basis`.
fn coordinate_rows(basis: &[Gf2Vector]) -> Result<Vec<u32>> {
    let n = basis.len();
    // Gauss-Jordan on [B | I]; afterwards the right half is B^-1, whose row j
    // gives e_(j+1) in basis coordinates because vectors are rows.
    let mut rows: Vec<(u32, u32)> = basis.iter().enumerate().map(|(i, b)| (b.bits(), 1u32 << i)).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r].0 >> col & 1 == 1).ok_or(Error::Dependent)?;
        rows.swap(col, pivot);
        let p = rows[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && row.0 >> col & 1 == 1 {
                row.0 ^= p.0;
                row.1 ^= p.1;
            }
        }
    }
    Ok(rows.into_iter().map(|(_, inv)| inv).collect())
}

/// `2^(m-1) (2^m - 1)` for `+`, `2^(m-1) (2^m + 1)` for `-`, with `n = 2m`.
pub fn so_transvection_count(n: usize, sign: Sign) -> u64 {
    let m = (n / 2) as u32;
    let half = 1u64 << (m - 1);
    match sign {
        Sign::Plus => half * ((1 << m) - 1),
        Sign::Minus => half * ((1 << m) + 1),
    }
}

/// `f4` of the transvection set of `Q`, or the profile showing it is not
/// constant.
pub fn f4_of_so(q: &QuadForm) -> Result<std::result::Result<u64, FProfile>> {
    let c = VectorSet::new(q.dim(), q.so_transvections()?)?;
    Ok(match f_profile_of(&c) {
        FProfile::Constant(v) => Ok(v.f4),
        other => Err(other),
    })
}

/// The integer matrix of the two-step recursion on `(n_00, n_10, n_01, n_11, 1)`.
pub const K_MATRIX: [[i64; 5]; 5] = [
    [1, 1, 2, 0, 1],
    [1, 1, 0, 2, 1],
    [0, 2, 1, 1, 2],
    [2, 0, 1, 1, 2],
    [0, 0, 0, 0, 1],
];

/// Coefficients of `det(x I - K)`, leading coefficient first.
pub fn characteristic_polynomial(k: &[[i64; 5]; 5]) -> Vec<i64> {
    // Faddeev-LeVerrier; every division is exact for integer matrices.
    let n = 5;
    let mut coeffs = vec![1i64];
    let mut m = [[0i64; 5]; 5];
    let mut c = 1i64;
    for step in 1..=n {
        let mut next = [[0i64; 5]; 5];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| k[i][l] * m[l][j]).sum::<i64>();
            }
            next[i][i] += c;
        }
        m = next;
        let trace: i64 = (0..n).map(|i| (0..n).map(|l| k[i][l] * m[l][i]).sum::<i64>()).sum();
        c = -trace / step as i64;
        coeffs.push(c);
    }
    coeffs
}

/// Expansion of `x (x - 1) (x - 4) (x^2 + 4)`.
pub const EXPECTED_CHAR_POLY: [i64; 6] = [1, -5, 8, -20, 16, 0];

/// `K^m v` with big integers.
pub fn k_power_apply(m: u32, v: &[i64; 5]) -> [BigInt; 5] {
    let mut cur: [BigInt; 5] = (*v).map(BigInt::from);
    for _ in 0..m {
        let next: Vec<BigInt> = K_MATRIX
            .iter()
            .map(|row| row.iter().zip(cur.iter()).map(|(&a, x)| BigInt::from(a) * x).sum())
            .collect();
        cur = next.try_into().expect("five entries");
    }
    cur
}

/// `(2^(2m+5) - 1, 2^(2m+5) - 1, 2^(2m+5), 2^(2m+5), 1)`.
pub fn k_closed_form(m: u32) -> [BigInt; 5] {
    let p = BigInt::from(1) << (2 * m + 5);
    let q: BigInt = &p - 1;
    [q.clone(), q, p.clone(), p, BigInt::from(1)]
}

/// Counts `(n_00, n_10, n_01, n_11)` over nonzero `t != b_1` with
/// `b_1 . t = 0`, where `n_ed` counts `Q_B(t) = e` and last coordinate of `t`
/// in the basis equal to `d`.
pub fn n_eps_delta(basis: &[Gf2Vector]) -> Result<[u64; 4]> {
    let q = QuadForm::from_basis(basis)?;
    let n = q.dim();
    scan_guard(n)?;
    let coords = coordinate_rows(basis)?;
    let b1 = basis[0];
    let mut counts = [0u64; 4];
    for t in Gf2Vector::nonzero(n)? {
        if t == b1 || t.dot(b1) {
            continue;
        }
        let c = t.indices().iter().fold(0u32, |acc, &i| acc ^ coords[i - 1]);
        let eps = q.eval(t) as usize;
        let delta = (c >> (n - 1) & 1) as usize;
        counts[eps + 2 * delta] += 1;
    }
    Ok(counts)
}

/// A basis `b_1, ..., b_k` of a `k`-dimensional subspace whose only meeting
/// pairs are consecutive, chosen greedily lexicographically least.
pub fn path_basis(n: usize, k: usize) -> Result<Vec<Gf2Vector>> {
    let gram: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i.abs_diff(j) == 1).collect()).collect();
    crate::gf2::realize_gram(n, &gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms() {
        let q0 = QuadForm::standard(6, false).unwrap();
        let q1 = QuadForm::standard(6, true).unwrap();
        let e1 = Gf2Vector::basis(6, 1).unwrap();
        assert!(!q0.eval(e1));
        assert!(q1.eval(e1));
        assert_ne!(q0.arf(), q1.arf());
        assert_eq!(q0.so_transvections().unwrap().len(), 28);
        assert_eq!(q1.so_transvections().unwrap().len(), 36);
    }

    #[test]
    fn polarization() {
        for q in [QuadForm::standard(4, true).unwrap(), QuadForm::from_diagonal(4, 0b0110).unwrap()] {
            for x in 0..16u32 {
                for y in 0..16u32 {
                    let lhs = q.eval_bits(x ^ y) ^ q.eval_bits(x) ^ q.eval_bits(y);
                    assert_eq!(lhs, crate::gf2::dot_bits(4, x, y));
                }
            }
        }
    }

    #[test]
    fn basis_form_n2_is_all_ones() {
        let b = [Gf2Vector::basis(2, 1).unwrap(), Gf2Vector::basis(2, 2).unwrap()];
        let q = QuadForm::from_basis(&b).unwrap();
        assert!((1..4u32).all(|v| q.eval_bits(v)));
    }

    #[test]
    fn char_poly() {
        assert_eq!(characteristic_polynomial(&K_MATRIX), EXPECTED_CHAR_POLY.to_vec());
    }

    #[test]
    fn k_first_step() {
        let got = k_power_apply(1, &[31, 31, 32, 32, 1]);
        assert_eq!(got, [127, 127, 128, 128, 1].map(BigInt::from));
    }
}

//! Linear relation systems for two- and three-block partitions, solved
//! exactly over the rationals.
//!
//! With the size `b3` and orthogonal count `b4` of the second block fixed by
//! the group it generates, the quadratic relations among the block statistics
//! become linear in the remaining unknowns. A candidate is ruled out when a
//! determined unknown is not a nonnegative integer.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ortho::QuadForm;
use crate::schur::{f_profile_of, orthogonal_counts, FProfile, FValues, TPartition, MAX_PARTITION_DIM};

/// Groups that can be generated by the second block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Symmetric group of degree `n + 1`.
    SymNplus1,
    /// Symmetric group of degree `n + 2`.
    SymNplus2,
    SOplus,
    SOminus,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SymNplus1, Family::SymNplus2, Family::SOplus, Family::SOminus];

    pub fn name(self) -> &'static str {
        match self {
            Family::SymNplus1 => "sym-n+1",
            Family::SymNplus2 => "sym-n+2",
            Family::SOplus => "so-plus",
            Family::SOminus => "so-minus",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }

    fn is_symmetric(self) -> bool {
        matches!(self, Family::SymNplus1 | Family::SymNplus2)
    }

    /// `(b3, b4)`: number of transvections in the group and the constant
    /// orthogonal count among them.
    pub fn data(self, n: usize) -> (BigInt, BigInt) {
        let n_big = BigInt::from(n);
        let choose2 = |k: &BigInt| k * (k - 1) / 2;
        let m = (n / 2) as u32;
        let pow = |e: u32| BigInt::one() << e;
        match self {
            Family::SymNplus1 => (choose2(&(&n_big + 1)), choose2(&(&n_big - 1))),
            Family::SymNplus2 => (choose2(&(&n_big + 2)), choose2(&n_big)),
            Family::SOplus => (pow(m - 1) * (pow(m) - 1), pow(n as u32 - 2) - 1),
            Family::SOminus => (pow(m - 1) * (pow(m) + 1), pow(n as u32 - 2) - 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unknowns in column order; `mu` appears only for symmetric families with
/// two blocks.
pub const VARIABLES: [&str; 7] = ["a1", "a2", "a4", "b1", "lambda1", "lambda2", "mu"];

/// A linear system `A x = rhs` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSystem {
    pub n: usize,
    pub r: usize,
    pub family: Family,
    pub a3: BigInt,
    pub b3: BigInt,
    pub b4: BigInt,
    pub variables: Vec<&'static str>,
    /// `(label, coefficients, right-hand side)`.
    pub equations: Vec<(&'static str, Vec<BigInt>, BigInt)>,
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

impl RelationSystem {
    pub fn build(family: Family, r: usize, n: usize) -> Result<Self> {
        if n < 4 || n % 2 == 1 {
            return Err(Error::InvalidDimension(n));
        }
        if r != 2 && r != 3 {
            return Err(Error::InvalidQuery(format!("r must be 2 or 3, got {r}")));
        }
        let (b3, b4) = family.data(n);
        let total: BigInt = pow2(n) - (r as i64 - 1);
        let a3: BigInt = &total - &b3;
        let half = pow2(n - 1);
        let with_mu = r == 2 && family.is_symmetric();
        let variables: Vec<&'static str> = VARIABLES[..if with_mu { 7 } else { 6 }].to_vec();
        let width = variables.len();
        let row = |entries: &[(usize, BigInt)]| {
            let mut v = vec![BigInt::zero(); width];
            for (i, c) in entries {
                v[*i] = c.clone();
            }
            v
        };
        let (a1, a2, a4, b1, l1, l2, mu) = (0, 1, 2, 3, 4, 5, 6);
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let mut equations = vec![
            ("counting identity, first block", row(&[(a1, two.clone()), (a2, 1.into()), (a4, 1.into())]), &a3 - 1),
            ("counting identity, second block", row(&[(b1, two.clone())]), &b3 - &b4 - 1),
            (
                "orthogonal pairs from the first block",
                row(&[(a4, a3.clone()), (l1, b3.clone())]),
                &a3 * (&half - 2),
            ),
        ];
        let second_offset = if r == 2 { 2 } else { 3 };
        equations.push((
            "orthogonal pairs from the second block",
            row(&[(l2, a3.clone())]),
            &b3 * (&half - second_offset - &b4),
        ));
        if r == 2 {
            equations.push((
                "zero-triangle count",
                row(&[(a1, &two * &a3), (a2, &three * &a3), (b1, &two * &b3)]),
                &two * (pow2(n) - 1) * pow2(n - 2),
            ));
            equations.push((
                "meeting pairs across blocks",
                row(&[(a2, a3.clone()), (b1, &two * &b3)]),
                &b3 * &half,
            ));
            if with_mu {
                equations.push((
                    "edges per second-block vertex",
                    row(&[(a2, a3.clone()), (mu, -b3.clone())]),
                    BigInt::zero(),
                ));
            }
        }
        Ok(RelationSystem {
            n,
            r,
            family,
            a3,
            b3,
            b4,
            variables,
            equations,
        })
    }
}

/// Result of Gauss-Jordan elimination: values of the unknowns that the
/// system pins down, and the dimension of the solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub determined: Vec<Option<BigRational>>,
    pub kernel_dim: usize,
}

/// Solves `A x = b` exactly. An unknown is determined when its pivot row has
/// no entries in free columns.
pub fn solve_linear(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<LinearSolution> {
    let width = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            r.iter()
                .chain(std::iter::once(b))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[width].is_zero()) {
        return Err(Error::Singular("relations are inconsistent".into()));
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let mut determined = vec![None; width];
    for (i, &col) in pivots.iter().enumerate() {
        if free.iter().all(|&f| m[i][f].is_zero()) {
            determined[col] = Some(m[i][width].clone());
        }
    }
    Ok(LinearSolution {
        determined,
        kernel_dim: free.len(),
    })
}

/// Feasibility of a relation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    /// Unique nonnegative integral solution.
    Feasible,
    /// A determined unknown is fractional or negative.
    Infeasible { variable: String, value: String },
    /// Every determined unknown is a nonnegative integer, but some unknowns
    /// are free.
    Underdetermined { kernel_dim: usize },
}

/// The critical ratio `N / D` of an unknown, with `N mod D` and the residue
/// of `2N mod D`. A nonzero second residue rules out half-integers too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub variable: String,
    pub numerator: String,
    pub denominator: String,
    pub residue: String,
    pub half_integer_residue: String,
}

/// Solved system with verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSolution {
    pub system: RelationSystem,
    pub values: Vec<(&'static str, Option<BigRational>)>,
    pub kernel_dim: usize,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl CaseSolution {
    pub fn value(&self, name: &str) -> Option<&BigRational> {
        self.values.iter().find(|(v, _)| *v == name).and_then(|(_, x)| x.as_ref())
    }

    /// The value as an integer when determined and integral.
    pub fn integer(&self, name: &str) -> Option<BigInt> {
        self.value(name).filter(|x| x.is_integer()).map(|x| x.to_integer())
    }
}

pub fn solve_case(family: Family, r: usize, n: usize) -> Result<CaseSolution> {
    let system = RelationSystem::build(family, r, n)?;
    let rows: Vec<_> = system.equations.iter().map(|(_, a, _)| a.clone()).collect();
    let rhs: Vec<_> = system.equations.iter().map(|(_, _, b)| b.clone()).collect();
    let sol = solve_linear(&rows, &rhs)?;
    let values: Vec<_> = system.variables.iter().copied().zip(sol.determined).collect();
    let bad = values.iter().find_map(|(name, v)| {
        v.as_ref()
            .filter(|x| !x.is_integer() || x.is_negative())
            .map(|x| (name.to_string(), x.to_string()))
    });
    let verdict = match bad {
        Some((variable, value)) => Verdict::Infeasible { variable, value },
        None if sol.kernel_dim > 0 => Verdict::Underdetermined {
            kernel_dim: sol.kernel_dim,
        },
        None => Verdict::Feasible,
    };
    let certificate = critical_ratio(&system).map(|(variable, num, den)| {
        let residue = num.mod_floor(&den);
        let half = (&num * BigInt::from(2)).mod_floor(&den);
        Certificate {
            variable: variable.to_string(),
            numerator: num.to_string(),
            denominator: den.to_string(),
            residue: residue.to_string(),
            half_integer_residue: half.to_string(),
        }
    });
    Ok(CaseSolution {
        system,
        values,
        kernel_dim: sol.kernel_dim,
        verdict,
        certificate,
    })
}

/// The unknown whose integrality decides each case, as an unreduced ratio
/// with positive denominator: `a1` for symmetric families with two blocks
/// (denominator `a3`), `lambda2` with three blocks (denominator `a3`).
fn critical_ratio(s: &RelationSystem) -> Option<(&'static str, BigInt, BigInt)> {
    let n = s.n;
    let half = pow2(n - 1);
    if s.r == 3 {
        return Some(("lambda2", &s.b3 * (&half - 3 - &s.b4), s.a3.clone()));
    }
    if !s.family.is_symmetric() {
        return None;
    }
    // b1 from the second counting identity, a2 from the cross-block count,
    // then a1 from the triangle count: a1 = N / (2 a3) times a3 / a3.
    let b1x2 = &s.b3 - &s.b4 - 1;
    let a2_num = &s.b3 * (&half - &b1x2);
    // 2 a3 a1 = 2 (2^n - 1) 2^(n-2) - 3 a2 a3 - 2 b3 b1
    //         = 2 (2^n - 1) 2^(n-2) - 3 a2_num - b3 b1x2.
    let num = 2 * (pow2(n) - 1) * pow2(n - 2) - 3 * &a2_num - &s.b3 * &b1x2;
    let den = 2 * &s.a3;
    Some(("a1", num, den))
}

/// `a1 = N / D` for the two-block symmetric cases in the closed forms
/// `N = 2^(2n-2) - 3 2^(n-3) n^2 - 3 2^(n-3) n - 2^(n-2) + n^3 - n`,
/// `D = 2^n - n^2/2 - n/2 - 1` (degree `n + 1`) and
/// `N = 2^(2n-2) - 3 2^(n-3) n^2 - 9 2^(n-3) n - 2^n + n^3 + 3 n^2 + 2n`,
/// `D = 2^n - n^2/2 - 3n/2 - 2` (degree `n + 2`).
pub fn symmetric_closed_form_a1(family: Family, n: usize) -> Option<BigRational> {
    let nn = BigInt::from(n);
    let n2 = &nn * &nn;
    let n3 = &n2 * &nn;
    let p = |e: usize| BigRational::from_integer(pow2(e));
    let q = |x: BigInt| BigRational::from_integer(x);
    let half = BigRational::new(1.into(), 2.into());
    let (num, den) = match family {
        Family::SymNplus1 => (
            p(2 * n - 2) - p(n - 3) * q(3 * &n2) - p(n - 3) * q(3 * &nn) - p(n - 2) + q(&n3 - &nn),
            p(n) - &half * q(n2.clone()) - &half * q(nn.clone()) - q(1.into()),
        ),
        Family::SymNplus2 => (
            p(2 * n - 2) - p(n - 3) * q(3 * &n2) - p(n - 3) * q(9 * &nn) - p(n) + q(&n3 + 3 * &n2 + 2 * &nn),
            p(n) - &half * q(n2.clone()) - &half * q(3 * &nn) - q(2.into()),
        ),
        _ => return None,
    };
    Some(num / den)
}

/// Values of all ten statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileValues {
    pub a: [BigInt; 4],
    pub b: [BigInt; 4],
    pub lambda1: BigInt,
    pub lambda2: BigInt,
}

/// Closed forms for the two-block orthogonal cases, `n = 2m`:
/// `a = (0, 2^(n-2), 2^(n-1) -+ 2^(m-1) - 1, 2^(n-2) -+ 2^(m-1) - 2)`,
/// `b = (2^(n-3) +- 2^(m-2), 0, 2^(n-1) +- 2^(m-1), 2^(n-2) - 1)`,
/// `lambda1 = 2^(n-2) - 1`, `lambda2 = 2^(n-2) +- 2^(m-1)`, with the upper
/// sign for the minus family.
pub fn so_closed_form(family: Family, n: usize) -> Option<ProfileValues> {
    let s: i64 = match family {
        Family::SOplus => -1,
        Family::SOminus => 1,
        _ => return None,
    };
    let m = n / 2;
    let p = pow2;
    // 2^(m-2) as a rational would be needed for m = 1; n >= 4 keeps it integral.
    Some(ProfileValues {
        a: [
            BigInt::zero(),
            p(n - 2),
            p(n - 1) - s * p(m - 1) - 1,
            p(n - 2) - s * p(m - 1) - 2,
        ],
        b: [p(n - 3) + s * p(m - 2), BigInt::zero(), p(n - 1) + s * p(m - 1), p(n - 2) - 1],
        lambda1: p(n - 2) - 1,
        lambda2: p(n - 2) + s * p(m - 1),
    })
}

impl CaseSolution {
    /// The ten statistics when the solution is feasible.
    pub fn profile_values(&self) -> Option<ProfileValues> {
        let g = |name: &str| self.integer(name);
        Some(ProfileValues {
            a: [g("a1")?, g("a2")?, self.system.a3.clone(), g("a4")?],
            b: [g("b1")?, BigInt::zero(), self.system.b3.clone(), self.system.b4.clone()],
            lambda1: g("lambda1")?,
            lambda2: g("lambda2")?,
        })
    }
}

/// One row of an integrality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub n: usize,
    pub solution: CaseSolution,
}

pub const SCAN_MAX_N: usize = 200;

/// `solve_case` for every even `n` in `lo..=hi`.
pub fn integrality_scan(family: Family, r: usize, lo: usize, hi: usize) -> Result<Vec<ScanRow>> {
    if lo < 6 || hi > SCAN_MAX_N || lo > hi {
        return Err(Error::InvalidQuery(format!("scan range {lo}..={hi} outside 6..={SCAN_MAX_N}")));
    }
    (lo..=hi)
        .filter(|n| n % 2 == 0)
        .map(|n| Ok(ScanRow { n, solution: solve_case(family, r, n)? }))
        .collect()
}

/// `(2^(2m) - 1) 2^m m` against `2^(m^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyeRow {
    pub m: u32,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

pub fn dye_bound(m: u32) -> DyeRow {
    let one = BigUint::one();
    let lhs = ((&one << (2 * m)) - 1u32) * (&one << m) * m;
    let rhs = &one << (m * m);
    let holds = lhs < rhs;
    DyeRow { m, lhs, rhs, holds }
}

/// Statistics measured on the actual transvection set of an orthogonal
/// group and its complement, next to the solved system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub family: Family,
    pub n: usize,
    pub first: FProfile,
    pub second: FProfile,
    /// `#{a in C1 : a . c = 0}` over `c` in `C2`.
    pub lambda1_values: BTreeSet<u64>,
    /// `#{c in C2 : c . a = 0}` over `a` in `C1`.
    pub lambda2_values: BTreeSet<u64>,
    pub solved: Option<ProfileValues>,
}

impl CrossCheck {
    /// The geometric statistics when every one of them is constant.
    pub fn geometric(&self) -> Option<ProfileValues> {
        let a = self.first.constant()?;
        let b = self.second.constant()?;
        let single = |s: &BTreeSet<u64>| (s.len() == 1).then(|| BigInt::from(*s.first().unwrap()));
        let big = |v: FValues| [v.f1, v.f2, v.f3, v.f4].map(BigInt::from);
        Some(ProfileValues {
            a: big(a),
            b: big(b),
            lambda1: single(&self.lambda1_values)?,
            lambda2: single(&self.lambda2_values)?,
        })
    }

    pub fn agrees(&self) -> bool {
        self.solved.is_some() && self.geometric() == self.solved
    }
}

/// Compares the solved two-block system with the statistics of the
/// transvections of the orthogonal group of the given sign.
pub fn cross_check_profiles(family: Family, n: usize) -> Result<CrossCheck> {
    let alpha = match family {
        Family::SOplus => false,
        Family::SOminus => true,
        _ => return Err(Error::InvalidQuery(format!("{family} has no quadratic form"))),
    };
    if n > MAX_PARTITION_DIM {
        return Err(Error::SizeGuard(format!("cross-check is limited to n <= {MAX_PARTITION_DIM}")));
    }
    let q = QuadForm::standard(n, alpha)?;
    let p = TPartition::complement_pair(n, q.so_transvections()?)?;
    let (c1, c2) = (p.block(0), p.block(1));
    Ok(CrossCheck {
        family,
        n,
        first: f_profile_of(c1),
        second: f_profile_of(c2),
        lambda1_values: orthogonal_counts(c1, c2),
        lambda2_values: orthogonal_counts(c2, c1),
        solved: solve_case(family, 2, n)?.profile_values(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> [BigInt; 4] {
        [v[0].into(), v[1].into(), v[2].into(), v[3].into()]
    }

    #[test]
    fn so_minus_six() {
        let s = solve_case(Family::SOminus, 2, 6).unwrap();
        assert_eq!(s.verdict, Verdict::Feasible);
        let p = s.profile_values().unwrap();
        assert_eq!(p.a, ints(&[0, 16, 27, 10]));
        assert_eq!(p.b, ints(&[10, 0, 36, 15]));
        assert_eq!((p.lambda1, p.lambda2), (15.into(), 20.into()));
    }

    #[test]
    fn so_plus_six() {
        let p = solve_case(Family::SOplus, 2, 6).unwrap().profile_values().unwrap();
        assert_eq!(p.a, ints(&[0, 16, 35, 18]));
        assert_eq!(p.b, ints(&[6, 0, 28, 15]));
        assert_eq!((p.lambda1, p.lambda2), (15.into(), 12.into()));
    }

    #[test]
    fn sym_eight_infeasible() {
        let s = solve_case(Family::SymNplus1, 2, 8).unwrap();
        assert!(matches!(s.verdict, Verdict::Infeasible { .. }));
        assert_ne!(s.certificate.unwrap().residue, "0");
    }

    #[test]
    fn underdetermined_detected() {
        let rows = vec![vec![BigInt::from(1), BigInt::from(1)]];
        let sol = solve_linear(&rows, &[BigInt::from(3)]).unwrap();
        assert_eq!(sol.kernel_dim, 1);
        assert_eq!(sol.determined, vec![None, None]);
    }

    #[test]
    fn dye_small() {
        assert!(!dye_bound(2).holds);
        assert!(!dye_bound(3).holds);
        assert_eq!(dye_bound(5).lhs, BigUint::from(163680u32));
        assert!(dye_bound(4).holds);
    }
}

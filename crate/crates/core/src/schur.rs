//! Necessary conditions for a partition of the transvection class to be the
//! set of principal sets of a commutative Schur ring.
//!
//! Transvections are identified with their nonzero vectors throughout. The
//! statistics `f1..f4` of a block `C` at a point `a`:
//!
//! * `f1`: zero-triangles `{a, b, a+b}` lying inside `C` (unordered pairs
//!   `{b, a+b}`, so that `2 f1 + f2 + f4 + 1 = |C|`),
//! * `f2`: `b` in `C` with `a . b = 1` and `a + b` outside `C`,
//! * `f3`: `|C|`,
//! * `f4`: `b != a` in `C` with `a . b = 0`.
//!
//! Counting `f1` per companion `b` instead would double it and break the
//! counting identity, so pairs are counted.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galg::Multiset;
use crate::gf2::{check_dim, Gf2Vector};
use crate::spgroup::SpElement;

/// Largest dimension for which partitions (and their `2^n` lookup tables)
/// are built.
pub const MAX_PARTITION_DIM: usize = 16;

const NO_BLOCK: u32 = u32::MAX;

/// Membership table for a set of vectors of `F_2^n`.
#[derive(Clone, Debug)]
pub struct VectorSet {
    dim: u8,
    members: Vec<Gf2Vector>,
    table: Vec<bool>,
}

impl VectorSet {
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = Gf2Vector>) -> Result<Self> {
        guard_dim(dim)?;
        let mut table = vec![false; 1 << dim];
        let mut members = Vec::new();
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
            }
            if !table[v.bits() as usize] {
                table[v.bits() as usize] = true;
                members.push(v);
            }
        }
        members.sort();
        Ok(VectorSet { dim: dim as u8, members, table })
    }

    #[inline]
    pub fn contains(&self, v: Gf2Vector) -> bool {
        self.table[v.bits() as usize]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Gf2Vector] {
        &self.members
    }
}

fn guard_dim(dim: usize) -> Result<()> {
    check_dim(dim)?;
    if dim > MAX_PARTITION_DIM {
        return Err(Error::SizeGuard(format!(
            "partitions of the transvection class are limited to n <= {MAX_PARTITION_DIM}"
        )));
    }
    Ok(())
}

/// An ordered partition of the nonzero vectors of `F_2^n` into blocks.
#[derive(Clone, Debug)]
pub struct TPartition {
    dim: u8,
    blocks: Vec<VectorSet>,
    owner: Vec<u32>,
}

impl TPartition {
    /// Checks that the blocks are nonempty, disjoint, avoid zero and cover
    /// every nonzero vector.
    pub fn new(dim: usize, blocks: Vec<Vec<Gf2Vector>>) -> Result<Self> {
        guard_dim(dim)?;
        let mut owner = vec![NO_BLOCK; 1 << dim];
        let mut sets = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {i} is empty")));
            }
            for &v in &block {
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch { left: dim, right: v.dim() });
                }
                if v.is_zero() {
                    return Err(Error::NotAPartition(format!("block {i} contains 0")));
                }
                let slot = &mut owner[v.bits() as usize];
                if *slot != NO_BLOCK && *slot != i as u32 {
                    return Err(Error::NotAPartition(format!(
                        "{v} lies in blocks {} and {i}",
                        *slot
                    )));
                }
                *slot = i as u32;
            }
            sets.push(VectorSet::new(dim, block)?);
        }
        if let Some(bits) = (1..owner.len()).find(|&b| owner[b] == NO_BLOCK) {
            let v = Gf2Vector::new(dim, bits as u32)?;
            return Err(Error::NotAPartition(format!("{v} is not covered")));
        }
        Ok(TPartition { dim: dim as u8, blocks: sets, owner })
    }

    /// The single block of all transvections.
    pub fn whole(dim: usize) -> Result<Self> {
        guard_dim(dim)?;
        Self::new(dim, vec![Gf2Vector::nonzero(dim)?.collect()])
    }

    /// Blocks `{v : label(v) = k}` for `k = 0, 1, ...`; empty labels are
    /// skipped.
    pub fn from_labels(dim: usize, label: impl Fn(Gf2Vector) -> usize) -> Result<Self> {
        guard_dim(dim)?;
        let mut blocks: BTreeMap<usize, Vec<Gf2Vector>> = BTreeMap::new();
        for v in Gf2Vector::nonzero(dim)? {
            blocks.entry(label(v)).or_default().push(v);
        }
        Self::new(dim, blocks.into_values().collect())
    }

    /// `C` followed by its complement in the nonzero vectors.
    pub fn complement_pair(dim: usize, c: impl IntoIterator<Item = Gf2Vector>) -> Result<Self> {
        let c = VectorSet::new(dim, c)?;
        let rest: Vec<_> = Gf2Vector::nonzero(dim)?.filter(|v| !c.contains(*v)).collect();
        Self::new(dim, vec![rest, c.members().to_vec()])
    }

    /// A uniformly random 2-coloring with both colors used.
    pub fn random_two_coloring(dim: usize, seed: u64) -> Result<Self> {
        guard_dim(dim)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut blocks = vec![Vec::new(), Vec::new()];
            for v in Gf2Vector::nonzero(dim)? {
                blocks[rng.gen_range(0..2)].push(v);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                return Self::new(dim, blocks);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[VectorSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &VectorSet {
        &self.blocks[i]
    }

    /// Index of the block containing a nonzero `v`.
    pub fn block_of(&self, v: Gf2Vector) -> usize {
        self.owner[v.bits() as usize] as usize
    }

    /// Block sizes in block order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(VectorSet::len).collect()
    }

    /// One line per block, vectors separated by `;`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let line: Vec<String> = b.members().iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(";"));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`TPartition::to_text`]. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(dim: usize, text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let block = line
                .split(';')
                .map(|s| Gf2Vector::parse(dim, s.trim()))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        Self::new(dim, blocks)
    }
}

/// The four statistics at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FValues {
    pub f1: u64,
    pub f2: u64,
    pub f3: u64,
    pub f4: u64,
}

impl FValues {
    /// `2 f1 + f2 + f4 + 1 = f3`.
    pub fn counting_identity_holds(&self) -> bool {
        2 * self.f1 + self.f2 + self.f4 + 1 == self.f3
    }
}

impl fmt::Display for FValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.f1, self.f2, self.f3, self.f4)
    }
}

/// Statistics of a block: constant values, or the least point whose values
/// differ from those of the least point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FProfile {
    Constant(FValues),
    NonConstant {
        first: Gf2Vector,
        first_values: FValues,
        second: Gf2Vector,
        second_values: FValues,
    },
}

impl FProfile {
    pub fn constant(&self) -> Option<FValues> {
        match self {
            FProfile::Constant(v) => Some(*v),
            FProfile::NonConstant { .. } => None,
        }
    }
}

/// Values of `f1..f4` at every point of `c`, in increasing point order.
pub fn point_values(c: &VectorSet) -> Vec<(Gf2Vector, FValues)> {
    let size = c.len() as u64;
    c.members()
        .iter()
        .map(|&a| {
            let (mut pairs, mut f2, mut f4) = (0u64, 0u64, 0u64);
            for &b in c.members() {
                if b == a {
                    continue;
                }
                if a.dot(b) {
                    if c.contains(a + b) {
                        pairs += 1;
                    } else {
                        f2 += 1;
                    }
                } else {
                    f4 += 1;
                }
            }
            let values = FValues {
                f1: pairs / 2,
                f2,
                f3: size,
                f4,
            };
            (a, values)
        })
        .collect()
}

/// Profile of an arbitrary nonempty set of nonzero vectors.
pub fn f_profile_of(c: &VectorSet) -> FProfile {
    let values = point_values(c);
    let (first, first_values) = values[0];
    match values.iter().find(|(_, v)| *v != first_values) {
        None => FProfile::Constant(first_values),
        Some(&(second, second_values)) => FProfile::NonConstant {
            first,
            first_values,
            second,
            second_values,
        },
    }
}

/// Profile of block `i` of `p`.
pub fn f_profile(p: &TPartition, i: usize) -> FProfile {
    f_profile_of(p.block(i))
}

/// `C^2` split by pair type: products `t_a t_b` over ordered pairs of type
/// `f1`, `f2` and `f4`.
#[derive(Clone, Debug)]
pub struct SquareSplit {
    pub f1: Multiset,
    pub f2: Multiset,
    pub f4: Multiset,
}

impl SquareSplit {
    /// `|C| + 3 S_f1 + S_f2 + 2 S_f4`, which equals the square of `C`.
    pub fn recombine(&self, size: usize) -> Result<Multiset> {
        let dim = self.f1.dim();
        let unit = Multiset::unit(dim)?.scale(&(size as u64).into());
        unit.add(&self.f1.scale(&3u32.into()))?
            .add(&self.f2)?
            .add(&self.f4.scale(&2u32.into()))
    }
}

pub fn square_split(c: &VectorSet) -> Result<SquareSplit> {
    let dim = c.dim();
    let (mut f1, mut f2, mut f4) = (Vec::new(), Vec::new(), Vec::new());
    for &a in c.members() {
        for &b in c.members() {
            if a == b {
                continue;
            }
            let g = SpElement::transvection(a) * SpElement::transvection(b);
            if !a.dot(b) {
                f4.push(g);
            } else if c.contains(a + b) {
                f1.push(g);
            } else {
                f2.push(g);
            }
        }
    }
    Ok(SquareSplit {
        f1: Multiset::indicator(dim, f1)?,
        f2: Multiset::indicator(dim, f2)?,
        f4: Multiset::indicator(dim, f4)?,
    })
}

/// A zero-triangle `{a, b, a+b}` with `a . b = 1`, stored sorted.
pub type Triangle = [Gf2Vector; 3];

/// Zero-triangles meeting a set in exactly two points, and those inside it.
#[derive(Clone, Debug, Default)]
pub struct TriangleSets {
    pub tr2: Vec<Triangle>,
    pub tr3: Vec<Triangle>,
}

pub fn triangle_sets(c: &VectorSet) -> TriangleSets {
    let mut out = TriangleSets::default();
    let m = c.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !a.dot(b) {
                continue;
            }
            let s = a + b;
            let mut t = [a, b, s];
            t.sort();
            if !c.contains(s) {
                out.tr2.push(t);
            } else if s > b {
                out.tr3.push(t);
            }
        }
    }
    out.tr2.sort();
    out.tr3.sort();
    out
}

/// Sum of `t_a + t_b + t_{a+b}` over the given triangles, as point counts.
pub fn sigma_sum(triangles: &[Triangle]) -> BTreeMap<Gf2Vector, u64> {
    let mut out = BTreeMap::new();
    for t in triangles {
        for &v in t {
            *out.entry(v).or_insert(0) += 1;
        }
    }
    out
}

/// `D1`: the two points of each triangle of `Tr2` inside `C`; `D2`: the
/// third point. Both as point counts.
pub fn d1_d2(c: &VectorSet) -> (BTreeMap<Gf2Vector, u64>, BTreeMap<Gf2Vector, u64>) {
    let (mut d1, mut d2) = (BTreeMap::new(), BTreeMap::new());
    for t in triangle_sets(c).tr2 {
        for v in t {
            let side = if c.contains(v) { &mut d1 } else { &mut d2 };
            *side.entry(v).or_insert(0) += 1;
        }
    }
    (d1, d2)
}

/// An edge of the block graph, with the pair of points that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub witness: (Gf2Vector, Gf2Vector),
    /// `(from, to)` when exactly one endpoint has positive `f2`.
    pub orientation: Option<(usize, usize)>,
}

/// Blocks joined when some pair of their points meets.
#[derive(Clone, Debug, Serialize)]
pub struct Gamma1Graph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
    pub f2_positive: Vec<bool>,
}

impl Gamma1Graph {
    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Bipartite as an undirected graph.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.neighbours();
        let mut side = vec![None; self.vertices];
        for s in 0..self.vertices {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Edges whose endpoints are both `f2`-positive or both `f2`-zero.
    pub fn unoriented_edges(&self) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.orientation.is_none()).collect()
    }

    /// The source when the graph is a directed star with one source: one
    /// vertex with an edge oriented to every other vertex and no other edges.
    /// A single vertex is its own source.
    pub fn star_source(&self) -> Option<usize> {
        if self.vertices == 1 {
            return Some(0);
        }
        if self.edges.len() != self.vertices - 1 {
            return None;
        }
        let (source, _) = self.edges.first()?.orientation?;
        let mut reached = vec![false; self.vertices];
        reached[source] = true;
        for e in &self.edges {
            match e.orientation {
                Some((from, to)) if from == source && !reached[to] => reached[to] = true,
                _ => return None,
            }
        }
        Some(source)
    }
}

/// Least meeting pair between two sets, if any.
fn first_meeting(a: &VectorSet, b: &VectorSet) -> Option<(Gf2Vector, Gf2Vector)> {
    a.members()
        .iter()
        .find_map(|&x| b.members().iter().find(|&&y| x.dot(y)).map(|&y| (x, y)))
}

fn f2_positive(profile: &FProfile) -> bool {
    match profile {
        FProfile::Constant(v) => v.f2 > 0,
        FProfile::NonConstant {
            first_values,
            second_values,
            ..
        } => first_values.f2 > 0 || second_values.f2 > 0,
    }
}

pub fn gamma1(p: &TPartition) -> Gamma1Graph {
    let profiles: Vec<_> = (0..p.len()).map(|i| f_profile(p, i)).collect();
    gamma1_with(p, &profiles)
}

fn gamma1_with(p: &TPartition, profiles: &[FProfile]) -> Gamma1Graph {
    let positive: Vec<bool> = profiles.iter().map(f2_positive).collect();
    let mut edges = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if let Some(witness) = first_meeting(p.block(i), p.block(j)) {
                let orientation = match (positive[i], positive[j]) {
                    (true, false) => Some((i, j)),
                    (false, true) => Some((j, i)),
                    _ => None,
                };
                edges.push(Edge { i, j, witness, orientation });
            }
        }
    }
    Gamma1Graph {
        vertices: p.len(),
        edges,
        f2_positive: positive,
    }
}

/// Vectors `v_1, ..., v_{n+1}` with `v_i . v_j = 1` for all `i != j`; the
/// first `n` form a basis.
pub fn pairwise_meeting_basis(n: usize) -> Result<Vec<Gf2Vector>> {
    check_dim(n)?;
    let run = |lo: usize, hi: usize| -> Vec<usize> { (lo..=hi).collect() };
    let mut out = Vec::with_capacity(n + 1);
    for i in 1..=n {
        // odd i = 2k+1: e_1..e_{k+1} + e_{n-k+1}..e_n; even i = 2k:
        // e_1..e_{k-1} + e_{n-k+1}..e_n.
        let k = i / 2;
        let mut idx = if i % 2 == 1 { run(1, k + 1) } else { run(1, k.saturating_sub(1)) };
        idx.extend(run(n - k + 1, n));
        out.push(Gf2Vector::from_indices(n, &idx)?);
    }
    out.push(Gf2Vector::all_ones(n)?);
    Ok(out)
}

/// Outcome of one verifier check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, witness: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Findings of [`verify_partition`].
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub profiles: Vec<FProfile>,
    pub graph: Gamma1Graph,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs the necessary conditions in order: constant statistics, the
/// counting identity, no edge between two `f2`-positive blocks,
/// orthogonality of blocks on the same side, the one-source star shape, and
/// invariance of every block under `t_u` for `u` in an `f2`-zero block.
/// Passing is not a proof that a Schur ring exists.
pub fn verify_partition(p: &TPartition) -> VerificationReport {
    let profiles: Vec<_> = (0..p.len()).map(|i| f_profile(p, i)).collect();
    let graph = gamma1_with(p, &profiles);
    let mut checks = Vec::new();

    let nonconstant = profiles.iter().enumerate().find_map(|(i, pr)| match pr {
        FProfile::Constant(_) => None,
        FProfile::NonConstant {
            first,
            first_values,
            second,
            second_values,
        } => Some(format!(
            "block {i}: {first} has {first_values}, {second} has {second_values}"
        )),
    });
    checks.push(CheckResult::new("f-constancy", nonconstant));

    let identity = profiles.iter().enumerate().find_map(|(i, pr)| {
        let bad = match pr {
            FProfile::Constant(v) => !v.counting_identity_holds(),
            FProfile::NonConstant {
                first_values,
                second_values,
                ..
            } => !first_values.counting_identity_holds() || !second_values.counting_identity_holds(),
        };
        bad.then(|| format!("block {i}"))
    });
    checks.push(CheckResult::new("counting-identity", identity));

    let both_positive = graph
        .edges
        .iter()
        .find(|e| graph.f2_positive[e.i] && graph.f2_positive[e.j])
        .map(|e| format!("blocks {} and {} meet at {} . {}", e.i, e.j, e.witness.0, e.witness.1));
    checks.push(CheckResult::new("no-edge-between-f2-positive", both_positive));

    let same_side = graph
        .edges
        .iter()
        .find(|e| graph.f2_positive[e.i] == graph.f2_positive[e.j])
        .map(|e| format!("blocks {} and {} meet at {} . {}", e.i, e.j, e.witness.0, e.witness.1));
    checks.push(CheckResult::new("same-side-orthogonal", same_side));

    let star = if !graph.is_connected() {
        Some("block graph is disconnected".to_string())
    } else if graph.star_source().is_none() {
        Some(format!("block graph with edges {:?} is not a one-source star", edge_list(&graph)))
    } else {
        None
    };
    checks.push(CheckResult::new("one-source-star", star));

    checks.push(CheckResult::new("conjugation-invariance", conjugation_violation(p, &graph)));

    VerificationReport {
        profiles,
        graph,
        checks,
    }
}

fn edge_list(g: &Gamma1Graph) -> Vec<(usize, usize)> {
    g.edges.iter().map(|e| (e.i, e.j)).collect()
}

fn conjugation_violation(p: &TPartition, graph: &Gamma1Graph) -> Option<String> {
    for (k, block) in p.blocks().iter().enumerate() {
        if graph.f2_positive[k] {
            continue;
        }
        for &u in block.members() {
            for (i, c) in p.blocks().iter().enumerate() {
                for &v in c.members() {
                    let image = if u.dot(v) { v + u } else { v };
                    if p.block_of(image) != i {
                        return Some(format!("t_{{{u}}} moves {v} out of block {i}"));
                    }
                }
            }
        }
    }
    None
}

/// Zero-triangle count from per-point statistics against `(2^n - 1) 2^(n-2) / 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTriangleCount {
    pub from_profiles: Ratio<u64>,
    pub expected: Ratio<u64>,
}

/// `sum over blocks of f1 f3 / 3 + f2 f3 / 2`, using per-point values.
pub fn zero_triangle_count(p: &TPartition) -> ZeroTriangleCount {
    let n = p.dim() as u32;
    let mut sixfold = 0u64;
    for b in p.blocks() {
        for (_, v) in point_values(b) {
            sixfold += 2 * v.f1 + 3 * v.f2;
        }
    }
    ZeroTriangleCount {
        from_profiles: Ratio::new(sixfold, 6),
        expected: Ratio::new(((1u64 << n) - 1) << (n - 2), 3),
    }
}

/// For a two-block partition `C1, C2`: the least `a` in `C1` where
/// `#{b in C2 : a . b = 0}` differs from `2^(n-1) - 2 - f4(C1, a)`.
pub fn orthogonal_count_violation(p: &TPartition) -> Result<Option<Gf2Vector>> {
    if p.len() != 2 {
        return Err(Error::InvalidQuery(format!("expected 2 blocks, got {}", p.len())));
    }
    let half = 1u64 << (p.dim() - 1);
    let c2 = p.block(1);
    for (a, v) in point_values(p.block(0)) {
        let count = c2.members().iter().filter(|b| !a.dot(**b)).count() as u64;
        if count + 2 + v.f4 != half {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// For disjoint sets `C1, C2`: the values `#{a in C1 : a . c = 0}` over
/// `c` in `C2`, collected as a set (a single value when constant).
pub fn orthogonal_counts(c1: &VectorSet, c2: &VectorSet) -> BTreeSet<u64> {
    c2.members()
        .iter()
        .map(|&c| c1.members().iter().filter(|a| !a.dot(c)).count() as u64)
        .collect()
}

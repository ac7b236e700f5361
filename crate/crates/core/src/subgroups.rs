//! Subgroups of `Sp(n, 2)` at small scale: closure from generators,
//! conjugation orbits on the transvection class, and commutativity of the
//! algebra spanned by the `H`-classes of `G`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galg::{commutes, Multiset};
use crate::gf2::{check_dim, Gf2Vector};
use crate::ortho::QuadForm;
use crate::schur::{verify_partition, TPartition, MAX_PARTITION_DIM};
use crate::spgroup::{class_sizes, SpElement};

/// Largest group for which all `H`-classes are built.
pub const MAX_GELFAND_ORDER: usize = 10_000;

/// Generators of a subgroup with a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub dim: usize,
    pub generators: Vec<SpElement>,
    pub label: String,
}

impl SubgroupSpec {
    pub fn new(dim: usize, generators: Vec<SpElement>, label: impl Into<String>) -> Result<Self> {
        check_dim(dim)?;
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: g.dim() });
        }
        Ok(SubgroupSpec { dim, generators, label: label.into() })
    }

    /// The group generated by all transvections.
    pub fn full(dim: usize) -> Result<Self> {
        let gens = Gf2Vector::nonzero(dim)?.map(SpElement::transvection).collect();
        SubgroupSpec::new(dim, gens, "full group")
    }

    /// The group generated by the given transvections.
    pub fn from_transvections(dim: usize, vs: &[Gf2Vector], label: impl Into<String>) -> Result<Self> {
        SubgroupSpec::new(dim, vs.iter().copied().map(SpElement::transvection).collect(), label)
    }

    /// Generators conjugated by `g`.
    pub fn conjugate(&self, g: &SpElement) -> SubgroupSpec {
        SubgroupSpec {
            dim: self.dim,
            generators: self.generators.iter().map(|h| h.conj(g)).collect(),
            label: self.label.clone(),
        }
    }
}

/// All elements of the generated group, in breadth-first order from the
/// identity. Fails with `CapExceeded` once more than `cap` are found.
pub fn close_generators(spec: &SubgroupSpec, cap: usize) -> Result<Vec<SpElement>> {
    let id = SpElement::identity(spec.dim)?;
    let mut seen: HashMap<SpElement, ()> = HashMap::from([(id, ())]);
    let mut order = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &spec.generators {
            let y = x * *g;
            if seen.insert(y, ()).is_none() {
                if order.len() == cap {
                    return Err(Error::CapExceeded(cap));
                }
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Classes as index lists, ordered by least member.
    fn classes(mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            let slot = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(x);
        }
        out
    }
}

/// Orbits of the generated group on nonzero vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    pub orbits: Vec<Vec<Gf2Vector>>,
}

impl Orbits {
    /// Orbit sizes in increasing order.
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        p.sort_unstable();
        p
    }
}

/// Orbits of `v -> v h` on `V#`, by union-find over generator images.
pub fn orbits_on_t(spec: &SubgroupSpec) -> Result<Orbits> {
    let n = spec.dim;
    if n > 24 {
        return Err(Error::SizeGuard(format!("orbit computation is limited to n <= 24, got {n}")));
    }
    let size = (1usize << n) - 1;
    let mut uf = UnionFind::new(size);
    for g in &spec.generators {
        for v in Gf2Vector::nonzero(n)? {
            let w = g.apply(v);
            uf.union(v.bits() as usize - 1, w.bits() as usize - 1);
        }
    }
    let orbits = uf
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| Gf2Vector::new(n, i as u32 + 1)).collect())
        .collect::<Result<_>>()?;
    Ok(Orbits { orbits })
}

/// Outcome of the commutativity test for the `H`-class algebra of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandVerdict {
    pub commutative: bool,
    pub classes: usize,
    pub group_order: usize,
    /// Representatives of two classes whose sums do not commute, and an
    /// element where the products differ.
    pub witness: Option<(SpElement, SpElement, SpElement)>,
}

/// Builds the orbits of `H` acting on `G = Sp(n, 2)` by conjugation and
/// tests every pair of class sums for commutation.
pub fn strong_gelfand_test(spec: &SubgroupSpec) -> Result<GelfandVerdict> {
    let order = class_sizes(spec.dim)?.group_order;
    if order > BigUint::from(MAX_GELFAND_ORDER) {
        return Err(Error::SizeGuard(format!(
            "|Sp({}, 2)| = {order} exceeds {MAX_GELFAND_ORDER}",
            spec.dim
        )));
    }
    let group = close_generators(&SubgroupSpec::full(spec.dim)?, MAX_GELFAND_ORDER)?;
    let index: HashMap<SpElement, usize> = group.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let mut uf = UnionFind::new(group.len());
    for h in &spec.generators {
        for (i, g) in group.iter().enumerate() {
            uf.union(i, index[&g.conj(h)]);
        }
    }
    let classes = uf.classes();
    let sums: Vec<Multiset> = classes
        .iter()
        .map(|c| Multiset::indicator(spec.dim, c.iter().map(|&i| group[i])))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..sums.len())
        .flat_map(|i| (i + 1..sums.len()).map(move |j| (i, j)))
        .collect();
    let failure = pairs
        .par_iter()
        .map(|&(i, j)| commutes(&sums[i], &sums[j]).map(|r| r.err().map(|x| (i, j, x))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by_key(|&(i, j, _)| (i, j));
    Ok(GelfandVerdict {
        commutative: failure.is_none(),
        classes: classes.len(),
        group_order: group.len(),
        witness: failure.map(|(i, j, x)| (group[classes[i][0]], group[classes[j][0]], x)),
    })
}

/// A subgroup with its expected order and orbit profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedSubgroup {
    pub spec: SubgroupSpec,
    pub order: u64,
    pub profile: Vec<usize>,
}

/// `(label, order, profile)` of the subgroups of `Sp(4, 2)` whose
/// class algebras are commutative.
pub const SP4_TARGETS: [(&str, u64, &[usize]); 7] = [
    ("stabilizer of an isotropic line", 48, &[3, 12]),
    ("stabilizer of a vector", 48, &[1, 6, 8]),
    ("stabilizer of a hyperbolic line pair", 72, &[6, 9]),
    ("intransitive S5", 120, &[5, 10]),
    ("transitive S5", 120, &[15]),
    ("A6", 360, &[15]),
    ("full group", 720, &[15]),
];

const SP4_FIXTURE: &str = include_str!("../fixtures/sp4_subgroups.txt");

/// Serializes subgroups as blocks of `label`, `order`, `profile` and `gen`
/// lines separated by blank lines.
pub fn fixture_text(subgroups: &[ListedSubgroup]) -> String {
    let mut out = String::new();
    for s in subgroups {
        out.push_str(&format!("label {}\norder {}\nprofile", s.spec.label, s.order));
        for p in &s.profile {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
        for g in &s.spec.generators {
            out.push_str(&format!("gen {}\n", g.serialize()));
        }
        out.push('\n');
    }
    out
}

pub fn parse_fixture(dim: usize, text: &str) -> Result<Vec<ListedSubgroup>> {
    let mut out = Vec::new();
    for block in text.split("\n\n").map(str::trim).filter(|b| !b.is_empty()) {
        let (mut label, mut order, mut profile, mut gens) = (None, None, Vec::new(), Vec::new());
        for line in block.lines().filter(|l| !l.starts_with('#')) {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let bad = |what: &str| Error::Parse(format!("bad {what} line {line:?}"));
            match key {
                "label" => label = Some(rest.to_string()),
                "order" => order = Some(rest.parse::<u64>().map_err(|_| bad("order"))?),
                "profile" => {
                    profile = rest
                        .split_whitespace()
                        .map(|p| p.parse::<usize>().map_err(|_| bad("profile")))
                        .collect::<Result<_>>()?
                }
                "gen" => gens.push(SpElement::parse(rest)?),
                _ => return Err(bad("fixture")),
            }
        }
        let label = label.ok_or_else(|| Error::Parse("fixture block without label".into()))?;
        let order = order.ok_or_else(|| Error::Parse(format!("{label}: missing order")))?;
        out.push(ListedSubgroup { spec: SubgroupSpec::new(dim, gens, label)?, order, profile });
    }
    Ok(out)
}

/// The `Sp(4, 2)` subgroups stored with the crate.
pub fn sp4_fixture() -> Result<Vec<ListedSubgroup>> {
    parse_fixture(4, SP4_FIXTURE)
}

/// Finds generator pairs for each entry of `SP4_TARGETS` by sampling random
/// pairs of group elements until the closure has the target order and orbit
/// profile.
pub fn search_sp4_subgroups(seed: u64, max_attempts: usize) -> Result<Vec<ListedSubgroup>> {
    let group = close_generators(&SubgroupSpec::full(4)?, MAX_GELFAND_ORDER)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    for (label, order, profile) in SP4_TARGETS {
        let mut hit = None;
        for _ in 0..max_attempts {
            let gens: Vec<SpElement> = group.choose_multiple(&mut rng, 2).copied().collect();
            let spec = SubgroupSpec::new(4, gens, label)?;
            let Ok(elems) = close_generators(&spec, order as usize) else {
                continue;
            };
            if elems.len() as u64 == order && orbits_on_t(&spec)?.profile() == profile {
                hit = Some(spec);
                break;
            }
        }
        let spec = hit.ok_or(Error::CapExceeded(max_attempts))?;
        found.push(ListedSubgroup { spec, order, profile: profile.to_vec() });
    }
    Ok(found)
}

/// One line of `verify_listed_subgroups`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedCheck {
    pub label: String,
    pub expected_order: u64,
    /// `None` when the closure was not computed.
    pub order: Option<u64>,
    pub expected_profile: Vec<usize>,
    pub profile: Vec<usize>,
    /// `None` when the group is too large for the commutativity test.
    pub gelfand: Option<bool>,
    /// Whether the orbit partition passes the partition checks, for `n = 6`.
    pub partition_checks: Option<bool>,
}

impl ListedCheck {
    pub fn order_matches(&self) -> bool {
        self.order.is_none_or(|o| o == self.expected_order)
    }

    pub fn passed(&self) -> bool {
        self.order_matches()
            && self.profile == self.expected_profile
            && self.gelfand != Some(false)
            && self.partition_checks != Some(false)
    }
}

impl fmt::Display for ListedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: order ", self.label)?;
        match self.order {
            Some(o) => write!(f, "{o}")?,
            None => write!(f, "not computed")?,
        }
        write!(f, " (listed {}), profile {:?}", self.expected_order, self.profile)
    }
}

fn check_listed(l: &ListedSubgroup, with_gelfand: bool, order_cap: usize) -> Result<ListedCheck> {
    let order = match close_generators(&l.spec, order_cap) {
        Ok(e) => Some(e.len() as u64),
        Err(Error::CapExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let orbits = orbits_on_t(&l.spec)?;
    let gelfand = if with_gelfand { Some(strong_gelfand_test(&l.spec)?.commutative) } else { None };
    let partition_checks = if !with_gelfand && l.spec.dim <= MAX_PARTITION_DIM {
        let p = TPartition::new(l.spec.dim, orbits.orbits.clone())?;
        Some(verify_partition(&p).all_passed())
    } else {
        None
    };
    Ok(ListedCheck {
        label: l.spec.label.clone(),
        expected_order: l.order,
        order,
        expected_profile: l.profile.clone(),
        profile: orbits.profile(),
        gelfand,
        partition_checks,
    })
}

/// Order 25920 listed for the orthogonal block at `n = 6`.
pub const LISTED_SO_MINUS_6_ORDER: u64 = 25920;

/// The listed subgroups for `n` in `{2, 4, 6}` with computed order, orbit
/// profile and commutativity (`n <= 4`) or partition checks (`n = 6`).
pub fn verify_listed_subgroups(n: usize) -> Result<Vec<ListedCheck>> {
    let listed: Vec<ListedSubgroup> = match n {
        2 => {
            let (e1, e2) = (Gf2Vector::basis(2, 1)?, Gf2Vector::basis(2, 2)?);
            let rotation = SpElement::product_of_transvections(2, &[e1, e2])?;
            vec![
                ListedSubgroup {
                    spec: SubgroupSpec::from_transvections(2, &[e1], "transvection subgroup")?,
                    order: 2,
                    profile: vec![1, 2],
                },
                ListedSubgroup {
                    spec: SubgroupSpec::new(2, vec![rotation], "order-3 subgroup")?,
                    order: 3,
                    profile: vec![3],
                },
                ListedSubgroup { spec: SubgroupSpec::full(2)?, order: 6, profile: vec![3] },
            ]
        }
        4 => sp4_fixture()?,
        6 => {
            let q = QuadForm::standard(6, true)?;
            let so = q.so_transvections()?;
            vec![
                ListedSubgroup {
                    spec: SubgroupSpec::from_transvections(6, &so, "orthogonal minus block")?,
                    order: LISTED_SO_MINUS_6_ORDER,
                    profile: vec![27, 36],
                },
                ListedSubgroup { spec: SubgroupSpec::full(6)?, order: 1_451_520, profile: vec![63] },
            ]
        }
        _ => return Err(Error::InvalidDimension(n)),
    };
    // The full group at n = 6 is not closed; its order is known in closed form.
    let cap = if n == 6 { 100_000 } else { MAX_GELFAND_ORDER };
    listed.iter().map(|l| check_listed(l, n <= 4, cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_closures() {
        let e1 = Gf2Vector::basis(2, 1).unwrap();
        let spec = SubgroupSpec::from_transvections(2, &[e1], "t").unwrap();
        assert_eq!(close_generators(&spec, 10).unwrap().len(), 2);
        assert_eq!(close_generators(&SubgroupSpec::full(4).unwrap(), 1000).unwrap().len(), 720);
        assert!(matches!(
            close_generators(&SubgroupSpec::full(4).unwrap(), 100),
            Err(Error::CapExceeded(100))
        ));
    }

    #[test]
    fn full_group_is_transitive() {
        for n in [2, 4, 6, 8] {
            let o = orbits_on_t(&SubgroupSpec::full(n).unwrap()).unwrap();
            assert_eq!(o.profile(), vec![(1 << n) - 1]);
        }
    }

    #[test]
    fn trivial_subgroup_is_not_gelfand() {
        let spec = SubgroupSpec::new(4, vec![], "trivial").unwrap();
        let v = strong_gelfand_test(&spec).unwrap();
        assert!(!v.commutative);
        assert_eq!(v.classes, 720);
        assert!(v.witness.is_some());
        let g = strong_gelfand_test(&SubgroupSpec::full(4).unwrap()).unwrap();
        assert!(g.commutative);
        assert_eq!(g.classes, 11);
    }

    #[test]
    fn fixture_round_trips() {
        let f = sp4_fixture().unwrap();
        assert_eq!(parse_fixture(4, &fixture_text(&f)).unwrap(), f);
    }
}

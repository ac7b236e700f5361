use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use spschur::factorize::{enumerate, FactorQuery};
use spschur::galg::commutes;
use spschur::ortho::QuadForm;
use spschur::{Gf2Vector, Multiset, SpElement, Subspace};

fn vector(n: usize) -> impl Strategy<Value = Gf2Vector> {
    (1u32..(1 << n)).prop_map(move |b| Gf2Vector::new(n, b).unwrap())
}

/// Products of up to 12 random transvections.
fn element(n: usize) -> impl Strategy<Value = SpElement> {
    prop::collection::vec(vector(n), 0..12)
        .prop_map(move |vs| SpElement::product_of_transvections(n, &vs).unwrap())
}

fn multiset(n: usize) -> impl Strategy<Value = Multiset> {
    prop::collection::vec((element(n), 1u32..4), 1..6).prop_map(move |terms| {
        let mut m = Multiset::empty(n).unwrap();
        for (g, c) in terms {
            m.add_term(g, BigUint::from(c)).unwrap();
        }
        m
    })
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(n), 0..n).prop_map(move |vs| Subspace::span(n, vs).unwrap())
}

/// The image of the standard basis `(e_1, e_n), (e_2, e_(n-1)), ...` under `g`.
fn symplectic_basis(g: &SpElement) -> Vec<Gf2Vector> {
    let n = g.dim();
    (1..=n / 2)
        .flat_map(|i| [i, n + 1 - i])
        .map(|i| g.apply(Gf2Vector::basis(n, i).unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convolution_is_associative(a in multiset(4), b in multiset(4), c in multiset(4)) {
        let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
        let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn convolution_multiplies_mass(a in multiset(4), b in multiset(4)) {
        prop_assert_eq!(a.convolve(&b).unwrap().mass(), a.mass() * b.mass());
    }

    #[test]
    fn convolution_is_conjugation_equivariant(a in multiset(4), b in multiset(4), g in element(4)) {
        let lhs = a.convolve(&b).unwrap().conjugate(&g).unwrap();
        let rhs = a.conjugate(&g).unwrap().convolve(&b.conjugate(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn perp_is_an_involution(u in (1usize..=5).prop_flat_map(|m| subspace(2 * m))) {
        let n = u.ambient_dim();
        let p = u.perp();
        prop_assert_eq!(u.rank() + p.rank(), n);
        prop_assert_eq!(p.perp(), u);
    }

    #[test]
    fn polarization_holds(diag in 0u32..256, u in vector(8), v in vector(8)) {
        let q = QuadForm::from_diagonal(8, diag).unwrap();
        prop_assert_eq!(q.eval(u + v), q.eval(u) ^ q.eval(v) ^ u.dot(v));
    }

    #[test]
    fn factorizations_match_brute_force(vs in prop::collection::vec(vector(4), 1..=3)) {
        let k = vs.len();
        let target = SpElement::product_of_transvections(4, &vs).unwrap();
        let found: BTreeSet<_> = enumerate(&FactorQuery::new(target, k)).unwrap().into_iter().collect();
        let all: Vec<_> = Gf2Vector::nonzero(4).unwrap().collect();
        let mut brute = BTreeSet::new();
        let mut tuple = vec![0usize; k];
        loop {
            let t: Vec<_> = tuple.iter().map(|&i| all[i]).collect();
            if SpElement::product_of_transvections(4, &t).unwrap() == target {
                brute.insert(t);
            }
            let Some(pos) = (0..k).rev().find(|&p| tuple[p] + 1 < all.len()) else { break };
            tuple[pos] += 1;
            tuple[pos + 1..].iter_mut().for_each(|x| *x = 0);
        }
        prop_assert!(brute.contains(&vs));
        prop_assert_eq!(found, brute);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn arf_is_basis_independent(
        (q, g) in (1usize..=4).prop_flat_map(|m| {
            let n = 2 * m;
            ((0u32..1 << n).prop_map(move |d| QuadForm::from_diagonal(n, d).unwrap()), element(n))
        })
    ) {
        let basis = symplectic_basis(&g);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                prop_assert_eq!(a.dot(*b), i / 2 == j / 2 && i != j);
            }
        }
        prop_assert_eq!(q.arf_over(&basis), q.arf());
    }

    #[test]
    fn restrictions_of_commuting_pairs_commute(
        n in prop_oneof![Just(4usize), Just(6usize)],
        colors in any::<u64>(),
        w in prop::collection::vec(any::<u32>(), 1..5),
    ) {
        // Complementary blocks commute because their sum is central.
        let all: Vec<_> = Gf2Vector::nonzero(n).unwrap().collect();
        let (c, d): (Vec<_>, Vec<_>) = all.iter().partition(|v| colors >> (v.bits() % 64) & 1 == 1);
        let c_bar = Multiset::transvections(n, c.clone()).unwrap();
        let d_bar = Multiset::transvections(n, d.clone()).unwrap();
        prop_assert!(commutes(&c_bar, &d_bar).unwrap().is_ok());
        let mask = (1u32 << n) - 1;
        let w = Subspace::span(n, w.iter().filter_map(|b| Gf2Vector::new(n, b & mask).ok())).unwrap();
        let c_w = Multiset::transvections(n, c.into_iter().filter(|v| w.contains(*v))).unwrap();
        let d_w = Multiset::transvections(n, d.into_iter().filter(|v| w.contains(*v))).unwrap();
        prop_assert!(commutes(&c_w, &d_w).unwrap().is_ok());
    }
}

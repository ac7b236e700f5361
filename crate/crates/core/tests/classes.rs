use std::collections::BTreeSet;

use num_bigint::BigUint;
use spschur::spgroup::class_sizes;
use spschur::{ClassTag, Gf2Vector, Multiset, SpElement};

struct Enumerated {
    tt0: BTreeSet<SpElement>,
    tt1: BTreeSet<SpElement>,
    zero_triangles: usize,
}

fn enumerate_pairs(n: usize) -> Enumerated {
    let all: Vec<_> = Gf2Vector::nonzero(n).unwrap().collect();
    let mut out = Enumerated {
        tt0: BTreeSet::new(),
        tt1: BTreeSet::new(),
        zero_triangles: 0,
    };
    for &a in &all {
        for &b in &all {
            if a == b {
                continue;
            }
            let g = SpElement::transvection(a) * SpElement::transvection(b);
            if a.dot(b) {
                out.tt1.insert(g);
                if a.bits() < b.bits() && b.bits() < (a + b).bits() {
                    out.zero_triangles += 1;
                }
            } else {
                out.tt0.insert(g);
            }
        }
    }
    out
}

#[test]
fn class_sizes_match_enumeration() {
    for n in [2, 4, 6] {
        let sizes = class_sizes(n).unwrap();
        let e = enumerate_pairs(n);
        let t = (1u64 << n) - 1;
        assert_eq!(sizes.transvections, BigUint::from(t));
        assert_eq!(sizes.tt0, BigUint::from(e.tt0.len()), "n={n}");
        assert_eq!(sizes.tt1, BigUint::from(e.tt1.len()), "n={n}");
        assert_eq!(sizes.zero_triangles, BigUint::from(e.zero_triangles), "n={n}");
        assert_eq!(e.tt0.len() as u64, t * ((1 << (n - 2)) - 1));
        assert_eq!(e.tt1.len() as u64, t * (1 << (n - 1)) / 3);
        assert_eq!(e.zero_triangles as u64, t * (1 << (n - 2)) / 3);
    }
}

#[test]
fn pair_split_at_four() {
    let e = enumerate_pairs(4);
    assert!(e.tt0.is_disjoint(&e.tt1));
    assert!(e.tt0.iter().all(|g| g.class_tag() == ClassTag::TT0));
    assert!(e.tt1.iter().all(|g| g.class_tag() == ClassTag::TT1));
    assert_eq!((e.tt0.len(), e.tt1.len()), (45, 40));
}

#[test]
fn class_square_decomposition() {
    for n in [4, 6] {
        let t = Multiset::transvection_class(n).unwrap();
        let sq = t.convolve(&t).unwrap();
        let e = enumerate_pairs(n);
        let id = SpElement::identity(n).unwrap();
        assert_eq!(sq.coefficient_u64(&id), (1 << n) - 1);
        assert_eq!(sq.support_len(), 1 + e.tt0.len() + e.tt1.len());
        for g in &e.tt0 {
            assert_eq!(sq.coefficient_u64(g), 2);
        }
        for g in &e.tt1 {
            assert_eq!(sq.coefficient_u64(g), 3);
        }
    }
}

use std::collections::BTreeSet;

use spschur::cases::{frame_product, frame_vector};
use spschur::factorize::{enumerate, Constraint, FactorQuery};
use spschur::{Gf2Vector, SpElement};

fn pairs_for(a: Gf2Vector, b: Gf2Vector) -> BTreeSet<Vec<Gf2Vector>> {
    let target = SpElement::transvection(a) * SpElement::transvection(b);
    enumerate(&FactorQuery::new(target, 2)).unwrap().into_iter().collect()
}

fn frame_tuples(n: usize, list: &[[&str; 3]]) -> BTreeSet<Vec<Gf2Vector>> {
    list.iter()
        .map(|t| t.iter().map(|s| frame_vector(n, s).unwrap()).collect())
        .collect()
}

#[test]
fn meeting_pair_has_three_factorizations() {
    let n = 6;
    for a in Gf2Vector::nonzero(n).unwrap().step_by(7) {
        for b in Gf2Vector::nonzero(n).unwrap().step_by(11).filter(|b| a.dot(*b)) {
            let want: BTreeSet<_> = [vec![a, b], vec![b, a + b], vec![a + b, a]].into();
            assert_eq!(pairs_for(a, b), want, "a={a} b={b}");
        }
    }
}

#[test]
fn orthogonal_pair_has_two_factorizations() {
    let n = 6;
    for a in Gf2Vector::nonzero(n).unwrap().step_by(7) {
        for b in Gf2Vector::nonzero(n).unwrap().step_by(5).filter(|b| *b != a && !a.dot(*b)) {
            let want: BTreeSet<_> = [vec![a, b], vec![b, a]].into();
            assert_eq!(pairs_for(a, b), want, "a={a} b={b}");
        }
    }
}

#[test]
fn no_transvection_is_a_product_of_two() {
    let n = 4;
    let all: Vec<_> = Gf2Vector::nonzero(n).unwrap().collect();
    for &c in &all {
        assert!(enumerate(&FactorQuery::new(SpElement::transvection(c), 2)).unwrap().is_empty());
        // Brute-force oracle over all ordered pairs.
        for &x in &all {
            for &y in &all {
                assert_ne!(SpElement::transvection(x) * SpElement::transvection(y), SpElement::transvection(c));
            }
        }
    }
}

#[test]
fn sixteen_triples_for_frame_element() {
    let n = 6;
    let target = frame_product(n, &["2,n", "1", "n"]).unwrap();
    let listed = frame_tuples(
        n,
        &[
            ["1,2", "1", "1,2,n"],
            ["1,2", "1,2,n", "2,n"],
            ["1,2", "2,n", "1"],
            ["1", "1,2", "1,2,n"],
            ["1", "n", "1,2"],
            ["1", "1,2,n", "n"],
            ["n", "1,2", "2,n"],
            ["n", "1,n", "1,2"],
            ["n", "2,n", "1,n"],
            ["1,2,n", "n", "2,n"],
            ["1,2,n", "2,n", "n"],
            ["1,n", "1,2", "1"],
            ["1,n", "1", "1,2"],
            ["2,n", "1", "n"],
            ["2,n", "n", "1,n"],
            ["2,n", "1,n", "1"],
        ],
    );
    assert_eq!(listed.len(), 16);
    let found: BTreeSet<_> = enumerate(&FactorQuery::new(target, 3)).unwrap().into_iter().collect();
    assert_eq!(found, listed);
}

#[test]
fn four_triples_with_orthogonal_tail() {
    let n = 6;
    let target = frame_product(n, &["n", "2,n", "1,n"]).unwrap();
    let q = FactorQuery::new(target, 3).with_constraint(Constraint::Orthogonal { first: 1, second: 2 });
    let listed = frame_tuples(
        n,
        &[
            ["1,2,n", "n", "2,n"],
            ["1,n", "1", "1,2"],
            ["1,2,n", "2,n", "n"],
            ["1,n", "1,2", "1"],
        ],
    );
    let found: BTreeSet<_> = enumerate(&q).unwrap().into_iter().collect();
    assert_eq!(found, listed);
}

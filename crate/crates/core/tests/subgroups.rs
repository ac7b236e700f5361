use std::collections::HashSet;

use spschur::subgroups::{
    close_generators,
    fixture_text, orbits_on_t, search_sp4_subgroups, sp4_fixture, strong_gelfand_test,
    verify_listed_subgroups, SubgroupSpec, LISTED_SO_MINUS_6_ORDER, SP4_TARGETS,
};

/// Rewrites `fixtures/sp4_subgroups.txt` from a seeded search.
/// Run with `cargo test -p spschur --test subgroups -- --ignored`.
#[test]
#[ignore]
fn regenerate_sp4_fixture() {
    let found = search_sp4_subgroups(7, 200_000).unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sp4_subgroups.txt");
    std::fs::write(path, fixture_text(&found)).unwrap();
}

#[test]
fn fixture_covers_targets() {
    let f = sp4_fixture().unwrap();
    assert_eq!(f.len(), SP4_TARGETS.len());
    for (l, (label, order, profile)) in f.iter().zip(SP4_TARGETS) {
        assert_eq!((l.spec.label.as_str(), l.order, l.profile.as_slice()), (label, order, profile));
    }
}

#[test]
fn listed_subgroups_small() {
    for n in [2, 4] {
        for c in verify_listed_subgroups(n).unwrap() {
            assert!(c.passed(), "n={n}: {c}");
            assert_eq!(c.gelfand, Some(true));
        }
    }
}

#[test]
fn listed_subgroups_six() {
    let checks = verify_listed_subgroups(6).unwrap();
    let so = &checks[0];
    assert_eq!(so.profile, vec![27, 36]);
    assert_eq!(so.partition_checks, Some(true));
    // The transvections of the form generate the full orthogonal group, of
    // twice the listed order.
    assert_eq!(so.order, Some(2 * LISTED_SO_MINUS_6_ORDER));
    assert_eq!(checks[1].profile, vec![63]);
    assert_eq!(checks[1].order, None);
}

#[test]
fn order_three_subgroup_of_sp2_is_gelfand() {
    let c = verify_listed_subgroups(2).unwrap();
    assert_eq!(c[1].profile, vec![3]);
    assert!(strong_gelfand_test(&SubgroupSpec::full(2).unwrap()).unwrap().commutative);
}

#[test]
fn gelfand_passes_to_overgroups() {
    let f = sp4_fixture().unwrap();
    let g = close_generators(&SubgroupSpec::full(4).unwrap(), 1000).unwrap();
    let elements: Vec<HashSet<_>> = f
        .iter()
        .map(|l| close_generators(&l.spec, 1000).unwrap().into_iter().collect())
        .collect();
    let mut chains = 0;
    for (h, small) in f.iter().zip(&elements) {
        assert!(strong_gelfand_test(&h.spec).unwrap().commutative);
        for (k, big) in f.iter().zip(&elements) {
            let contained = big.len() > small.len()
                && g.iter().any(|x| h.spec.generators.iter().all(|y| big.contains(&y.conj(x))));
            if contained {
                assert!(strong_gelfand_test(&k.spec).unwrap().commutative);
                chains += 1;
            }
        }
    }
    // The six proper subgroups are maximal, so each chain ends at the full group.
    assert_eq!(chains, 6);
}

#[test]
fn orbit_profile_is_conjugation_invariant() {
    let g = close_generators(&SubgroupSpec::full(4).unwrap(), 1000).unwrap();
    for l in sp4_fixture().unwrap() {
        for x in g.iter().step_by(37) {
            assert_eq!(orbits_on_t(&l.spec.conjugate(x)).unwrap().profile(), l.profile);
        }
    }
}

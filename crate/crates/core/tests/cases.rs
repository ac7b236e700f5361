use spschur::cases::*;
use spschur::Gf2Vector;

#[test]
fn three_blocks_pair_counts() {
    for n in [6, 8] {
        let c = three_blocks_in_w(n).unwrap();
        assert!(c.facts.iter().all(|f| f.holds), "n={n}: {:?}", c.facts);
        assert!(c.is_ordered(3, 5), "n={n}: {:?}", c.counts);
        assert_eq!(c.min_length, Some(5));
        assert_eq!(c.support_dim, 4);
    }
}

#[test]
fn isotropic_half_space_counts() {
    for n in [6, 8] {
        let c = isotropic_half_space(n).unwrap();
        assert!(c.facts.iter().all(|f| f.holds), "n={n}: {:?}", c.facts);
        assert!(c.is_ordered(4, 0), "n={n}: {:?}", c.counts);
        assert_eq!(c.support_dim, 5);
    }
}

#[test]
fn two_meeting_directions_counts() {
    for n in [6, 8] {
        let c = two_meeting_directions(n).unwrap();
        assert!(c.facts.iter().all(|f| f.holds), "n={n}: {:?}", c.facts);
        assert!(c.is_ordered(6, 3), "n={n}: {:?}", c.counts);
    }
}

#[test]
fn split_frame_counts() {
    for n in [6, 8] {
        let c = split_frame(n).unwrap();
        assert!(c.facts.iter().all(|f| f.holds), "n={n}: {:?}", c.facts);
        assert!(c.is_ordered(3, 5), "n={n}: {:?}", c.counts);
    }
}

#[test]
fn path_cube_spectrum_and_differences() {
    for n in [6, 8] {
        let c = path_cube(n).unwrap();
        let want: Vec<num_bigint::BigUint> = PATH_CUBE_SPECTRUM.iter().map(|&k| k.into()).collect();
        assert_eq!(c.spectrum, want, "n={n}");
        // X1 and X3 do not commute, but never with coefficients 1 and 3.
        assert!(c.first_difference.is_some());
        assert!(c.has_difference(3, 5) && c.has_difference(5, 3));
        assert!(!c.has_difference(1, 3) && !c.has_difference(3, 1));
        assert!(c.listed.is_ordered(17, 17));
    }
}

#[test]
fn three_to_one_families_at_four() {
    use spschur::factorize::{enumerate, FactorQuery};
    use spschur::SpElement;
    for a in Gf2Vector::nonzero(4).unwrap() {
        let fam = three_to_one_families(a).unwrap();
        assert_eq!(fam, three_to_one_brute_force(a).unwrap(), "a={a}");
        let found: std::collections::BTreeSet<_> =
            enumerate(&FactorQuery::new(SpElement::transvection(a), 3)).unwrap().into_iter().collect();
        assert_eq!(found, fam, "a={a}");
    }
}

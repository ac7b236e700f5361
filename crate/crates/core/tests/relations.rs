use num_bigint::BigInt;
use num_rational::BigRational;
use spschur::relations::{
    integrality_scan, so_closed_form, solve_case, symmetric_closed_form_a1, Family, Verdict,
};

#[test]
fn symmetric_a1_matches_closed_form() {
    for family in [Family::SymNplus1, Family::SymNplus2] {
        for n in (6..=40).step_by(2) {
            let s = solve_case(family, 2, n).unwrap();
            let closed = symmetric_closed_form_a1(family, n).unwrap();
            assert_eq!(s.value("a1"), Some(&closed), "{family} n={n}");
            let cert = s.certificate.unwrap();
            let ratio = BigRational::new(
                cert.numerator.parse::<BigInt>().unwrap(),
                cert.denominator.parse::<BigInt>().unwrap(),
            );
            assert_eq!(ratio, closed);
        }
    }
}

#[test]
fn symmetric_two_block_scans() {
    for row in integrality_scan(Family::SymNplus1, 2, 8, 64).unwrap() {
        assert!(matches!(row.solution.verdict, Verdict::Infeasible { .. }), "n={}", row.n);
    }
    for row in integrality_scan(Family::SymNplus2, 2, 14, 64).unwrap() {
        assert!(matches!(row.solution.verdict, Verdict::Infeasible { .. }), "n={}", row.n);
    }
}

#[test]
fn three_block_scans_fail_half_integrality() {
    for family in Family::ALL {
        for row in integrality_scan(family, 3, 6, 64).unwrap() {
            let s = &row.solution;
            assert!(matches!(s.verdict, Verdict::Infeasible { .. }), "{family} n={}", row.n);
            let cert = s.certificate.as_ref().unwrap();
            assert_eq!(cert.variable, "lambda2");
            assert_ne!(cert.half_integer_residue, "0", "{family} n={}", row.n);
        }
    }
}

#[test]
fn orthogonal_two_block_matches_closed_form() {
    for family in [Family::SOplus, Family::SOminus] {
        for n in (6..=40).step_by(2) {
            let s = solve_case(family, 2, n).unwrap();
            assert_eq!(s.verdict, Verdict::Feasible, "{family} n={n}");
            assert_eq!(s.profile_values(), so_closed_form(family, n), "{family} n={n}");
        }
    }
}

#[test]
fn solved_profiles_match_geometry() {
    for family in [Family::SOplus, Family::SOminus] {
        for n in [4, 6, 8, 10] {
            let c = spschur::relations::cross_check_profiles(family, n).unwrap();
            assert!(c.agrees(), "{family} n={n}: {:?} vs {:?}", c.geometric(), c.solved);
        }
    }
}

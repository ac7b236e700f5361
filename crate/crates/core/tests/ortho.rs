use num_bigint::BigInt;
use spschur::ortho::*;
use spschur::schur::FProfile;
use spschur::Gf2Vector;

#[test]
fn so_sizes_by_enumeration() {
    for n in [2, 4, 6, 8, 10] {
        for (alpha, sign) in [(false, Sign::Plus), (true, Sign::Minus)] {
            let q = QuadForm::standard(n, alpha).unwrap();
            assert_eq!(q.sign(), sign);
            let count = Gf2Vector::nonzero(n).unwrap().filter(|v| q.eval(*v)).count() as u64;
            assert_eq!(count, so_transvection_count(n, sign), "n={n} {sign:?}");
            assert_eq!(q.so_transvections().unwrap().len() as u64, count);
        }
    }
}

#[test]
fn f4_of_orthogonal_blocks() {
    for n in [8, 10] {
        for alpha in [false, true] {
            let q = QuadForm::standard(n, alpha).unwrap();
            assert_eq!(f4_of_so(&q).unwrap(), Ok((1 << (n - 2)) - 1), "n={n} alpha={alpha}");
        }
    }
    // Below n = 8 the value is recorded from enumeration.
    let recorded: Vec<_> = [4, 6]
        .iter()
        .flat_map(|&n| [false, true].map(|a| f4_of_so(&QuadForm::standard(n, a).unwrap()).unwrap()))
        .collect();
    assert_eq!(recorded, vec![Ok(3), Ok(3), Ok(15), Ok(15)]);
    assert!(!matches!(recorded[0], Err(FProfile::Constant(_))));
}

#[test]
fn k_recursion() {
    assert_eq!(characteristic_polynomial(&K_MATRIX), EXPECTED_CHAR_POLY.to_vec());
    let base = [31, 31, 32, 32, 1];
    assert_eq!(k_power_apply(1, &base), [127, 127, 128, 128, 1].map(BigInt::from));
    for m in 0..=12 {
        assert_eq!(k_power_apply(m, &base), k_closed_form(m), "m={m}");
    }
}

#[test]
fn direct_counts_follow_recursion() {
    for (n, m) in [(8, 0), (10, 1)] {
        let counts = n_eps_delta(&path_basis(n, n).unwrap()).unwrap();
        let want = k_closed_form(m);
        for i in 0..4 {
            assert_eq!(BigInt::from(counts[i]), want[i], "n={n}");
        }
    }
}

#[test]
fn basis_form_is_invariant_under_its_transvections() {
    let basis = path_basis(6, 6).unwrap();
    let q = QuadForm::from_basis(&basis).unwrap();
    for b in &basis {
        let t = spschur::SpElement::transvection(*b);
        for v in Gf2Vector::nonzero(6).unwrap() {
            assert_eq!(q.eval(t.apply(v)), q.eval(v));
        }
    }
    // Q(a) = Q(b) = 1 and a . b = 1 force Q(a + b) = 1.
    let ones = q.so_transvections().unwrap();
    for &a in &ones {
        for &b in &ones {
            if a.dot(b) {
                assert!(q.eval(a + b));
            }
        }
    }
}

#[test]
fn arf_characterizations_agree() {
    for n in [2, 4, 6, 8] {
        for alpha in [false, true] {
            let q = QuadForm::standard(n, alpha).unwrap();
            assert_eq!(q.arf(), alpha);
            assert_eq!(q.majority_value().unwrap(), alpha);
            assert_eq!(q.has_singular_half_space().unwrap(), !alpha);
        }
    }
}

use spschur::ortho::QuadForm;
use spschur::schur::{point_values, verify_partition, zero_triangle_count, FValues, TPartition, VectorSet};
use spschur::Gf2Vector;

/// Direct count of the four statistics at `a`.
fn oracle_values(c: &VectorSet, a: Gf2Vector) -> FValues {
    let mut v = FValues { f1: 0, f2: 0, f3: c.len() as u64, f4: 0 };
    for &b in c.members() {
        if b == a {
            continue;
        }
        if !a.dot(b) {
            v.f4 += 1;
        } else if c.contains(a + b) {
            v.f1 += 1;
        } else {
            v.f2 += 1;
        }
    }
    v.f1 /= 2;
    v
}

fn assert_passing(p: &TPartition, label: &str) {
    let report = verify_partition(p);
    assert!(report.all_passed(), "{label}: {:?}", report.first_failure());
    for (block, profile) in p.blocks().iter().zip(&report.profiles) {
        let v = profile.constant().expect("constant profile");
        assert!(v.counting_identity_holds(), "{label}: {v}");
        for (a, got) in point_values(block) {
            assert_eq!(got, oracle_values(block, a), "{label}: point {a}");
        }
    }
    let z = zero_triangle_count(p);
    assert_eq!(z.from_profiles, z.expected, "{label}");
}

#[test]
fn whole_class_passes() {
    for n in [4, 6, 8] {
        assert_passing(&TPartition::whole(n).unwrap(), &format!("whole n={n}"));
    }
}

#[test]
fn orthogonal_pairs_pass() {
    for n in [6, 8] {
        for alpha in [false, true] {
            let q = QuadForm::standard(n, alpha).unwrap();
            let p = TPartition::complement_pair(n, q.so_transvections().unwrap()).unwrap();
            assert_passing(&p, &format!("n={n} alpha={alpha}"));
        }
    }
}

#[test]
fn random_colorings_fail() {
    for seed in 0..100 {
        let p = TPartition::random_two_coloring(6, seed).unwrap();
        let report = verify_partition(&p);
        assert!(report.first_failure().is_some(), "seed {seed} passed");
    }
}

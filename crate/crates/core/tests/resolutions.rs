use jetdiff::chow::{Degree, VarietySpec};
use jetdiff::poly::Poly;
use jetdiff::vanish::*;
use num_bigint::BigInt;

#[test]
fn hypersurface_resolution_is_exact() {
    let v = VarietySpec::hypersurface(4, Degree::Symbolic).unwrap();
    for b1 in 1..=4 {
        for b2 in 1..=b1.min(3) {
            let terms = resolution_hypersurface(b1, b2).unwrap();
            assert_eq!(
                alternating_chi(&v, &terms).unwrap(),
                Poly::zero(),
                "({}, {})",
                b1,
                b2
            );
            assert_eq!(alternating_rank(&v, &terms).unwrap(), BigInt::from(0));
        }
    }
    let v7 = VarietySpec::hypersurface(4, Degree::Fixed(7)).unwrap();
    assert!(
        alternating_chi(&v7, &resolution_hypersurface(3, 2).unwrap())
            .unwrap()
            .is_zero()
    );
}

#[test]
fn euler_resolution_is_exact() {
    let p4 = VarietySpec::projective_space(4).unwrap();
    for b1 in 1..=4 {
        for b2 in 1..=b1 {
            let terms = resolution_euler(b1, b2).unwrap();
            assert!(
                alternating_chi(&p4, &terms).unwrap().is_zero(),
                "({}, {})",
                b1,
                b2
            );
            assert_eq!(alternating_rank(&p4, &terms).unwrap(), BigInt::from(0));
        }
    }
}

#[test]
fn chi_equals_h0_examples() {
    use jetdiff::combinat::SchurWeight;
    use num_traits::Signed;
    let w = |v: &[i64]| SchurWeight::new(v.to_vec()).unwrap();
    assert!(chi_equals_h0(&w(&[10, 0, 0]), 10).unwrap().is_none());
    let cases = [
        ([10, 10, 10], 10),
        ([12, 11, 10], 10),
        ([9, 8, 8], 30),
        ([20, 15, 11], 40),
    ];
    for (l, d) in cases {
        let chi = chi_equals_h0(&w(&l), d).unwrap().expect("condition holds");
        let c = chi.as_constant().unwrap();
        assert!(
            c.is_integer() && !c.is_negative(),
            "{:?} d={} gives {}",
            l,
            d,
            c
        );
    }
}

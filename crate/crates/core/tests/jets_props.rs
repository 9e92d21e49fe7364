use jetdiff::chow::{euler_characteristic, Atom, BundleExpr, Degree, VarietySpec};
use jetdiff::jets::*;
use jetdiff::poly::{Poly, Var};
use num_bigint::BigInt;

#[test]
fn order3_pieces_satisfy_constraints() {
    for m in 1..=300u64 {
        let dec = decompose_gr3(m).unwrap();
        for p in &dec.pieces {
            let [l1, l2, l3] = p.parts3();
            assert_eq!(l1 + 2 * l2 + 3 * l3, m - p.gamma);
            assert!(l1 - l2 >= p.gamma && l2 - l3 >= p.gamma);
            assert!(5 * p.gamma <= m);
            assert!(15 * l1 >= 2 * m, "m = {} piece {:?}", m, p);
            assert!(5 * (m - p.gamma) >= 4 * m && m - p.gamma <= 6 * l1);
        }
    }
}

#[test]
fn total_rank_is_a_quasi_polynomial() {
    let qp = fit_quasi_polynomial(
        |m| Ok(Poly::constant(total_rank(3, m)?.into())),
        8,
        MAX_PERIOD,
    )
    .unwrap();
    // ~m³ pieces of rank cubic in λ
    assert_eq!(qp.degree(), 6);
    for m in [401u64, 555] {
        assert_eq!(qp.eval(m), Poly::constant(total_rank(3, m).unwrap().into()));
    }
    assert!(total_rank(3, 1).unwrap() == BigInt::from(3));
}

#[test]
fn order2_pieces_match_oracle() {
    let v = VarietySpec::hypersurface(4, Degree::Symbolic).unwrap();
    for m in 1..=12u64 {
        let dec = decompose_gr2(m).unwrap();
        let mut sum = Poly::zero();
        for p in &dec.pieces {
            sum += &euler_characteristic(
                &v,
                &BundleExpr::schur_partition(&p.lambda, 3, Atom::CotangentX),
            )
            .unwrap();
        }
        assert_eq!(chi_jets(&v, 2, m).unwrap(), sum);
    }
    assert_eq!(
        chi_jets(&v, 3, 1).unwrap(),
        euler_characteristic(&v, &BundleExpr::Atom(Atom::CotangentX)).unwrap()
    );
    assert_eq!(
        chi_jets(&v, 2, 2).unwrap(),
        euler_characteristic(
            &v,
            &BundleExpr::schur(&[2, 0, 0], Atom::CotangentX).unwrap()
        )
        .unwrap()
    );
}

#[test]
fn order2_fit_validates_on_holdouts() {
    let v = VarietySpec::hypersurface(4, Degree::Symbolic).unwrap();
    let (qp, lead) = fit_leading(&v, 2, natural_degree(2)).unwrap();
    assert_eq!(qp.period, 3);
    assert!(!lead.is_zero());
    for m in [97u64, 100, 131] {
        assert_eq!(
            qp.eval(m),
            chi_jets_by_pieces(&v, 2, m).unwrap(),
            "m = {}",
            m
        );
    }
    assert!(lead.degree_of(Var::D).unwrap() <= 4);
}

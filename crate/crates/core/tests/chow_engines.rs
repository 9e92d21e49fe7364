use jetdiff::chow::*;
use jetdiff::poly::{parse_poly, q, qi, Poly, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x4() -> VarietySpec {
    VarietySpec::hypersurface(4, Degree::Symbolic).unwrap()
}

fn logp() -> VarietySpec {
    VarietySpec::log_pair(Degree::Symbolic).unwrap()
}

fn zero_twist() -> [jetdiff::poly::Rational; 3] {
    [qi(0), qi(0), qi(0)]
}

fn at_lambda(p: &Poly, l: [i64; 3]) -> Poly {
    p.eval_var(Var::L1, &qi(l[0]))
        .eval_var(Var::L2, &qi(l[1]))
        .eval_var(Var::L3, &qi(l[2]))
}

#[test]
fn pushforward_over_a_point_is_weyl_dimension() {
    // With all Chern classes zero only the relative part survives; on P^3 the
    // h^3 coefficient of chi(Γ^λ ⊗ O(t)) is rank/6 * t^3 + ..., so compare
    // the leading t^3 coefficient times 6 with the rank.
    let master = flag_chi_master(&VarietySpec::projective_space(3).unwrap()).unwrap();
    let cubic = master.coefficient_of(Var::T, 3).scale(&qi(6));
    assert_eq!(at_lambda(&cubic, [2, 1, 0]), Poly::int(8));
    assert_eq!(at_lambda(&cubic, [3, 1, 0]), Poly::int(15));
}

#[test]
fn symmetric_power_m5_coefficient() {
    let chi = flag_chi_closed_form(&x4(), zero_twist()).unwrap();
    let sm = chi.eval_var(Var::L2, &qi(0)).eval_var(Var::L3, &qi(0));
    let top = sm.coefficient_of(Var::L1, 5);
    assert_eq!(top, parse_poly("1/8*d^2 - 7/24*d").unwrap());
    assert_eq!(sm.degree_of(Var::L1), Some(5));
}

#[test]
fn flag_matches_hrr_on_symmetric_powers() {
    let v = x4();
    let chi = flag_chi_closed_form(&v, zero_twist()).unwrap();
    for m in 0..6i64 {
        let direct = euler_characteristic(
            &v,
            &BundleExpr::schur(&[m, 0, 0], Atom::CotangentX).unwrap(),
        )
        .unwrap();
        assert_eq!(at_lambda(&chi, [m, 0, 0]), direct, "m = {}", m);
    }
}

#[test]
fn oracle_equivalence_random_strict() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in [x4(), logp()] {
        let atom = v.cotangent_atom().unwrap();
        let master = flag_chi_master(&v).unwrap();
        for _ in 0..8 {
            let mut l: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=12)).collect();
            l.sort_unstable_by(|a, b| b.cmp(a));
            let t = rng.gen_range(-5..=5);
            let closed = at_lambda(&master, [l[0], l[1], l[2]]).eval_var(Var::T, &qi(t));
            let e = BundleExpr::schur(&l, atom).unwrap().twisted(Twist::new(t));
            assert_eq!(
                closed,
                euler_characteristic(&v, &e).unwrap(),
                "{:?} t={} on {}",
                l,
                t,
                v
            );
        }
    }
}

#[test]
fn twist_multiple_substitution() {
    let v = x4();
    let u = [qi(3), qi(3), qi(3)];
    let chi = flag_chi_closed_form(&v, u).unwrap();
    let e = BundleExpr::schur(&[2, 1, 0], Atom::CotangentX)
        .unwrap()
        .twisted(Twist::new(9));
    assert_eq!(
        at_lambda(&chi, [2, 1, 0]),
        euler_characteristic(&v, &e).unwrap()
    );
    let _ = q(1, 2);
}

#[test]
fn serre_duality_on_threefolds() {
    for d in [6, 10] {
        let v = VarietySpec::hypersurface(4, Degree::Fixed(d)).unwrap();
        for l in -10..10 {
            let lhs = euler_characteristic(
                &v,
                &BundleExpr::Atom(Atom::CotangentX).twisted(Twist::new(l)),
            )
            .unwrap();
            let rhs = euler_characteristic(
                &v,
                &BundleExpr::Atom(Atom::TangentX).twisted(Twist::new(d - 5 - l)),
            )
            .unwrap();
            assert_eq!(lhs, -rhs, "d={} l={}", d, l);
        }
    }
}

#[test]
fn hyperplane_section_is_p3() {
    let x1 = VarietySpec::hypersurface(4, Degree::Fixed(1)).unwrap();
    let p3 = VarietySpec::projective_space(3).unwrap();
    for w in [[1, 0, 0], [2, 1, 0], [3, 3, 1], [4, 0, 0]] {
        for t in [-2, 0, 5] {
            let e = BundleExpr::schur(&w, Atom::CotangentX)
                .unwrap()
                .twisted(Twist::new(t));
            assert_eq!(
                euler_characteristic(&x1, &e).unwrap(),
                euler_characteristic(&p3, &e).unwrap()
            );
        }
    }
}

#[test]
fn integer_valued() {
    let v = x4();
    let chi = euler_characteristic(
        &v,
        &BundleExpr::schur(&[3, 1, 0], Atom::CotangentX).unwrap(),
    )
    .unwrap();
    for d in 1..=50 {
        assert!(chi.eval_d(d).is_integer(), "d = {}", d);
    }
}

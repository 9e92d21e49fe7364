use jetdiff::bounds::*;
use jetdiff::chow::{Degree, VarietySpec};
use jetdiff::combinat::Partition;
use jetdiff::jets::PieceFilter;
use jetdiff::poly::{q, to_f64, Var};

#[test]
fn gamma_zero_pieces_do_not_change_c() {
    assert_eq!(
        constant_c_filtered(PieceFilter::PositiveGamma).unwrap(),
        constant_c().unwrap()
    );
}

#[test]
fn sum_g_converges_to_c() {
    let m = 2000u64;
    let ratio = to_f64(&sum_g(m).unwrap()) / (m as f64).powi(9);
    let c = to_f64(&q(49403, 2_520_000_000));
    assert!((ratio / c - 1.0).abs() < 0.05, "ratio {} vs {}", ratio, c);
}

#[test]
fn degree_six_part_is_g_times_degree_factor() {
    for log in [false, true] {
        let lambda = Partition::new(vec![90, 40, 10]).unwrap();
        let r = h2_partition_bound(&lambda, Degree::Symbolic, log).unwrap();
        assert!(r.shape_difference().is_zero(), "log = {}", log);
        assert!(r.remainder.degree(&Var::LAMBDA).unwrap_or(0) <= 5);
        assert_eq!(&r.leading_part + &r.remainder, r.bound);
    }
}

#[test]
fn bound_matches_direct_second_difference() {
    use jetdiff::chow::{euler_characteristic, Atom, BundleExpr, Twist};
    let d = 7;
    let lambda = Partition::new(vec![60, 40, 20]).unwrap();
    let r = h2_partition_bound(&lambda, Degree::Fixed(d), false).unwrap();
    let v = VarietySpec::hypersurface(4, Degree::Fixed(d)).unwrap();
    let chi = |k: i64| {
        let e = BundleExpr::schur(&[60, 40, 20], Atom::CotangentX)
            .unwrap()
            .twisted(Twist::new(k * 120));
        euler_characteristic(&v, &e).unwrap()
    };
    let direct = &(&chi(9) - &chi(6).scale(&jetdiff::poly::qi(2))) + &chi(3);
    assert_eq!(r.value, direct);
}

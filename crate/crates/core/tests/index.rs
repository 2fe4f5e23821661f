use num_rational::Ratio;
use orbifold_core::groups::Signature;
use orbifold_core::index::{
    chern_coefficients, dim_omega_k, example_0_1_222_relations, rootsum_identity, teichmuller_dimension,
};
use proptest::prelude::*;
use std::f64::consts::PI;

type Q = Ratio<i64>;

fn orbifold() -> Signature {
    Signature::new(0, 1, vec![2, 2, 2]).unwrap()
}

fn signature() -> impl Strategy<Value = Signature> {
    (0u32..5, 0u32..5, prop::collection::vec(2u32..12, 0..6))
        .prop_filter_map("hyperbolic", |(g, n, orders)| Signature::new(g, n, orders).ok())
}

#[test]
fn root_sums_for_all_small_orders() {
    for m in 2..=50u32 {
        for k in 0..2 * m as i64 {
            let r = rootsum_identity(m, k).unwrap();
            assert!(r.passes(1e-10), "m = {m}, k = {k}: {}", r.max_error());
        }
    }
}

#[test]
fn orbifold_coefficients() {
    for k in 1..=10i64 {
        let c = chern_coefficients(&orbifold(), k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for e in &c.ell {
            assert!((e - sign / (16.0 * PI)).abs() < 1e-14);
        }
        assert_eq!(c.cusp_exact, Q::new(-1, 9));
        assert_eq!(c.wp_exact, Q::new(6 * k * k - 6 * k + 1, 12));
        assert!((c.wp - (6 * k * k - 6 * k + 1) as f64 / (12.0 * PI * PI)).abs() < 1e-15);
    }
}

#[test]
fn cover_relation_is_exact() {
    for k in 1..=10 {
        let r = example_0_1_222_relations(k).unwrap();
        assert!(r.holds(), "k = {k}: {r:?}");
        assert_eq!(r.expected_ell, Q::new(if k % 2 == 0 { 1 } else { -1 }, 8));
    }
}

#[test]
fn area_of_the_cover_is_twice_the_base() {
    let torus = Signature::new(1, 1, vec![]).unwrap();
    assert_eq!(torus.area_over_pi(), Q::from_integer(2) * orbifold().area_over_pi());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn duality_k_and_one_minus_k(sig in signature()) {
        for k in -5..=6i64 {
            prop_assert!(chern_coefficients(&sig, k).same_coefficients(&chern_coefficients(&sig, 1 - k)));
        }
    }

    #[test]
    fn quadratic_differentials_count_moduli(sig in signature()) {
        prop_assert_eq!(dim_omega_k(&sig, 2), teichmuller_dimension(&sig));
        let l = sig.cone_points() as i64;
        prop_assert_eq!(teichmuller_dimension(&sig), 3 * sig.genus() as i64 - 3 + sig.cusps() as i64 + l);
    }

    #[test]
    fn area_is_gauss_bonnet(sig in signature()) {
        let cone: f64 = sig.orders().iter().map(|&m| 1.0 - 1.0 / m as f64).sum();
        let expected = 2.0 * PI * (2.0 * sig.genus() as f64 - 2.0 + sig.cusps() as f64 + cone);
        prop_assert!((sig.area() - expected).abs() < 1e-12 * expected);
    }
}

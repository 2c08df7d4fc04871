//! Published constants, intervals and formulas, checked value by value.

mod common;

use common::q;
use num_bigint::BigUint;
use num_traits::Pow;
use sunflower_vc::bounds::{
    ell_zero, er_bound, lambda_d, log_star, log_star_smoothed_pow2, vc1_threshold, HalfInteger,
};
use sunflower_vc::gen::tree_family;
use sunflower_vc::spread::{count_bound, count_bound_vc1, e_upper};
use sunflower_vc::threshold::DichotomyVariant;
use sunflower_vc::Rational;

fn half(twice: u64) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

#[test]
fn log_star_intervals() {
    // 16 < x <= 256 gives 4; 256 < x <= 65536 gives 4.5
    for x in [17u64, 100, 255, 256] {
        assert_eq!(log_star(x).unwrap(), half(8), "x = {x}");
    }
    for x in [257u64, 300, 65535, 65536] {
        assert_eq!(log_star(x).unwrap(), half(9), "x = {x}");
    }
    assert_eq!(log_star(16).unwrap(), half(7));
    assert_eq!(log_star(65537).unwrap(), half(10));
    // (2^16, 2^256] gives 5, (2^256, 2^65536] gives 5.5
    assert_eq!(log_star_smoothed_pow2(&BigUint::from(256u32)).unwrap(), half(10));
    assert_eq!(log_star_smoothed_pow2(&BigUint::from(257u32)).unwrap(), half(11));
    assert_eq!(log_star_smoothed_pow2(&BigUint::from(65536u32)).unwrap(), half(11));
    assert_eq!(log_star_smoothed_pow2(&BigUint::from(65537u32)).unwrap(), half(12));
}

#[test]
fn lambda_pieces() {
    // d = 2: 9d^2 = 36 and 2^{3d} = 64
    assert_eq!(lambda_d(2, 20).unwrap(), half(8));
    assert_eq!(lambda_d(2, 36).unwrap(), half(8));
    assert_eq!(lambda_d(2, 37).unwrap(), half(10));
    assert_eq!(lambda_d(2, 50).unwrap(), half(10));
    assert_eq!(lambda_d(2, 64).unwrap(), half(10));
    assert_eq!(lambda_d(2, 65).unwrap(), half(12));
    assert_eq!(lambda_d(2, 100).unwrap(), half(12));
}

#[test]
fn ell_zero_formula() {
    assert_eq!(ell_zero(2, &q(1, 2)).unwrap(), Rational::from_integer(19200.into()));
    assert_eq!(ell_zero(1, &q(1, 2)).unwrap(), Rational::from_integer(2400.into()));
    // halving epsilon multiplies by 8: 300 (d / (eps/2))^3 = 2400 (d/eps)^3
    assert_eq!(ell_zero(3, &q(1, 8)).unwrap(), ell_zero(3, &q(1, 4)).unwrap() * Rational::from_integer(8.into()));
    assert!(ell_zero(1, &q(1, 1)).is_err());
}

#[test]
fn sunflower_thresholds() {
    assert_eq!(er_bound(3, 2).unwrap(), BigUint::from(8u32));
    assert_eq!(er_bound(2, 5).unwrap(), BigUint::from(120u32));
    assert_eq!(er_bound(3, 3).unwrap(), BigUint::from(48u32));
    assert_eq!(vc1_threshold(3, 3).unwrap(), BigUint::from(8u32));
    assert_eq!(vc1_threshold(4, 2).unwrap(), BigUint::from(9u32));
    assert_eq!(vc1_threshold(1, 5).unwrap(), BigUint::from(0u32));
}

#[test]
fn tree_leaf_counts() {
    for r in 2..=5usize {
        for ell in 1..=4usize {
            let h = tree_family(r, ell).unwrap();
            assert_eq!(h.len(), (r - 1).pow(ell as u32), "r={r} ell={ell}");
            assert!(h.members().iter().all(|s| s.len() == ell));
        }
    }
    let h = tree_family(3, 2).unwrap();
    assert_eq!(h.ground_size(), 6);
}

#[test]
fn dichotomy_constants() {
    assert_eq!(DichotomyVariant::KkBell.default_constant(), Some(Rational::from_integer(48.into())));
    assert_eq!(DichotomyVariant::Vc.default_constant(), None);
    assert_eq!(DichotomyVariant::KkBell.cover_threshold(), q(1, 2));
    assert_eq!(DichotomyVariant::Vc.cover_threshold(), q(2, 3));
    assert_eq!(DichotomyVariant::Vc1.cover_threshold(), q(2, 3));
}

#[test]
fn counting_bound_formulas() {
    assert_eq!(count_bound_vc1(&q(1, 4), &q(1, 2), 3).unwrap(), q(1, 4));
    let e = e_upper();
    assert!(e > q(27182818284, 10_000_000_000) && e < q(2718281829, 1_000_000_000));
    for d in 1..=4usize {
        let expected = Rational::from_integer(2.into()) * Pow::pow(&e, d) * Pow::pow(&q(1, 3), 2usize);
        assert_eq!(count_bound(d, d, &q(1, 6), &q(1, 2), 2).unwrap(), expected);
    }
    assert!(count_bound(3, 1, &q(1, 2), &q(1, 2), 1).is_err());
}

use phel_numerics::{bessel_j, bessel_j0, bessel_j1, j1_over_x, Error};
use phel_oracles::bessel::bessel_integral;
use proptest::prelude::*;

#[test]
fn matches_integral_representation_on_0_to_1000() {
    let mut worst: f64 = 0.0;
    let mut x = 0.0;
    while x <= 1000.0 {
        for n in 0..2 {
            let got = bessel_j(n, x).unwrap();
            worst = worst.max((got - bessel_integral(n, x)).abs());
        }
        x += if x < 30.0 { 0.01 } else { 0.37 };
    }
    assert!(worst < 1e-10, "worst deviation {worst:e}");
}

#[test]
fn accurate_on_both_sides_of_branch_switch() {
    for k in 0..400 {
        let x = 9.0 + k as f64 * 0.01;
        assert!((bessel_j0(x) - bessel_integral(0, x)).abs() < 1e-10, "J0({x})");
        assert!((bessel_j1(x) - bessel_integral(1, x)).abs() < 1e-10, "J1({x})");
    }
}

#[test]
fn values_at_origin() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
    assert_eq!(j1_over_x(0.0), 0.5);
}

#[test]
fn rejects_bad_arguments() {
    assert!(matches!(bessel_j(0, -1.0), Err(Error::Domain { .. })));
    assert!(matches!(bessel_j(2, 1.0), Err(Error::Domain { .. })));
    assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain { .. })));
    assert!(matches!(bessel_j(1, f64::INFINITY), Err(Error::Domain { .. })));
}

#[test]
fn j1_over_x_is_smooth_through_small_arguments() {
    for k in 1..2000 {
        let x = k as f64 * 1e-6;
        let direct = bessel_integral(1, x) / x;
        assert!((j1_over_x(x) - direct).abs() < 1e-9, "x = {x}");
    }
    for k in 1..500 {
        let x = k as f64 * 0.1;
        assert!((j1_over_x(x) - bessel_j1(x) / x).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn agrees_with_oracle_at_random_points(x in 0.0f64..50.0) {
        prop_assert!((bessel_j0(x) - bessel_integral(0, x)).abs() < 1e-10);
        prop_assert!((bessel_j1(x) - bessel_integral(1, x)).abs() < 1e-10);
    }

    #[test]
    fn parity(x in 0.0f64..100.0) {
        prop_assert_eq!(bessel_j0(-x), bessel_j0(x));
        prop_assert_eq!(bessel_j1(-x), -bessel_j1(x));
    }

    #[test]
    fn derivative_identity(x in 0.5f64..60.0) {
        // J0' = -J1 by central difference
        let d = 1e-4;
        let deriv = (bessel_j0(x + d) - bessel_j0(x - d)) / (2.0 * d);
        prop_assert!((deriv + bessel_j1(x)).abs() < 1e-8);
    }
}

use phel_free::{goursat_left, goursat_left_fn, goursat_right, goursat_right_fn, kg_cauchy, sourced_transport};
use phel_numerics::{Grid1D, SampledField1D, Sign, C64};
use phel_oracles::spectral::kg_spectral;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Superposition of Klein–Gordon plane waves.
fn plane_waves(omega: f64) -> impl Fn(f64, f64) -> C64 + Copy {
    move |t: f64, s: f64| {
        let mut u = C64::new(0.0, 0.0);
        for (amp, k) in [(1.0, 0.7), (0.4, -2.1), (0.25, 3.3)] {
            let e = (k * k + omega * omega).sqrt();
            u += C64::from_polar(amp, k * s - e * t);
        }
        u
    }
}

fn time_derivative(u: impl Fn(f64, f64) -> C64, s: f64) -> C64 {
    let d = 1e-5;
    (u(d, s) - u(-d, s)) / (2.0 * d)
}

#[test]
fn cauchy_reproduces_plane_waves() {
    let omega = 1.7;
    let u = plane_waves(omega);
    let grid = Grid1D::covering(-4.0, 4.0, 1.0 / 64.0).unwrap();
    let f = SampledField1D::from_fn(grid, false, |s| u(0.0, s));
    let g = SampledField1D::from_fn(grid, false, |s| time_derivative(u, s));
    for (t, s) in [(0.5, 0.1), (1.0, -0.3), (2.0, 0.7), (0.0, 1.0)] {
        let got = kg_cauchy(&f, &g, omega, t, s).unwrap();
        assert!((got - u(t, s)).norm() < 1e-6, "({t}, {s}): {got} vs {}", u(t, s));
    }
    assert!(kg_cauchy(&f, &g, omega, 5.0, 0.0).is_err());
}

#[test]
fn cauchy_matches_spectral_oracle_for_compact_data() {
    let len = 16.0;
    let h = 1.0 / 32.0;
    let grid = Grid1D::new(-8.0, h, (len / h) as usize).unwrap();
    let f = SampledField1D::from_fn(grid, true, |s| C64::new((-3.0 * s * s).exp(), 0.0));
    let g = SampledField1D::from_fn(grid, true, |s| C64::new(0.0, s * (-2.0 * s * s).exp()));
    let omega = 1.0;
    let t = 1.25;
    let reference = kg_spectral(&f.values, &g.values, len, omega, t);
    for i in (0..grid.count()).step_by(37) {
        let s = grid.point(i);
        if s.abs() > 5.0 {
            continue;
        }
        let got = kg_cauchy(&f, &g, omega, t, s).unwrap();
        assert!((got - reference[i]).norm() < 1e-6, "s = {s}");
    }
}

#[test]
fn goursat_reproduces_plane_waves() {
    let omega = 1.2;
    let u = plane_waves(omega);
    let s0 = 0.3;
    let edge_r = |b: f64| u(b, s0 + b);
    let edge_l = |c: f64| u(c, s0 - c);
    for (t, s) in [(1.0, 0.2), (0.7, -0.69), (2.0, 0.0), (1.5, 1.5)] {
        let got = goursat_right_fn(edge_r, omega, t, s, 1e-3).unwrap() + goursat_left_fn(edge_l, omega, t, s, 1e-3).unwrap();
        assert!((got - u(t, s0 + s)).norm() < 1e-8, "({t}, {s})");
    }
}

#[test]
fn goursat_agrees_with_cauchy_at_random_points() {
    let omega = 1.0;
    let h = 1.0 / 64.0;
    let grid = Grid1D::covering(-6.0, 6.0, h).unwrap();
    let f = SampledField1D::from_fn(grid, true, |s| C64::new((-2.0 * s * s).exp(), 0.3 * s * (-s * s).exp()));
    let g = SampledField1D::from_fn(grid, true, |s| C64::new(0.0, (-(s - 0.5).powi(2)).exp()));
    let u = |t: f64, s: f64| kg_cauchy(&f, &g, omega, t, s).unwrap();
    let s0 = -0.2;
    let tmax = 2.0;
    let edge_grid = Grid1D::covering(0.0, tmax, h).unwrap();
    let fr = SampledField1D::from_fn(edge_grid, false, |b| u(b, s0 + b));
    let gl = SampledField1D::from_fn(edge_grid, false, |c| u(c, s0 - c));
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t: f64 = rng.gen_range(0.1..tmax);
        let s: f64 = rng.gen_range(-t..t);
        let got = goursat_right(&fr, omega, t, s).unwrap() + goursat_left(&gl, omega, t, s).unwrap();
        worst = worst.max((got - u(t, s0 + s)).norm());
    }
    assert!(worst < 1e-4, "worst {worst:e}");
}

#[test]
fn goursat_rejects_points_outside_cone() {
    assert!(goursat_right_fn(|_| C64::new(1.0, 0.0), 1.0, 1.0, 1.5, 0.01).is_err());
    assert!(goursat_left_fn(|_| C64::new(1.0, 0.0), 1.0, 1.0, -1.5, 0.01).is_err());
    let short = SampledField1D::from_fn(Grid1D::new(0.0, 0.1, 4).unwrap(), false, |_| C64::new(1.0, 0.0));
    assert!(goursat_right(&short, 1.0, 2.0, 0.0).is_err());
}

#[test]
fn sourced_transport_matches_closed_form() {
    for sign in Sign::BOTH {
        let c = sign.value();
        let exact = |t: f64, s: f64| C64::new((s + 2.0 * t).sin(), (s * t).cos());
        // (∂t − ς∂s) of the exact solution
        let src = |t: f64, s: f64| {
            C64::new((2.0 - c) * (s + 2.0 * t).cos(), -(s * t).sin() * (s - c * t))
        };
        let got = sourced_transport(sign, 1.3, 0.4, |s| exact(0.0, s), src, 1e-2).unwrap();
        assert!((got - exact(1.3, 0.4)).norm() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn left_and_right_are_mirror_images(t in 0.1f64..2.0, frac in -1.0f64..1.0) {
        let s = frac * t;
        let f = |b: f64| C64::new((b * 1.7).cos(), b * b);
        let r = goursat_right_fn(f, 0.9, t, s, 1e-2).unwrap();
        let l = goursat_left_fn(f, 0.9, t, -s, 1e-2).unwrap();
        prop_assert!((r - l).norm() < 1e-13);
    }

    #[test]
    fn constant_data_at_zero_mass_is_preserved(t in 0.0f64..2.0, frac in -1.0f64..1.0) {
        let s = frac * t;
        let one = |_: f64| C64::new(1.0, 0.0);
        let v = goursat_right_fn(one, 0.0, t, s, 1e-2).unwrap() + goursat_left_fn(one, 0.0, t, s, 1e-2).unwrap();
        prop_assert!((v - 1.0).norm() < 1e-14);
    }
}

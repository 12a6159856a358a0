use phel_free::{dirac_point, dirac_propagate, ElectronSpinor};
use phel_numerics::{Grid1D, Sign, C64};
use phel_oracles::spectral::dirac_spectral;
use proptest::prelude::*;
use std::time::Instant;

const L: f64 = 16.0;

fn data(sign: Sign, s: f64) -> C64 {
    match sign {
        Sign::Minus => C64::new((-4.0 * s * s).exp(), 0.0),
        Sign::Plus => C64::from_polar(0.5 * (-3.0 * (s - 0.3).powi(2)).exp(), 2.0 * s),
    }
}

fn periodic_grid(h: f64) -> Grid1D {
    Grid1D::new(-L / 2.0, h, (L / h).round() as usize).unwrap()
}

fn l2_diff(a: &ElectronSpinor, m: &[C64], p: &[C64], h: f64) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.len() {
        acc += (a.minus.values[i] - m[i]).norm_sqr() + (a.plus.values[i] - p[i]).norm_sqr();
    }
    (acc * h).sqrt()
}

#[test]
fn matches_spectral_oracle_at_unit_mass_and_time() {
    let h = 1.0 / 256.0;
    let grid = periodic_grid(h);
    let spinor = ElectronSpinor::from_fn(grid, true, data);
    let start = Instant::now();
    let out = dirac_propagate(&spinor, 1.0, 1.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let (m, p) = dirac_spectral(&spinor.minus.values, &spinor.plus.values, L, 1.0, 1.0);
    let err = l2_diff(&out, &m, &p, h);
    assert!(err < 1e-3, "L2 error {err:e}");
    assert!(elapsed < 5.0, "took {elapsed} s");
}

#[test]
fn off_grid_times_match_oracle() {
    let h = 1.0 / 64.0;
    let grid = periodic_grid(h);
    let spinor = ElectronSpinor::from_fn(grid, true, data);
    let out = dirac_propagate(&spinor, 2.0, 0.737).unwrap();
    let (m, p) = dirac_spectral(&spinor.minus.values, &spinor.plus.values, L, 2.0, 0.737);
    let err = l2_diff(&out, &m, &p, h);
    assert!(err < 1e-5, "L2 error {err:e}");
}

#[test]
fn fourth_order_in_spacing() {
    let err = |h: f64| {
        let grid = periodic_grid(h);
        let spinor = ElectronSpinor::from_fn(grid, true, data);
        let out = dirac_propagate(&spinor, 1.5, 1.0).unwrap();
        let (m, p) = dirac_spectral(&spinor.minus.values, &spinor.plus.values, L, 1.5, 1.0);
        l2_diff(&out, &m, &p, h)
    };
    let order = (err(1.0 / 16.0) / err(1.0 / 32.0)).log2();
    assert!(order > 3.5, "order {order}");
}

#[test]
fn norm_is_conserved() {
    let h = 1.0 / 128.0;
    let grid = periodic_grid(h);
    let spinor = ElectronSpinor::from_fn(grid, true, data);
    let n0 = spinor.norm_sq();
    for omega in [0.0, 1.0, 2.0] {
        for t in [0.25, 0.5, 1.0, 1.5] {
            let n = dirac_propagate(&spinor, omega, t).unwrap().norm_sq();
            assert!(((n - n0) / n0).abs() < 1e-5, "omega {omega} t {t}: drift {:e}", (n - n0) / n0);
        }
    }
}

#[test]
fn massless_limit_is_pure_transport() {
    let grid = periodic_grid(1.0 / 32.0);
    let spinor = ElectronSpinor::from_fn(grid, true, data);
    let out = dirac_propagate(&spinor, 0.0, 0.5).unwrap();
    for (i, s) in grid.points().enumerate() {
        if s.abs() < 6.0 {
            assert!((out.minus.values[i] - data(Sign::Minus, s - 0.5)).norm() < 1e-14);
            assert!((out.plus.values[i] - data(Sign::Plus, s + 0.5)).norm() < 1e-14);
        }
    }
}

#[test]
fn pointwise_solution_satisfies_the_equation() {
    let f = |s: f64| [data(Sign::Minus, s), data(Sign::Plus, s)];
    let (omega, t, s, d) = (1.3, 0.8, 0.2, 1e-3);
    let at = |t: f64, s: f64| dirac_point(f, omega, t, s, 1e-3).unwrap();
    let c = at(t, s);
    let dt = |k: usize| (at(t + d, s)[k] - at(t - d, s)[k]) / (2.0 * d);
    let ds = |k: usize| (at(t, s + d)[k] - at(t, s - d)[k]) / (2.0 * d);
    let i = C64::new(0.0, 1.0);
    let r_minus = dt(0) + ds(0) + i * omega * c[1];
    let r_plus = dt(1) - ds(1) + i * omega * c[0];
    assert!(r_minus.norm() < 1e-5 && r_plus.norm() < 1e-5, "{r_minus} {r_plus}");
}

#[test]
fn rejects_negative_time() {
    let grid = periodic_grid(0.25);
    let spinor = ElectronSpinor::from_fn(grid, true, data);
    assert!(dirac_propagate(&spinor, 1.0, -0.1).is_err());
    assert!(dirac_propagate(&spinor, -1.0, 0.1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn linear_in_data(a in -2.0f64..2.0, b in -2.0f64..2.0, t in 0.0f64..1.0) {
        let grid = periodic_grid(1.0 / 16.0);
        let u = ElectronSpinor::from_fn(grid, true, data);
        let v = ElectronSpinor::from_fn(grid, true, |sg, s| data(sg.flip(), s + 1.0) * C64::new(0.0, 1.0));
        let w = ElectronSpinor::from_fn(grid, true, |sg, s| data(sg, s) * a + data(sg.flip(), s + 1.0) * C64::new(0.0, b));
        let (pu, pv, pw) = (
            dirac_propagate(&u, 1.0, t).unwrap(),
            dirac_propagate(&v, 1.0, t).unwrap(),
            dirac_propagate(&w, 1.0, t).unwrap(),
        );
        for i in 0..grid.count() {
            let lin = pu.minus.values[i] * a + pv.minus.values[i] * b;
            prop_assert!((pw.minus.values[i] - lin).norm() < 1e-10);
        }
    }
}

mod common;

use common::{packet, params, squeezed};
use phel_free::dirac_point_channels;
use phel_numerics::{Error, Sign, C64};
use phel_oracles::rays::massless_three_body;
use phel_oracles::spectral::dirac_spectral;
use phel_threebody::{
    classify_three_body, comp3, convergence_study, evolve_compton, evolve_free_3, exchange_parity, multitime_eval,
    ComptonCase, EqualTimeLeg, Mirrored, ProductData3, RegionLabel, ThreeBodyConfig, ThreeBodyEvolver, ThreeBodyField,
    ThreeBodyInitial, WedgeGrid,
};
use phel_twobody::{contact_evolve, TwoBodyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: &[C64; 8], b: &[C64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn unmasked(gap: f64, sharpness: f64) -> ProductData3 {
    ProductData3 { delta0: 0.0, ..squeezed(gap, sharpness) }
}

fn mirror(c: &ThreeBodyConfig) -> ThreeBodyConfig {
    ThreeBodyConfig { t_ph: c.t_ph, s_ph: -c.s_ph, t_e1: c.t_e2, s_e1: -c.s_e2, t_e2: c.t_e1, s_e2: -c.s_e1 }
}

/// Random ordered spacelike configurations with positions and times on
/// the lattice `k/step`, filtered by region.
fn sample(seed: u64, count: usize, step: f64, t_max: f64, wanted: &[RegionLabel]) -> Vec<ThreeBodyConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let q = |x: f64| (x * step).round() / step;
    while out.len() < count {
        let s_ph = q(rng.gen_range(-0.4..0.4));
        let c = ThreeBodyConfig {
            t_ph: q(rng.gen_range(0.0..t_max)),
            s_ph,
            t_e1: q(rng.gen_range(0.0..t_max)),
            s_e1: q(s_ph - rng.gen_range(0.05..0.9)),
            t_e2: q(rng.gen_range(0.0..t_max)),
            s_e2: q(s_ph + rng.gen_range(0.05..0.9)),
        };
        if let Ok(label) = classify_three_body(&c) {
            if wanted.contains(&label) {
                out.push(c);
            }
        }
    }
    out
}

#[test]
fn free_evolution_at_zero_times_is_the_data() {
    let data = squeezed(0.45, 30.0);
    let c = ThreeBodyConfig::equal_time(0.0, 0.05, -0.4, 0.5);
    let v = evolve_free_3(&data, &params(1.0, 0.7, -1.1, 0.1), 1.0 / 64.0, &c).unwrap();
    assert!(close(&v, &data.eval(0.05, -0.4, 0.5)) < 1e-14);
}

#[test]
fn massless_free_evolution_transports_each_component() {
    let data = unmasked(0.45, 30.0);
    let p = params(0.0, 0.7, -1.1, 0.1);
    for c in sample(1, 40, 64.0, 0.3, &[RegionLabel::Free]) {
        let v = evolve_free_3(&data, &p, 1.0 / 64.0, &c).unwrap();
        let expect: [C64; 8] = std::array::from_fn(|k| {
            let [x, y, z] = phel_threebody::signs3(k);
            let d = data.eval(c.s_ph + x.value() * c.t_ph, c.s_e1 + y.value() * c.t_e1, c.s_e2 + z.value() * c.t_e2);
            d[k]
        });
        assert!(close(&v, &expect) < 1e-12, "{c:?}");
    }
}

#[test]
fn massive_free_evolution_is_the_product_of_one_body_solutions() {
    let data = unmasked(0.45, 30.0);
    let omega = 1.0;
    let p = params(omega, 0.7, -1.1, 0.1);
    let (n, len) = (2048usize, 16.0);
    let node = |s: f64| ((s + 8.0) * 128.0).round() as usize;
    let sampled = |pk: &phel_free::Packet| -> (Vec<C64>, Vec<C64>) {
        (0..n).map(|j| pk.eval(-8.0 + j as f64 / 128.0)).map(|v| (v[0], v[1])).unzip()
    };
    let (e1m, e1p) = sampled(&data.e1);
    let (e2m, e2p) = sampled(&data.e2);
    let (mut num, mut den) = (0.0, 0.0);
    for c in sample(2, 60, 128.0, 0.4, &[RegionLabel::Free]) {
        let v = evolve_free_3(&data, &p, 1.0 / 128.0, &c).unwrap();
        let (a1, b1) = dirac_spectral(&e1m, &e1p, len, omega, c.t_e1);
        let (a2, b2) = dirac_spectral(&e2m, &e2p, len, omega, c.t_e2);
        let f1 = [a1[node(c.s_e1)], b1[node(c.s_e1)]];
        let f2 = [a2[node(c.s_e2)], b2[node(c.s_e2)]];
        for k in 0..8 {
            let [x, y, z] = phel_threebody::signs3(k);
            let ph = data.photon.eval(c.s_ph + x.value() * c.t_ph)[x.index()];
            let expect = ph * f1[y.index()] * f2[z.index()];
            num += (v[k] - expect).norm_sqr();
            den += expect.norm_sqr();
        }
    }
    let rel = (num / den).sqrt();
    assert!(rel < 1e-3, "relative L2 error {rel:e}");
}

#[test]
fn operations_reject_the_wrong_region() {
    let data = squeezed(0.45, 30.0);
    let p = params(1.0, 0.7, -1.1, 0.1);
    let near = ThreeBodyConfig::equal_time(0.3, 0.0, -0.4, 0.9);
    assert_eq!(classify_three_body(&near).unwrap(), RegionLabel::Compton1);
    assert!(matches!(evolve_free_3(&data, &p, 1.0 / 64.0, &near), Err(Error::Domain { .. })));
    assert!(matches!(evolve_compton(&data, &p, 1.0 / 64.0, &near, ComptonCase::Right), Err(Error::Domain { .. })));
    let coulomb = ThreeBodyConfig::equal_time(2.0, 0.0, -0.5, 0.5);
    let ev = ThreeBodyEvolver::new(&data, p, 1.0 / 64.0).unwrap();
    assert!(ev.eval(&coulomb).is_err());
}

#[test]
fn right_pair_factorizes_into_contact_and_dirac() {
    let data = ProductData3 {
        photon: packet(0.0, 40.0, 1.0, [(1.0, 0.2), (0.4, -0.7)]),
        e1: packet(-2.0, 30.0, -0.5, [(0.6, 0.1), (0.2, 0.5)]),
        e2: packet(0.4, 40.0, 0.8, [(0.3, -0.6), (0.9, 0.0)]),
        delta0: 0.0,
    };
    let (omega, theta2, h) = (1.0, -1.1, 1.0 / 64.0);
    let p = params(omega, 0.7, theta2, 0.1);
    let pair_data = |x: f64, y: f64| -> [C64; 4] {
        if x >= y {
            return [C64::new(0.0, 0.0); 4];
        }
        let (a, c) = (data.photon.eval(x), data.e2.eval(y));
        std::array::from_fn(|k| a[k >> 1] * c[k & 1])
    };
    for c in [
        ThreeBodyConfig { t_ph: 0.5, s_ph: 0.1, t_e1: 0.5, s_e1: -1.8, t_e2: 0.5, s_e2: 0.5 },
        ThreeBodyConfig { t_ph: 0.6, s_ph: 0.2, t_e1: 0.3, s_e1: -1.7, t_e2: 0.4, s_e2: 0.45 },
    ] {
        assert_eq!(classify_three_body(&c).unwrap(), RegionLabel::Compton2);
        let v = evolve_compton(&data, &p, h, &c, ComptonCase::Right).unwrap();
        let pair = contact_evolve(&pair_data, theta2, omega, h, &TwoBodyConfig { t_ph: c.t_ph, s_ph: c.s_ph, t_e: c.t_e2, s_e: c.s_e2 })
            .unwrap();
        let spectator: [C64; 2] = dirac_point_channels(|s: f64| data.e1.eval(s), omega, c.t_e1, c.s_e1, h).unwrap();
        for s0 in Sign::BOTH {
            for s1 in Sign::BOTH {
                for s2 in Sign::BOTH {
                    let expect = pair[2 * s0.index() + s2.index()] * spectator[s1.index()];
                    let got = v[comp3(s0, s1, s2)];
                    assert!((got - expect).norm() < 1e-6, "{c:?} {s0:?}{s1:?}{s2:?}: {got} vs {expect}");
                }
            }
        }
    }
}

#[test]
fn left_and_right_cases_are_exchange_images() {
    let data = squeezed(0.45, 30.0);
    let (t1, t2) = (0.7, -1.1);
    let h = 1.0 / 64.0;
    let ev = ThreeBodyEvolver::new(&data, params(1.0, t1, t2, 0.1), h).unwrap();
    let image = Mirrored(squeezed(0.45, 30.0));
    let ev_image = ThreeBodyEvolver::new(&image, params(1.0, t2, t1, 0.1), h).unwrap();
    let wanted = [RegionLabel::Compton1, RegionLabel::Compton2, RegionLabel::Compton3];
    for c in sample(3, 24, 64.0, 0.4, &wanted) {
        let direct = ev.eval(&c).unwrap();
        let mirrored = exchange_parity(&ev_image.eval(&mirror(&c)).unwrap());
        assert!(close(&direct, &mirrored) < 1e-9, "{c:?} ({:?})", classify_three_body(&c).unwrap());
    }
}

#[test]
fn massless_compton_values_follow_reflected_rays() {
    let data = squeezed(0.45, 30.0);
    let (t1, t2) = (0.7, -1.1);
    let ev = ThreeBodyEvolver::new(&data, params(0.0, t1, t2, 0.1), 1.0 / 64.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = [0usize; 3];
    while checked.iter().sum::<usize>() < 60 {
        let t = 0.4;
        let s_ph = rng.gen_range(-0.5..0.5);
        let c = ThreeBodyConfig::equal_time(t, s_ph, s_ph - rng.gen_range(0.02..1.0), s_ph + rng.gen_range(0.02..1.0));
        let slot = match classify_three_body(&c).unwrap() {
            RegionLabel::Compton1 => 0,
            RegionLabel::Compton2 => 1,
            RegionLabel::Compton3 => 2,
            _ => continue,
        };
        checked[slot] += 1;
        let v = ev.eval(&c).unwrap();
        let o = massless_three_body(|q| data.eval(q[0], q[1], q[2]), |_| 1.0, [t1, t2], t, [c.s_ph, c.s_e1, c.s_e2]);
        // contact rows are interpolated, see the two-body massless test
        assert!(close(&v, &o) < 1e-5, "{c:?}: {:e}", close(&v, &o));
    }
    assert!(checked.iter().all(|&n| n > 3), "{checked:?}");
}

#[test]
fn multitime_reduces_to_equal_time_and_data() {
    let data = squeezed(0.45, 30.0);
    let p = params(1.0, 0.7, -1.1, 0.1);
    let h = 1.0 / 32.0;
    let zero = ThreeBodyConfig::equal_time(0.0, 0.1, -0.35, 0.5);
    let v = multitime_eval(&data, &p, h, &zero, EqualTimeLeg::Exact).unwrap();
    assert!(close(&v, &data.eval(0.1, -0.35, 0.5)) < 1e-14);
    let c = ThreeBodyConfig::equal_time(0.3, 0.05, -0.3, 0.45);
    assert_eq!(classify_three_body(&c).unwrap(), RegionLabel::Compton3);
    let v = multitime_eval(&data, &p, h, &c, EqualTimeLeg::Exact).unwrap();
    let direct = ThreeBodyEvolver::new(&data, p, h).unwrap().eval(&c).unwrap();
    assert!(close(&v, &direct) < 1e-12);
}

#[test]
fn multitime_matches_direct_compton_evaluation() {
    let data = squeezed(0.45, 30.0);
    let p = params(1.0, 0.7, -1.1, 0.1);
    let h = 1.0 / 32.0;
    for c in [
        ThreeBodyConfig { t_ph: 0.35, s_ph: -0.05, t_e1: 0.3, s_e1: -0.35, t_e2: 0.2, s_e2: 0.6 },
        ThreeBodyConfig { t_ph: 0.2, s_ph: 0.1, t_e1: 0.3, s_e1: -0.6, t_e2: 0.35, s_e2: 0.4 },
    ] {
        let label = classify_three_body(&c).unwrap();
        let case = ComptonCase::from_label(label).unwrap();
        let direct = evolve_compton(&data, &p, h, &c, case).unwrap();
        let staged = multitime_eval(&data, &p, h, &c, EqualTimeLeg::Exact).unwrap();
        let scale = direct.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(scale > 1e-3);
        assert!(close(&direct, &staged) < 5e-3 * scale, "{c:?} {label:?}: {:e}", close(&direct, &staged));
    }
}

#[test]
fn multitime_lattice_leg_must_be_at_the_common_time() {
    let data = squeezed(0.45, 30.0);
    let p = params(1.0, 0.7, -1.1, 0.1);
    let grid = WedgeGrid::covering(-1.0, 1.0, 1.0 / 16.0).unwrap();
    let field = ThreeBodyField::from_data(grid, &data);
    let c = ThreeBodyConfig { t_ph: 0.25, s_ph: 0.0, t_e1: 0.3, s_e1: -0.5, t_e2: 0.3, s_e2: 0.5 };
    let err = multitime_eval(&data, &p, 1.0 / 32.0, &c, EqualTimeLeg::Lattice(&field)).unwrap_err();
    assert!(matches!(err, Error::Contract { .. }), "{err}");
}

#[test]
fn convergence_study_without_wall_contact_has_zero_gaps() {
    let data = squeezed(0.6, 60.0);
    let grid = WedgeGrid::covering(-1.2, 1.2, 1.0 / 32.0).unwrap();
    let p = params(1.0, 0.7, -1.1, 0.2);
    let rows = convergence_study(&data, &p, &grid, 0.125, &[0.2, 0.1, 0.0625]).unwrap();
    let n0 = ThreeBodyField::from_data(grid, &data).norm_sq().sqrt();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        // a leak of order 1e-15 leaves gaps of its square root
        assert!(r.gap.map_or(true, |g| g < 1e-6 * n0), "{r:?}");
        assert!(r.leaked.abs() < 1e-12 * n0 * n0, "{r:?}");
    }
    assert!(rows[2].gap.is_none());
}

#[test]
fn convergence_study_leak_is_non_negative_and_decreasing() {
    let data = squeezed(0.3, 60.0);
    let grid = WedgeGrid::covering(-1.3, 1.3, 1.0 / 32.0).unwrap();
    let p = params(1.0, 0.7, -1.1, 0.4);
    let rows = convergence_study(&data, &p, &grid, 0.5, &[0.4, 0.2, 0.1]).unwrap();
    for r in &rows {
        assert!(r.leaked >= 0.0 && r.max_norm_increase <= 1e-15 && r.flux_mismatch < 1e-6, "{r:?}");
        assert!((r.leaked + r.flux).abs() <= 2e-3 * r.leaked, "{r:?}");
    }
    for w in rows.windows(2) {
        assert!(w[1].leaked < w[0].leaked, "{w:?}");
    }
}

#[test]
fn convergence_study_rejects_bad_ladders() {
    let data = squeezed(0.45, 30.0);
    let grid = WedgeGrid::covering(-1.0, 1.0, 1.0 / 16.0).unwrap();
    let p = params(1.0, 0.7, -1.1, 0.4);
    for ladder in [&[][..], &[0.2, 0.4][..], &[0.4, 0.4][..], &[0.4, -0.2][..]] {
        assert!(convergence_study(&data, &p, &grid, 0.25, ladder).is_err(), "{ladder:?}");
    }
}

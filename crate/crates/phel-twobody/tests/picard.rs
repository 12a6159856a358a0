use phel_free::Packet;
use phel_numerics::C64;
use phel_twobody::{picard_solve, Error, PicardGrid, ProductData, TwoBodyConfig, TwoBodyEvolver};
use std::f64::consts::PI;

fn data() -> ProductData {
    let p = |center: f64, a: f64, b: f64| Packet {
        center,
        sharpness: 20.0,
        momentum: 0.0,
        amplitudes: [C64::new(a, 0.0), C64::new(b, 0.0)],
    };
    ProductData { photon: p(-1.0, 1.0, 0.5), electron: p(1.0, 0.3, 1.0), delta0: 0.0 }
}

fn grid(h: f64, steps: usize, max_iter: usize) -> PicardGrid {
    PicardGrid {
        h,
        steps,
        s_range: (-2.5, 4.5),
        p_range: (-3.0, 1.0),
        q_range: (-1.5, 2.4375),
        tol: 1e-12,
        max_iter,
    }
}

#[test]
fn gaussian_data_vanish_at_the_diagonal() {
    let d = data();
    for s in [-1.0, 0.0, 0.5, 1.0] {
        let v = phel_twobody::TwoBodyInitial::eval(&d, s - 1e-12, s);
        assert!(v.iter().all(|c| c.norm() < 1e-17), "{v:?}");
    }
}

#[test]
fn contact_evolution_agrees_with_picard_iteration() {
    let theta = PI / 3.0;
    let d = data();
    let h = 1.0 / 64.0;
    let sol = picard_solve(&d, 1.0, theta, grid(h, 64, 60)).unwrap();
    let ratio = sol.max_residual_ratio();
    assert!(ratio < 1.0, "residual ratio {ratio}");
    let ev = TwoBodyEvolver::new(&d, 1.0, theta, h).unwrap();
    let mut worst: f64 = 0.0;
    for a in 0..64 {
        for b in 0..64 {
            let s_ph = -2.5 + a as f64 / 16.0;
            let s_e = -1.5 + b as f64 / 16.0;
            if s_e <= s_ph {
                continue;
            }
            let c = TwoBodyConfig { t_ph: 1.0, s_ph, t_e: 1.0, s_e };
            let (x, y) = (ev.eval(&c).unwrap(), sol.eval(&c).unwrap());
            for k in 0..4 {
                worst = worst.max((x[k] - y[k]).norm());
            }
        }
    }
    assert!(worst < 1e-3, "sup difference {worst:e}");
}

#[test]
fn stalled_iteration_reports_its_history() {
    let mut g = grid(1.0 / 8.0, 8, 2);
    g.q_range = (-1.5, 2.5);
    let err = picard_solve(&data(), 1.0, 0.0, g).unwrap_err();
    match err {
        Error::NoConvergence { iterations, residuals, .. } => {
            assert_eq!(iterations, 2);
            assert_eq!(residuals.len(), 2);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn rejects_off_lattice_ranges() {
    let mut g = grid(1.0 / 8.0, 8, 10);
    g.s_range = (-2.51, 4.5);
    assert!(picard_solve(&data(), 1.0, 0.0, g).is_err());
}

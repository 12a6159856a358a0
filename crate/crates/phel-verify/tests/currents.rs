mod common;

use common::squeezed;
use phel_numerics::{PhysicalParams, C64};
use phel_oracles::trace::joint_current;
use phel_threebody::{ThreeBodyConfig, ThreeBodyEvolver};
use phel_verify::{convergence_order, current_equal_time, current_multitime, joint_divergences};
use proptest::prelude::*;

fn components() -> impl Strategy<Value = [C64; 8]> {
    prop::array::uniform8((-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| C64::new(a, b)))
}

fn unit(k: usize) -> [C64; 8] {
    std::array::from_fn(|j| C64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
}

#[test]
fn single_component_currents_match_the_trace() {
    for k in 0..8 {
        let j = current_multitime(&unit(k)).j;
        for mu in 0..2 {
            for nu in 0..2 {
                for kappa in 0..2 {
                    let oracle = joint_current(&unit(k), mu, nu, kappa);
                    assert!((j[mu][nu][kappa] - oracle).abs() < 1e-15, "k {k} ({mu}{nu}{kappa}): {} vs {oracle}", j[mu][nu][kappa]);
                }
            }
        }
    }
    // ψ₋₋₋ = 1 alone gives the same value for every index triple
    let j = current_multitime(&unit(0)).j;
    assert!(j.iter().flatten().flatten().all(|&x| x == 0.25));
}

#[test]
fn zero_field_has_zero_current() {
    let zero = [C64::new(0.0, 0.0); 8];
    assert!(current_multitime(&zero).j.iter().flatten().flatten().all(|&x| x == 0.0));
    let e = current_equal_time(&zero);
    assert_eq!((e.j0, e.j), (0.0, [0.0; 3]));
}

#[test]
fn equal_time_current_examples() {
    let e = current_equal_time(&unit(7));
    assert_eq!((e.j0, e.j), (1.0, [-1.0; 3]));
    let flat = [C64::new(0.6, -0.8); 8];
    let e = current_equal_time(&flat);
    assert!((e.j0 - 8.0).abs() < 1e-14);
    assert!(e.j.iter().all(|x| x.abs() < 1e-14));
}

proptest! {
    #[test]
    fn sign_table_matches_the_trace(psi in components()) {
        let j = current_multitime(&psi).j;
        let scale: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().max(1.0);
        for mu in 0..2 {
            for nu in 0..2 {
                for kappa in 0..2 {
                    let oracle = joint_current(&psi, mu, nu, kappa);
                    prop_assert!((j[mu][nu][kappa] - oracle).abs() < 1e-13 * scale);
                }
            }
        }
        prop_assert!(j[0][0][0] >= 0.0);
    }

    #[test]
    fn equal_time_current_is_bounded_by_the_density(psi in components()) {
        let e = current_equal_time(&psi);
        prop_assert!(e.j0 >= 0.0);
        for x in e.j {
            prop_assert!(x.abs() <= e.j0 * (1.0 + 1e-15));
        }
        prop_assert!((e.j0 - 4.0 * current_multitime(&psi).j[0][0][0]).abs() < 1e-12 * e.j0.max(1.0));
    }
}

#[test]
fn free_field_is_jointly_conserved_to_second_order() {
    let data = squeezed(0.6, 30.0);
    let params = PhysicalParams { omega: 1.0, theta1: 0.0, theta2: 0.0, epsilon: 0.1, delta0: 0.1 };
    let ev = ThreeBodyEvolver::new(&data, params, 1.0 / 1024.0).unwrap();
    let field = |c: &ThreeBodyConfig| ev.free(c);
    let configs = [
        ThreeBodyConfig { t_ph: 0.25, s_ph: 0.05, t_e1: 0.2, s_e1: -0.62, t_e2: 0.3, s_e2: 0.58 },
        ThreeBodyConfig { t_ph: 0.1, s_ph: -0.1, t_e1: 0.35, s_e1: -0.7, t_e2: 0.15, s_e2: 0.5 },
    ];
    for c in configs {
        let errs: Vec<f64> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&h| joint_divergences(field, &c, h).unwrap().max_abs())
            .collect();
        let orders = convergence_order(&errs);
        assert!(orders.iter().all(|p| (1.8..=2.2).contains(p)), "{c:?}: divergences {errs:?}, orders {orders:?}");
    }
}

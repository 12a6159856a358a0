mod common;

use common::{params, squeezed};
use phel_numerics::{C64, I};
use phel_threebody::{leaky_evolve, leaky_step, ThreeBodyField, TransitionFunction, WedgeGrid};
use phel_verify::{
    continuity_residual, convergence_order, field_flux_mismatch, l2_norm_wedge, probability_balance,
    wall_condition_residual, wall_flux_raw, wall_flux_reduced, Wall,
};
use proptest::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

fn unit(k: usize) -> [C64; 8] {
    std::array::from_fn(|j| C64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
}

#[test]
fn flux_examples() {
    // ψ₊₋₋ = 1 with μ = 0: nothing is reflected
    assert!((wall_flux_reduced(&unit(4), 0.0, Wall::C1) + FRAC_1_SQRT_2).abs() < 1e-16);
    assert!((wall_flux_raw(&unit(4), Wall::C1) + FRAC_1_SQRT_2).abs() < 1e-16);
    for k in 0..8 {
        for wall in [Wall::C1, Wall::C2] {
            assert_eq!(wall_flux_reduced(&unit(k), 1.0, wall), 0.0);
        }
    }
}

fn components() -> impl Strategy<Value = [C64; 8]> {
    prop::array::uniform8((-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| C64::new(a, b)))
}

proptest! {
    #[test]
    fn raw_and_reduced_flux_agree_under_the_wall_condition(
        mut psi in components(), mu in 0.0f64..1.0, theta in -3.2f64..3.2, c1 in any::<bool>(),
    ) {
        let phase = (I * theta).exp() * mu;
        let wall = if c1 { Wall::C1 } else { Wall::C2 };
        match wall {
            Wall::C1 => { psi[2] = phase * psi[4]; psi[3] = phase * psi[5]; }
            Wall::C2 => { psi[4] = phase * psi[1]; psi[6] = phase * psi[3]; }
        }
        prop_assert!(wall_condition_residual(&psi, mu, theta, wall) < 1e-15);
        let (raw, red) = (wall_flux_raw(&psi, wall), wall_flux_reduced(&psi, mu, wall));
        prop_assert!((raw - red).abs() < 1e-13);
        prop_assert!(red <= 0.0);
    }
}

#[test]
fn lattice_wall_fields_obey_the_flux_reduction() {
    let data = squeezed(0.3, 60.0);
    let p = params(1.0, 0.8, -0.4, 0.2);
    let mu = TransitionFunction::new(p.epsilon).unwrap();
    let grid = WedgeGrid::covering(-0.8, 0.8, 1.0 / 32.0).unwrap();
    let mut field = ThreeBodyField::from_data(grid, &data);
    let mut wall_nodes = 0;
    for _ in 0..8 {
        field = leaky_step(&field, &p, &mu, 0.0625).unwrap().0;
        assert!(field_flux_mismatch(&field, &mu) < 1e-6);
        let g = &field.grid;
        for a in 0..g.count() {
            for other in 0..g.count() {
                if let Some(v) = (other > a).then(|| field.at(a, a, other)).flatten() {
                    let m = mu.at(g.position(other) - g.position(a));
                    assert!(wall_condition_residual(v, m, p.theta1, Wall::C1) < 1e-12);
                    wall_nodes += (v[4].norm() > 1e-3) as usize;
                }
                if let Some(v) = (other < a).then(|| field.at(a, other, a)).flatten() {
                    let m = mu.at(g.position(a) - g.position(other));
                    assert!(wall_condition_residual(v, m, p.theta2, Wall::C2) < 1e-12);
                }
            }
        }
    }
    assert!(wall_nodes > 100, "the packet reaches the wall ({wall_nodes} samples)");
}

#[test]
fn balance_without_wall_contact_is_trivial() {
    let data = squeezed(0.6, 60.0);
    let p = params(1.0, 0.8, -0.4, 0.1);
    let mu = TransitionFunction::new(p.epsilon).unwrap();
    let run = leaky_evolve(&data, &p, WedgeGrid::covering(-1.0, 1.0, 1.0 / 32.0).unwrap(), &mu, 0.125).unwrap();
    let b = probability_balance(&run);
    assert!(b.norm_change().abs() < 1e-4 && b.integrated_flux.abs() < 1e-4, "{b:?}");
    assert!((l2_norm_wedge(&run.field).powi(2) - b.final_norm_sq).abs() < 1e-15);
}

#[test]
fn balance_with_wall_contact_and_shrinking_leak() {
    let data = squeezed(0.3, 60.0);
    let grid = WedgeGrid::covering(-1.5, 1.5, 1.0 / 32.0).unwrap();
    let mut leaks = Vec::new();
    for eps in [0.4, 0.2, 0.1] {
        let p = params(1.0, 0.8, -0.4, eps);
        let mu = TransitionFunction::new(eps).unwrap();
        let b = probability_balance(&leaky_evolve(&data, &p, grid.clone(), &mu, 0.5).unwrap());
        assert!(b.norm_change() < 0.0 && b.integrated_flux < 0.0, "{b:?}");
        assert!(b.relative_mismatch() < 2e-3, "eps {eps}: {b:?}");
        leaks.push(b.integrated_flux.abs());
    }
    assert!(leaks.windows(2).all(|w| w[1] <= w[0]), "{leaks:?}");
}

#[test]
fn equal_time_continuity_holds_to_second_order() {
    // unmasked data: the C² wall cutoff would limit the difference quotients;
    // sampled nodes stay beyond the reach of anything reflected at the walls
    let mut data = squeezed(0.6, 20.0);
    data.delta0 = 0.0;
    let mut residuals = Vec::new();
    for n in [32.0, 64.0] {
        let h = 1.0 / n;
        let p = params(1.0, 0.8, -0.4, 0.1);
        let mu = TransitionFunction::new(p.epsilon).unwrap();
        let grid = WedgeGrid::covering(-1.0, 1.0, h).unwrap();
        let field = |t: f64| leaky_evolve(&data, &p, grid.clone(), &mu, t).unwrap().field;
        let (t, dt) = (0.125, h);
        let (before, center, after) = (field(t - dt), field(t), field(t + dt));
        let g = center.grid.clone();
        let keep = |a: usize, b: usize, c: usize| {
            let (x, y, z) = (g.position(a), g.position(b), g.position(c));
            x - y > 0.35 && z - x > 0.35
        };
        residuals.push(continuity_residual(&before, &center, &after, dt, keep).unwrap().0);
    }
    let order = convergence_order(&residuals)[0];
    assert!((1.8..=2.2).contains(&order), "residuals {residuals:?}, order {order}");
}

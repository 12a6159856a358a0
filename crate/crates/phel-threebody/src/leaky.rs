//! Equal-time evolution with leaky contact conditions on a characteristic
//! lattice.
//!
//! One step of length `h` (the lattice spacing) is `R(h/2) T R(h/2)`:
//! `R` rotates each electron's chiral pair by the mass term, `T` moves
//! every component one node along its characteristic. A component whose
//! characteristic leaves the wedge through a contact wall during `T` is
//! replaced by the reflected incoming component times `μ_ε(d)·e^{iθ}`,
//! with `d = s_e2 − s_e1` taken where the characteristic meets the wall.
//! Walls contain nodes; there the mass rotation of the touching electron is
//! skipped so that the stored outgoing and incoming values keep obeying the
//! wall condition, which makes the trapezoid norm non-increasing exactly.

use crate::wedge::split_blocks;
use crate::{comp3, ThreeBodyField, ThreeBodyInitial, TransitionFunction, WedgeGrid};
use phel_numerics::{Error, PhysicalParams, Result, Sign, C64, I};
use rayon::prelude::*;
use std::f64::consts::SQRT_2;

/// Bookkeeping of one lattice step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    /// Time at the end of the step.
    pub time: f64,
    /// Squared norm at the end of the step.
    pub norm_sq: f64,
    /// Time integral over the step of the probability flux through the
    /// first wall; never positive.
    pub flux_c1: f64,
    /// Same for the second wall.
    pub flux_c2: f64,
    /// Largest pointwise difference between the flux computed from all wall
    /// components and the flux after substituting the wall condition.
    pub flux_mismatch: f64,
}

/// Result of an evolution: final field plus per-step records.
#[derive(Debug, Clone)]
pub struct LeakyRun {
    pub field: ThreeBodyField,
    pub initial_norm_sq: f64,
    pub records: Vec<StepRecord>,
    /// `(time, squared norm)` after each step of length at most `ε/2`.
    pub macro_norms: Vec<(f64, f64)>,
}

impl LeakyRun {
    /// Time-integrated flux through both walls.
    pub fn total_flux(&self) -> f64 {
        self.records.iter().map(|r| r.flux_c1 + r.flux_c2).sum()
    }

    pub fn max_flux_mismatch(&self) -> f64 {
        self.records.iter().map(|r| r.flux_mismatch).fold(0.0, f64::max)
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    node_c1: f64,
    node_c2: f64,
    hit_c1: f64,
    hit_c2: f64,
    mismatch: f64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.node_c1 += o.node_c1;
        self.node_c2 += o.node_c2;
        self.hit_c1 += o.hit_c1;
        self.hit_c2 += o.hit_c2;
        self.mismatch = self.mismatch.max(o.mismatch);
        self
    }

    /// Records one wall sample with incoming `inc` and outgoing `out`
    /// squared magnitudes and transition value `mu`.
    fn sample(&mut self, inc: f64, out: f64, mu: f64) -> f64 {
        let raw = (out - inc) / SQRT_2;
        let reduced = (mu * mu - 1.0) * inc / SQRT_2;
        self.mismatch = self.mismatch.max((raw - reduced).abs());
        inc - out
    }
}

struct Stepper {
    h: f64,
    cos: f64,
    sin: f64,
    phase1: C64,
    phase2: C64,
    mu: TransitionFunction,
}

fn sv(s: Sign) -> i64 {
    s.value() as i64
}

impl Stepper {
    fn rotate_half(&self, field: &mut ThreeBodyField) {
        let (c, s) = (self.cos, self.sin);
        let g = field.grid.clone();
        let blocks = split_blocks(&g, &mut field.values);
        blocks.into_par_iter().enumerate().for_each(|(a, block)| {
            for (j, v) in block.iter_mut().enumerate() {
                let (b, cc) = g.block_node(a, j);
                if a != b {
                    for k in [0, 1, 4, 5] {
                        let (x, y) = (v[k], v[k + 2]);
                        v[k] = x * c - I * s * y;
                        v[k + 2] = y * c - I * s * x;
                    }
                }
                if a != cc {
                    for k in [0, 2, 4, 6] {
                        let (x, y) = (v[k], v[k + 1]);
                        v[k] = x * c - I * s * y;
                        v[k + 1] = y * c - I * s * x;
                    }
                }
            }
        });
    }

    fn transport(&self, cur: &ThreeBodyField, next: &mut ThreeBodyField) -> Tally {
        let g = &cur.grid;
        let h = self.h;
        let zero = C64::new(0.0, 0.0);
        let get = |a: i64, b: i64, c: i64, k: usize| g.index(a, b, c).map_or(zero, |i| cur.values[i][k]);
        let blocks = split_blocks(g, &mut next.values);
        let tallies: Vec<Tally> = blocks
            .into_par_iter()
            .enumerate()
            .map(|(a, block)| {
                let mut t = Tally::default();
                let ai = a as i64;
                for (j, out) in block.iter_mut().enumerate() {
                    let (b, c) = g.block_node(a, j);
                    let (bi, ci) = (b as i64, c as i64);
                    let mut v = [zero; 8];
                    for (k, slot) in v.iter_mut().enumerate() {
                        let [x, y, z] = crate::signs3(k);
                        *slot = get(ai + sv(x), bi + sv(y), ci + sv(z), k);
                    }
                    let d = (c - b) as f64 * h;
                    let r1 = a - b;
                    if r1 <= 1 {
                        let (mut inc, mut outg) = (0.0, 0.0);
                        let mu_node = self.mu.at(d);
                        for s2 in Sign::BOTH {
                            let ko = comp3(Sign::Minus, Sign::Plus, s2);
                            let ki = comp3(Sign::Plus, Sign::Minus, s2);
                            if r1 == 1 {
                                let old = get(ai, bi, ci + sv(s2), ki);
                                let m = self.mu.at(d + (s2.value() - 1.0) * h / 2.0);
                                v[ko] = self.phase1 * old * m;
                                t.hit_c1 += t.sample(old.norm_sqr(), v[ko].norm_sqr(), m);
                            } else {
                                v[ko] = self.phase1 * v[ki] * mu_node;
                                inc += v[ki].norm_sqr();
                                outg += v[ko].norm_sqr();
                            }
                        }
                        if r1 == 0 {
                            let w = if a == c { 0.5 } else { 1.0 };
                            t.node_c1 += w * t.sample(inc, outg, mu_node);
                        }
                    }
                    let r2 = c - a;
                    if r2 <= 1 {
                        let (mut inc, mut outg) = (0.0, 0.0);
                        let mu_node = self.mu.at(d);
                        for s1 in Sign::BOTH {
                            let ko = comp3(Sign::Plus, s1, Sign::Minus);
                            let ki = comp3(Sign::Minus, s1, Sign::Plus);
                            if r2 == 1 {
                                let old = get(ai, bi + sv(s1), ci, ki);
                                let m = self.mu.at(d - (1.0 + s1.value()) * h / 2.0);
                                v[ko] = self.phase2 * old * m;
                                t.hit_c2 += t.sample(old.norm_sqr(), v[ko].norm_sqr(), m);
                            } else {
                                v[ko] = self.phase2 * v[ki] * mu_node;
                                inc += v[ki].norm_sqr();
                                outg += v[ko].norm_sqr();
                            }
                        }
                        if r2 == 0 {
                            let w = if a == b { 0.5 } else { 1.0 };
                            t.node_c2 += w * t.sample(inc, outg, mu_node);
                        }
                    }
                    *out = v;
                }
                t
            })
            .collect();
        tallies.into_iter().fold(Tally::default(), Tally::merge)
    }
}

/// Owns the two lattice buffers of a running evolution.
struct Lattice {
    cur: ThreeBodyField,
    next: ThreeBodyField,
    stepper: Stepper,
}

impl Lattice {
    fn new(field: ThreeBodyField, params: &PhysicalParams, mu: TransitionFunction) -> Self {
        let h = field.grid.spacing();
        let angle = params.omega * h / 2.0;
        let stepper = Stepper {
            h,
            cos: angle.cos(),
            sin: angle.sin(),
            phase1: C64::from_polar(1.0, params.theta1),
            phase2: C64::from_polar(1.0, params.theta2),
            mu,
        };
        let next = ThreeBodyField::zeros(field.grid.clone(), field.time);
        Self { cur: field, next, stepper }
    }

    fn step(&mut self) -> StepRecord {
        let h = self.stepper.h;
        self.stepper.rotate_half(&mut self.cur);
        let t = self.stepper.transport(&self.cur, &mut self.next);
        self.stepper.rotate_half(&mut self.next);
        let prev = self.cur.wall_rate;
        self.next.time = self.cur.time + h;
        self.next.wall_rate = [t.node_c1, t.node_c2];
        std::mem::swap(&mut self.cur, &mut self.next);
        // wall nodes: trapezoid in time; half-step wall crossings: midpoint
        let h3 = h * h * h;
        let flux_c1 = -h3 * (0.5 * (prev[0] + t.node_c1) + t.hit_c1);
        let flux_c2 = -h3 * (0.5 * (prev[1] + t.node_c2) + t.hit_c2);
        StepRecord { time: self.cur.time, norm_sq: self.cur.norm_sq(), flux_c1, flux_c2, flux_mismatch: t.mismatch }
    }
}

fn check_lattice(op: &'static str, params: &PhysicalParams, mu: &TransitionFunction, h: f64) -> Result<()> {
    params.validate()?;
    if !(mu.epsilon > 0.0) {
        return Err(Error::domain(op, "the leaky evolution needs epsilon > 0"));
    }
    if h > 0.5 * mu.epsilon * (1.0 + 1e-12) {
        return Err(Error::contract(
            op,
            format!("lattice spacing {h} exceeds epsilon/2 = {}; wall crossings near the corner would not be cut off", mu.epsilon / 2.0),
        ));
    }
    Ok(())
}

fn whole_steps(op: &'static str, dt: f64, h: f64) -> Result<usize> {
    let m = (dt / h).round();
    if !(dt >= 0.0) || (m * h - dt).abs() > 1e-9 * h.max(dt) {
        return Err(Error::contract(op, format!("duration {dt} is not a non-negative multiple of the lattice spacing {h}")));
    }
    Ok(m as usize)
}

/// Largest multiple of the lattice spacing not exceeding `ε/2`.
pub fn macro_step(mu: &TransitionFunction, h: f64) -> f64 {
    ((0.5 * mu.epsilon / h + 1e-9).floor()).max(1.0) * h
}

/// Advances `state` by `dt ≤ ε/2`, a multiple of the lattice spacing.
pub fn leaky_step(
    state: &ThreeBodyField,
    params: &PhysicalParams,
    mu: &TransitionFunction,
    dt: f64,
) -> Result<(ThreeBodyField, Vec<StepRecord>)> {
    let h = state.grid.spacing();
    check_lattice("leaky_step", params, mu, h)?;
    if dt > 0.5 * mu.epsilon * (1.0 + 1e-12) {
        return Err(Error::contract("leaky_step", format!("step {dt} exceeds epsilon/2 = {}", mu.epsilon / 2.0)));
    }
    let m = whole_steps("leaky_step", dt, h)?;
    let mut lattice = Lattice::new(state.clone(), params, *mu);
    let records = (0..m).map(|_| lattice.step()).collect();
    Ok((lattice.cur, records))
}

/// Evolves a lattice field up to time `t_final` in steps of
/// [`macro_step`], the last one shortened.
pub fn leaky_evolve_field(
    field: ThreeBodyField,
    params: &PhysicalParams,
    mu: &TransitionFunction,
    t_final: f64,
) -> Result<LeakyRun> {
    let h = field.grid.spacing();
    check_lattice("leaky_evolve", params, mu, h)?;
    let total = whole_steps("leaky_evolve", t_final - field.time, h)?;
    let per_macro = (macro_step(mu, h) / h).round() as usize;
    let initial_norm_sq = field.norm_sq();
    let mut lattice = Lattice::new(field, params, *mu);
    let mut records = Vec::with_capacity(total);
    let mut macro_norms = vec![(lattice.cur.time, initial_norm_sq)];
    for k in 0..total {
        let r = lattice.step();
        records.push(r);
        if (k + 1) % per_macro == 0 || k + 1 == total {
            macro_norms.push((r.time, r.norm_sq));
        }
    }
    Ok(LeakyRun { field: lattice.cur, initial_norm_sq, records, macro_norms })
}

/// Samples `data` on `grid` and evolves it to time `t_final`.
pub fn leaky_evolve<D: ThreeBodyInitial + ?Sized>(
    data: &D,
    params: &PhysicalParams,
    grid: WedgeGrid,
    mu: &TransitionFunction,
    t_final: f64,
) -> Result<LeakyRun> {
    leaky_evolve_field(ThreeBodyField::from_data(grid, data), params, mu, t_final)
}

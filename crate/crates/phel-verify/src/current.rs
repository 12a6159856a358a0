use phel_numerics::{Error, Result, C64};
use phel_threebody::{ThreeBodyConfig, ThreeBodyField};
use rayon::prelude::*;

/// `j^{μνκ}` with `X = ∂t`, indexed `j[μ][ν][κ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentTensor3 {
    pub j: [[[f64; 2]; 2]; 2],
}

/// Equal-time density and the current along each configuration axis
/// (photon, electron 1, electron 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualTimeCurrent {
    pub j0: f64,
    pub j: [f64; 3],
}

/// Sign of particle `p`'s factor for current index 1: `+1` for `ς = −`.
fn chirality(k: usize, particle: usize) -> f64 {
    if (k >> (2 - particle)) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Expands the trace: each `|ψ_{ς₀ς₁ς₂}|²` enters with weight
/// `¼ c₀^μ c₁^ν c₂^κ`, where `c^0 = 1` and `c^1 = −ς` for every particle.
pub fn current_multitime(psi: &[C64; 8]) -> CurrentTensor3 {
    let mut j = [[[0.0; 2]; 2]; 2];
    for (k, v) in psi.iter().enumerate() {
        let w = 0.25 * v.norm_sqr();
        let c = |p: usize, idx: usize| if idx == 0 { 1.0 } else { chirality(k, p) };
        for (mu, plane) in j.iter_mut().enumerate() {
            for (nu, row) in plane.iter_mut().enumerate() {
                for (kappa, x) in row.iter_mut().enumerate() {
                    *x += w * c(0, mu) * c(1, nu) * c(2, kappa);
                }
            }
        }
    }
    CurrentTensor3 { j }
}

pub fn current_equal_time(psi: &[C64; 8]) -> EqualTimeCurrent {
    let mut out = EqualTimeCurrent { j0: 0.0, j: [0.0; 3] };
    for (k, v) in psi.iter().enumerate() {
        let rho = v.norm_sqr();
        out.j0 += rho;
        for (p, x) in out.j.iter_mut().enumerate() {
            *x += chirality(k, p) * rho;
        }
    }
    out
}

/// Central-difference divergences of the joint current in each particle's
/// variables; entry `2ν + κ` (or `2μ + κ`, `2μ + ν`) holds the divergence
/// with the other two indices fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDivergence {
    pub photon: [f64; 4],
    pub electron1: [f64; 4],
    pub electron2: [f64; 4],
}

impl JointDivergence {
    pub fn max_abs(&self) -> f64 {
        self.photon.iter().chain(&self.electron1).chain(&self.electron2).fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Divergences `∂_{x_p^μ} j^{…μ…}` at `c` for the multi-time field `field`,
/// by second-order central differences of step `h` in each particle's time
/// and position.
pub fn joint_divergences<F>(field: F, c: &ThreeBodyConfig, h: f64) -> Result<JointDivergence>
where
    F: Fn(&ThreeBodyConfig) -> Result<[C64; 8]>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("joint_divergences", format!("step {h} must be > 0")));
    }
    let current = |c: ThreeBodyConfig| field(&c).map(|v| current_multitime(&v).j);
    let mut out = JointDivergence { photon: [0.0; 4], electron1: [0.0; 4], electron2: [0.0; 4] };
    for particle in 0..3 {
        let shift = |dt: f64, ds: f64| {
            let mut x = *c;
            match particle {
                0 => {
                    x.t_ph += dt;
                    x.s_ph += ds;
                }
                1 => {
                    x.t_e1 += dt;
                    x.s_e1 += ds;
                }
                _ => {
                    x.t_e2 += dt;
                    x.s_e2 += ds;
                }
            }
            x
        };
        let (tp, tm) = (current(shift(h, 0.0))?, current(shift(-h, 0.0))?);
        let (sp, sm) = (current(shift(0.0, h))?, current(shift(0.0, -h))?);
        // picks j with this particle's index set to `idx` and the others
        // from `other` in order
        let pick = |j: &[[[f64; 2]; 2]; 2], idx: usize, other: usize| {
            let (a, b) = (other >> 1, other & 1);
            match particle {
                0 => j[idx][a][b],
                1 => j[a][idx][b],
                _ => j[a][b][idx],
            }
        };
        let slot = match particle {
            0 => &mut out.photon,
            1 => &mut out.electron1,
            _ => &mut out.electron2,
        };
        for (other, x) in slot.iter_mut().enumerate() {
            *x = (pick(&tp, 0, other) - pick(&tm, 0, other)) / (2.0 * h)
                + (pick(&sp, 1, other) - pick(&sm, 1, other)) / (2.0 * h);
        }
    }
    Ok(out)
}

/// Largest `|∂t j⁰ + ∇·j|` over lattice nodes whose stencil lies in the
/// wedge, from fields at `t − dt`, `t`, `t + dt` on one lattice, with the
/// node where it occurs. Only nodes with `keep(a, b, c)` are sampled.
pub fn continuity_residual<K>(
    before: &ThreeBodyField,
    center: &ThreeBodyField,
    after: &ThreeBodyField,
    dt: f64,
    keep: K,
) -> Result<(f64, [usize; 3])>
where
    K: Fn(usize, usize, usize) -> bool + Sync,
{
    let g = &center.grid;
    if before.grid != *g || after.grid != *g {
        return Err(Error::contract("continuity_residual", "fields live on different lattices"));
    }
    if !(dt > 0.0) {
        return Err(Error::domain("continuity_residual", format!("time step {dt} must be > 0")));
    }
    let h = g.spacing();
    let n = g.count() as i64;
    let worst: Vec<(f64, [usize; 3])> = (1..n - 1)
        .into_par_iter()
        .map(|a| {
            let mut m = (0.0, [0; 3]);
            for b in 1..a {
                for c in a + 1..n - 1 {
                    if a - b < 2 || c - a < 2 || !keep(a as usize, b as usize, c as usize) {
                        continue;
                    }
                    let j = |f: &ThreeBodyField, x: i64, y: i64, z: i64| {
                        current_equal_time(&f.values[g.index(x, y, z).expect("interior node")])
                    };
                    let dt_j0 = (j(after, a, b, c).j0 - j(before, a, b, c).j0) / (2.0 * dt);
                    let div = (j(center, a + 1, b, c).j[0] - j(center, a - 1, b, c).j[0]
                        + j(center, a, b + 1, c).j[1]
                        - j(center, a, b - 1, c).j[1]
                        + j(center, a, b, c + 1).j[2]
                        - j(center, a, b, c - 1).j[2])
                        / (2.0 * h);
                    let r = (dt_j0 + div).abs();
                    if r > m.0 {
                        m = (r, [a as usize, b as usize, c as usize]);
                    }
                }
            }
            m
        })
        .collect();
    Ok(worst.into_iter().fold((0.0, [0; 3]), |m, x| if x.0 > m.0 { x } else { m }))
}

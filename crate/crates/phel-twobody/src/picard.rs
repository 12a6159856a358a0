//! Fixed-point solution of the integral equations that characterize the
//! two-body dynamics, independent of the Goursat construction.
//!
//! The `ς₀ = −` components depend on the photon only through the foot
//! `p = s_ph − t_ph`, the `ς₀ = +` components through `q = s_ph + t_ph`:
//!
//! * `A_ς(p,t,s) = ψ̊₋ς(p, s+ςt) − iω∫₀ᵗ A_ς̄(p, τ, s+ς(t−τ)) dτ`
//! * `B₊(q,t,s) = ψ̊₊₊(q, s+t) − iω∫₀ᵗ B₋(q, τ, s+t−τ) dτ`
//! * `B₋(q,t,s) = ψ̊₊₋(q, s−t) − iω∫₀ᵗ B₊(q, τ, s−t+τ) dτ` when `q ≤ s−t`,
//!   otherwise the line is cut where it meets the collision set at
//!   `T = (q−s+t)/2` and continued with `e^{iθ} A₊(s−t, T, q−T)`.
//!
//! All lines run through nodes of the lattice `Δt = Δs = h`.

use crate::{Error, Result, TwoBodyConfig, TwoBodyInitial};
use phel_numerics::{simpson_weights, C64, I};
use rayon::prelude::*;

/// Lattice for the iteration. All ranges are integer multiples of `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardGrid {
    pub h: f64,
    /// Number of time steps; the final time is `steps · h`.
    pub steps: usize,
    /// Electron positions `[s_lo, s_hi]`.
    pub s_range: (f64, f64),
    /// Feet `p` covering the support of the right-moving photon data.
    pub p_range: (f64, f64),
    /// Feet `q` at which the `ς₀ = +` components are wanted.
    pub q_range: (f64, f64),
    pub tol: f64,
    pub max_iter: usize,
}

impl PicardGrid {
    fn lattice(&self, x: f64) -> Result<i64> {
        let u = x / self.h;
        if (u - u.round()).abs() > 1e-9 * u.abs().max(1.0) {
            return Err(phel_numerics::Error::contract("picard_solve", format!("{x} is not a lattice point")).into());
        }
        Ok(u.round() as i64)
    }

    pub fn final_time(&self) -> f64 {
        self.steps as f64 * self.h
    }
}

/// Solution at the final time plus the convergence record.
#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub grid: PicardGrid,
    s0: i64,
    ns: usize,
    p0: i64,
    q0: i64,
    a_final: Vec<Vec<[C64; 2]>>,
    b_final: Vec<Vec<[C64; 2]>>,
    /// Largest weighted sup change per sweep, for the `A` stage.
    pub residuals_a: Vec<f64>,
    /// Largest weighted sup change per sweep, for the `B` stage.
    pub residuals_b: Vec<f64>,
}

impl PicardSolution {
    /// Value at a lattice configuration with `t_e` equal to the final time.
    pub fn eval(&self, c: &TwoBodyConfig) -> Result<[C64; 4]> {
        let g = &self.grid;
        if (c.t_e - g.final_time()).abs() > 1e-9 {
            return Err(phel_numerics::Error::domain("PicardSolution::eval", "electron time must equal the final time").into());
        }
        let js = g.lattice(c.s_e)? - self.s0;
        if js < 0 || js as usize >= self.ns {
            return Err(phel_numerics::Error::domain("PicardSolution::eval", "electron outside the lattice").into());
        }
        let ip = g.lattice(c.s_ph - c.t_ph)? - self.p0;
        let iq = g.lattice(c.s_ph + c.t_ph)? - self.q0;
        let zero = [C64::new(0.0, 0.0); 2];
        let a = usize::try_from(ip).ok().and_then(|i| self.a_final.get(i)).map_or(zero, |r| r[js as usize]);
        let b = self.b_final.get(usize::try_from(iq).map_err(|_| q_err())?).ok_or_else(q_err)?[js as usize];
        Ok([a[0], a[1], b[0], b[1]])
    }

    /// Largest ratio of successive residuals above the roundoff floor.
    pub fn max_residual_ratio(&self) -> f64 {
        [&self.residuals_a, &self.residuals_b]
            .iter()
            .flat_map(|r| {
                let floor = 1e-13 * r.first().copied().unwrap_or(0.0);
                r.windows(2).filter(move |w| w[1] > floor).map(|w| w[1] / w[0]).collect::<Vec<_>>()
            })
            .fold(0.0, f64::max)
    }
}

fn q_err() -> Error {
    phel_numerics::Error::domain("PicardSolution::eval", "photon foot outside the q range").into()
}

struct Plane {
    nt: usize,
    ns: usize,
    v: Vec<[C64; 2]>,
}

impl Plane {
    fn zeros(nt: usize, ns: usize) -> Self {
        Self { nt, ns, v: vec![[C64::new(0.0, 0.0); 2]; (nt + 1) * ns] }
    }

    fn get(&self, k: usize, j: i64, c: usize) -> C64 {
        if j < 0 || j as usize >= self.ns {
            C64::new(0.0, 0.0)
        } else {
            self.v[k * self.ns + j as usize][c]
        }
    }

    fn weighted_diff(&self, other: &Plane, gamma_h: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..=self.nt {
            let w = (-gamma_h * k as f64).exp();
            for j in 0..self.ns {
                let (a, b) = (self.v[k * self.ns + j], other.v[k * self.ns + j]);
                worst = worst.max(w * (a[0] - b[0]).norm().max((a[1] - b[1]).norm()));
            }
        }
        worst
    }
}

/// Integral of line samples `f(i)`, `i = i0..=k`, from `T = i0 − ½` (when
/// `half` is set) or `T = i0` up to `k`, in units where `h` is supplied.
fn line_integral(f: impl Fn(usize) -> C64, i0: usize, k: usize, half: bool, h: f64, weights: &[Vec<f64>]) -> C64 {
    let m = k - i0;
    let mut acc = C64::new(0.0, 0.0);
    for (i, w) in weights[m].iter().enumerate() {
        acc += f(i0 + i) * *w;
    }
    if half {
        // cubic extrapolation onto the half cell below i0
        let avail = (m + 1).min(4);
        let ws = half_cell_weights(avail);
        for (i, w) in ws.iter().enumerate() {
            acc += f(i0 + i) * (*w * h);
        }
    }
    acc
}

/// `∫_{−1/2}^{0} L_j(u) du` for Lagrange bases on nodes `0..n`.
fn half_cell_weights(n: usize) -> Vec<f64> {
    let basis = |j: usize, u: f64| {
        (0..n).filter(|&m| m != j).fold(1.0, |acc, m| acc * (u - m as f64) / (j as f64 - m as f64))
    };
    (0..n)
        .map(|j| (basis(j, -0.5) + 4.0 * basis(j, -0.25) + basis(j, 0.0)) * (0.5 / 6.0))
        .collect()
}

/// Solve the integral equations by Picard iteration on the lattice.
pub fn picard_solve<D: TwoBodyInitial + ?Sized>(
    data: &D,
    omega: f64,
    theta: f64,
    grid: PicardGrid,
) -> Result<PicardSolution> {
    if !(grid.h > 0.0) || grid.steps == 0 || !omega.is_finite() || omega < 0.0 {
        return Err(phel_numerics::Error::domain("picard_solve", "need h > 0, steps > 0, omega >= 0").into());
    }
    let h = grid.h;
    let nt = grid.steps;
    let s0 = grid.lattice(grid.s_range.0)?;
    let ns = (grid.lattice(grid.s_range.1)? - s0 + 1).max(2) as usize;
    let p0 = grid.lattice(grid.p_range.0)?;
    let np = (grid.lattice(grid.p_range.1)? - p0 + 1).max(1) as usize;
    let q0 = grid.lattice(grid.q_range.0)?;
    let nq = (grid.lattice(grid.q_range.1)? - q0 + 1).max(1) as usize;
    let weights: Vec<Vec<f64>> = (0..=nt).map(|m| simpson_weights(m, h)).collect();
    let gamma_h = (8.0 * omega).max(1.0) * h;
    let x = |n: i64| n as f64 * h;
    let coupling = -I * omega;
    let phase = C64::from_polar(1.0, theta);

    // A stage: one independent Volterra problem per foot p.
    let a_planes: Vec<(Plane, Vec<f64>)> = (0..np)
        .into_par_iter()
        .map(|ip| {
            let p = x(p0 + ip as i64);
            let data_row: Vec<[C64; 4]> = (-(nt as i64)..(ns + nt) as i64).map(|j| data.eval(p, x(s0 + j))).collect();
            let d = |j: i64, c: usize| data_row[(j + nt as i64) as usize][c];
            let mut cur = Plane::zeros(nt, ns);
            for k in 0..=nt {
                for j in 0..ns {
                    cur.v[k * ns + j] = [d(j as i64 - k as i64, 0), d(j as i64 + k as i64, 1)];
                }
            }
            let mut history = Vec::new();
            for _ in 0..grid.max_iter {
                let mut next = Plane::zeros(nt, ns);
                for k in 0..=nt {
                    let w = &weights[k];
                    for j in 0..ns {
                        let ji = j as i64;
                        let mut acc = [C64::new(0.0, 0.0); 2];
                        for (i, wi) in w.iter().enumerate() {
                            let back = (k - i) as i64;
                            acc[0] += cur.get(i, ji - back, 1) * *wi;
                            acc[1] += cur.get(i, ji + back, 0) * *wi;
                        }
                        next.v[k * ns + j] =
                            [d(ji - k as i64, 0) + coupling * acc[0], d(ji + k as i64, 1) + coupling * acc[1]];
                    }
                }
                let r = next.weighted_diff(&cur, gamma_h);
                history.push(r);
                cur = next;
                if r < grid.tol {
                    break;
                }
            }
            (cur, history)
        })
        .collect();
    let residuals_a = merge_histories(a_planes.iter().map(|(_, r)| r));
    if a_planes.iter().any(|(_, r)| r.last().is_some_and(|v| *v >= grid.tol)) {
        return Err(Error::NoConvergence { iterations: grid.max_iter, tol: grid.tol, residuals: residuals_a });
    }

    // Collision values W(p, q) = A₊ at the crossing of the line s + t = q
    // with s − t = p, for 0 < q − p ≤ 2·steps.
    let lattice_s = |n: i64| n - s0;
    let w_table = |ip: i64, iq: i64| -> C64 {
        let p = p0 + ip;
        let q = q0 + iq;
        let diff = q - p;
        if diff <= 0 || diff > 2 * nt as i64 {
            return C64::new(0.0, 0.0);
        }
        let base = data.eval(x(p), x(q))[1];
        if ip < 0 || ip as usize >= np {
            return base;
        }
        let plane = &a_planes[ip as usize].0;
        let tc2 = diff as usize; // 2·T in units of h
        let kf = tc2 / 2;
        let f = |i: usize| plane.get(i, lattice_s(q - i as i64), 0);
        let mut acc = C64::new(0.0, 0.0);
        for (i, w) in weights[kf].iter().enumerate() {
            acc += f(i) * *w;
        }
        if tc2 % 2 == 1 {
            // half cell above kf, centred cubic through kf−1..kf+2
            let lo = kf.saturating_sub(1).min(nt.saturating_sub(3));
            let u0 = (kf - lo) as f64;
            let n = (nt + 1 - lo).min(4);
            let basis = |j: usize, u: f64| {
                (0..n).filter(|&m| m != j).fold(1.0, |a, m| a * (u - m as f64) / (j as f64 - m as f64))
            };
            for j in 0..n {
                let wj = (basis(j, u0) + 4.0 * basis(j, u0 + 0.25) + basis(j, u0 + 0.5)) * (0.5 / 6.0) * h;
                acc += f(lo + j) * wj;
            }
        }
        base + coupling * acc
    };
    let a_final: Vec<Vec<[C64; 2]>> = a_planes.iter().map(|(pl, _)| pl.v[nt * ns..].to_vec()).collect();

    // B stage: one coupled Volterra problem per foot q.
    let b_planes: Vec<(Vec<[C64; 2]>, Vec<f64>)> = (0..nq)
        .into_par_iter()
        .map(|iq| {
            let q = q0 + iq as i64;
            let data_row: Vec<[C64; 4]> = (-(nt as i64)..(ns + nt) as i64).map(|j| data.eval(x(q), x(s0 + j))).collect();
            let d = |j: i64, c: usize| data_row[(j + nt as i64) as usize][c];
            // collision values indexed by s − t lattice offset
            let wq: Vec<C64> = (-(nt as i64)..ns as i64).map(|j| w_table(s0 + j - p0, iq as i64)).collect();
            let wcol = |j: i64| wq[(j + nt as i64) as usize];
            let source = |k: usize, j: usize| -> [C64; 2] {
                let ji = j as i64;
                let n = s0 + ji;
                if n + (k as i64) < q {
                    return [C64::new(0.0, 0.0); 2];
                }
                let minus = if q <= n - k as i64 { d(ji - k as i64, 2) } else { phase * wcol(ji - k as i64) };
                [minus, d(ji + k as i64, 3)]
            };
            let mut cur = Plane::zeros(nt, ns);
            for k in 0..=nt {
                for j in 0..ns {
                    cur.v[k * ns + j] = source(k, j);
                }
            }
            let mut history = Vec::new();
            for _ in 0..grid.max_iter {
                let mut next = Plane::zeros(nt, ns);
                for k in 0..=nt {
                    for j in 0..ns {
                        let ji = j as i64;
                        let n = s0 + ji;
                        if n + (k as i64) < q {
                            continue;
                        }
                        let src = source(k, j);
                        // B₊ along (τ, s+t−τ)
                        let mut plus = C64::new(0.0, 0.0);
                        for (i, wi) in weights[k].iter().enumerate() {
                            plus += cur.get(i, ji + (k - i) as i64, 0) * *wi;
                        }
                        // B₋ along (τ, s−t+τ) from max(0, T)
                        let t2 = q - (n - k as i64); // 2T in units of h
                        let line = |i: usize| cur.get(i, ji - (k - i) as i64, 1);
                        let minus = if t2 <= 0 {
                            line_integral(line, 0, k, false, h, &weights)
                        } else {
                            let i0 = ((t2 + 1) / 2) as usize;
                            line_integral(line, i0, k, t2 % 2 == 1, h, &weights)
                        };
                        next.v[k * ns + j] = [src[0] + coupling * minus, src[1] + coupling * plus];
                    }
                }
                let r = next.weighted_diff(&cur, gamma_h);
                history.push(r);
                cur = next;
                if r < grid.tol {
                    break;
                }
            }
            (cur.v[nt * ns..].to_vec(), history)
        })
        .collect();
    let residuals_b = merge_histories(b_planes.iter().map(|(_, r)| r));
    if b_planes.iter().any(|(_, r)| r.last().is_some_and(|v| *v >= grid.tol)) {
        return Err(Error::NoConvergence { iterations: grid.max_iter, tol: grid.tol, residuals: residuals_b });
    }
    Ok(PicardSolution {
        grid,
        s0,
        ns,
        p0,
        q0,
        a_final,
        b_final: b_planes.into_iter().map(|(v, _)| v).collect(),
        residuals_a,
        residuals_b,
    })
}

fn merge_histories<'a>(hist: impl Iterator<Item = &'a Vec<f64>>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in hist {
        for (i, v) in r.iter().enumerate() {
            if i < out.len() {
                out[i] = out[i].max(*v);
            } else {
                out.push(*v);
            }
        }
    }
    out
}

//! Elements of the deficiency spaces `Ker(i ∓ Ĥ*)` of the massless
//! three-body Hamiltonian, written in relative coordinates
//! `s = (s_ph − s_e1)/2`, `s̃ = (s_e2 − s_ph)/2`, `s_p = s_ph`.

use gauss_quad::legendre::GaussLegendre;
use phel_numerics::{Error, Result, C64};
use rayon::prelude::*;
use std::sync::Arc;

/// A profile on the half-plane `ℝ × ℝ₊`.
pub type Profile = Arc<dyn Fn(f64, f64) -> C64 + Send + Sync>;

/// Which deficiency space an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deficiency {
    /// `Ker(i − Ĥ*)`: `Ĥ*Ψ = iΨ`, profiles `(g₂, g₃, g₄, g₆)`.
    Plus,
    /// `Ker(i + Ĥ*)`: `Ĥ*Ψ = −iΨ`, profiles `(f₁, f₃, f₄, f₅)`.
    Minus,
}

impl Deficiency {
    /// Component slots carrying the four profiles, in profile order.
    pub fn slots(self) -> [usize; 4] {
        match self {
            Deficiency::Plus => [2, 3, 4, 6],
            Deficiency::Minus => [1, 3, 4, 5],
        }
    }

    fn eigenvalue(self) -> f64 {
        match self {
            Deficiency::Plus => 1.0,
            Deficiency::Minus => -1.0,
        }
    }
}

/// Four profiles assembled into an eight-component field. `decay` is the
/// rate of the exponential weights, `1/ħ = 1` for a true kernel element.
#[derive(Clone)]
pub struct DeficiencyElement {
    pub kind: Deficiency,
    pub profiles: [Profile; 4],
    pub decay: f64,
}

impl DeficiencyElement {
    pub fn new(kind: Deficiency, profiles: [Profile; 4]) -> Self {
        Self { kind, profiles, decay: 1.0 }
    }

    pub fn zero(kind: Deficiency) -> Self {
        let z: Profile = Arc::new(|_, _| C64::new(0.0, 0.0));
        Self::new(kind, [z.clone(), z.clone(), z.clone(), z])
    }

    /// Value at relative coordinates `(s_p, s, s̃)`.
    pub fn eval_relative(&self, sp: f64, s: f64, st: f64) -> [C64; 8] {
        let mut out = [C64::new(0.0, 0.0); 8];
        let (es, est) = ((-self.decay * s).exp(), (-self.decay * st).exp());
        let [a, b, c, d] = &self.profiles;
        match self.kind {
            Deficiency::Plus => {
                out[2] = es * a(sp - s, st);
                out[3] = es * b(sp - s, st + s);
                out[4] = est * c(sp + st, s + st);
                out[6] = est * d(sp + st, s);
            }
            Deficiency::Minus => {
                out[1] = est * a(sp + st, s);
                out[3] = est * b(sp + st, s + st);
                out[4] = es * c(sp - s, st + s);
                out[5] = es * d(sp - s, st);
            }
        }
        out
    }

    /// Value at particle positions.
    pub fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        self.eval_relative(s_ph, 0.5 * (s_ph - s_e1), 0.5 * (s_e2 - s_ph))
    }
}

/// Largest `|(Ĥ* ∓ i)Ψ|` over `points` (relative coordinates), with
/// `Ĥ*ψ_{ς₀ς₁ς₂} = i(ς₀∂_{s_ph} + ς₁∂_{s_e1} + ς₂∂_{s_e2})ψ` by central
/// differences of step `h` in the particle positions. The sign is the
/// element's own eigenvalue.
pub fn deficiency_residual(elem: &DeficiencyElement, h: f64, points: &[(f64, f64, f64)]) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain("deficiency_residual", format!("step {h} must be > 0")));
    }
    if let Some(p) = points.iter().find(|p| !(p.1 > h && p.2 > h)) {
        return Err(Error::domain("deficiency_residual", format!("stencil at {p:?} leaves the wedge for step {h}")));
    }
    let lambda = elem.kind.eigenvalue();
    let worst: Vec<f64> = points
        .par_iter()
        .map(|&(sp, s, st)| {
            let x = [sp, sp - 2.0 * s, sp + 2.0 * st];
            let at = |axis: usize, d: f64| {
                let mut y = x;
                y[axis] += d;
                elem.eval(y[0], y[1], y[2])
            };
            let derivs: Vec<[C64; 8]> = (0..3)
                .map(|axis| {
                    let (p, m) = (at(axis, h), at(axis, -h));
                    std::array::from_fn(|k| (p[k] - m[k]) / (2.0 * h))
                })
                .collect();
            let v = elem.eval(x[0], x[1], x[2]);
            let mut m: f64 = 0.0;
            for k in 0..8 {
                let transport: C64 = (0..3)
                    .map(|axis| {
                        let sign = if (k >> (2 - axis)) & 1 == 0 { -1.0 } else { 1.0 };
                        derivs[axis][k] * sign
                    })
                    .sum();
                // (Ĥ* ∓ i)ψ = i (transport − λψ)
                m = m.max((transport - v[k] * lambda).norm());
            }
            m
        })
        .collect();
    Ok(worst.into_iter().fold(0.0, f64::max))
}

/// Tensor quadrature on `s_p ∈ [p_lo, p_hi]` (trapezoid, step `p_step`) and
/// `s, s̃ ∈ [0, extent]` (composite Gauss–Legendre of `order` nodes on panels
/// of width `panel`).
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeQuadrature {
    pub p_lo: f64,
    pub p_hi: f64,
    pub p_step: f64,
    pub extent: f64,
    pub panel: f64,
    pub order: usize,
}

impl WedgeQuadrature {
    fn nodes(&self) -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>)> {
        let bad = !(self.p_hi > self.p_lo && self.p_step > 0.0 && self.extent > 0.0 && self.panel > 0.0);
        if bad || self.order < 2 {
            return Err(Error::domain("WedgeQuadrature", format!("invalid quadrature {self:?}")));
        }
        let np = ((self.p_hi - self.p_lo) / self.p_step).round() as usize;
        let dp = (self.p_hi - self.p_lo) / np as f64;
        let p: Vec<(f64, f64)> = (0..=np)
            .map(|i| (self.p_lo + i as f64 * dp, if i == 0 || i == np { 0.5 * dp } else { dp }))
            .collect();
        let rule = GaussLegendre::new(self.order).map_err(|e| Error::domain("WedgeQuadrature", e.to_string()))?;
        let panels = (self.extent / self.panel).ceil() as usize;
        let width = self.extent / panels as f64;
        let mut r = Vec::with_capacity(panels * self.order);
        for k in 0..panels {
            let (a, b) = (k as f64 * width, (k + 1) as f64 * width);
            for &(x, w) in rule.as_node_weight_pairs() {
                r.push((0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * w));
            }
        }
        Ok((p, r))
    }
}

/// L² norm on the wedge `s_e1 < s_ph < s_e2` of a field given in relative
/// coordinates. The volume element is `ds_ph ds_e1 ds_e2 = 4 ds_p ds ds̃`.
pub fn wedge_norm<F>(field: F, quad: &WedgeQuadrature) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> [C64; 8] + Sync,
{
    let (p, r) = quad.nodes()?;
    let rows: Vec<f64> = r
        .par_iter()
        .map(|&(s, ws)| {
            let mut acc = 0.0;
            for &(st, wst) in &r {
                let mut line = 0.0;
                for &(sp, wp) in &p {
                    line += wp * field(sp, s, st).iter().map(|z| z.norm_sqr()).sum::<f64>();
                }
                acc += wst * line;
            }
            ws * acc
        })
        .collect();
    Ok((4.0 * rows.iter().sum::<f64>()).sqrt())
}

use crate::ThreeBodyInitial;
use phel_numerics::{lagrange4, Error, Result, C64};
use rayon::prelude::*;

/// Nodes `(a, b, c)` of a cubic lattice with `b ≤ a ≤ c`, where `a`
/// indexes the photon, `b` electron 1 and `c` electron 2, all on the
/// positions `origin + i·spacing`, `i < count`. Nodes with `a = b` lie on
/// the first contact wall, nodes with `a = c` on the second.
#[derive(Debug, Clone, PartialEq)]
pub struct WedgeGrid {
    origin: f64,
    spacing: f64,
    count: usize,
    offsets: Vec<usize>,
}

impl WedgeGrid {
    pub fn new(origin: f64, spacing: f64, count: usize) -> Result<Self> {
        if !origin.is_finite() || !(spacing > 0.0 && spacing.is_finite()) || count < 2 {
            return Err(Error::domain(
                "WedgeGrid",
                format!("need finite origin, spacing > 0 and count >= 2 (origin {origin}, spacing {spacing}, count {count})"),
            ));
        }
        let mut offsets = Vec::with_capacity(count + 1);
        let mut acc = 0;
        for a in 0..count {
            offsets.push(acc);
            acc += (a + 1) * (count - a);
        }
        offsets.push(acc);
        Ok(Self { origin, spacing, count, offsets })
    }

    /// Smallest lattice with nodes at multiples of `spacing` covering
    /// `[lo, hi]` on every axis.
    pub fn covering(lo: f64, hi: f64, spacing: f64) -> Result<Self> {
        if !(lo < hi) || !(spacing > 0.0) {
            return Err(Error::domain("WedgeGrid::covering", format!("need lo < hi and spacing > 0 ({lo}, {hi}, {spacing})")));
        }
        let i0 = (lo / spacing).floor();
        let i1 = (hi / spacing).ceil();
        Self::new(i0 * spacing, spacing, (i1 - i0) as usize + 1)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Number of wedge nodes.
    pub fn len(&self) -> usize {
        self.offsets[self.count]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    /// Storage range of the nodes with photon index `a`.
    pub fn block(&self, a: usize) -> std::ops::Range<usize> {
        self.offsets[a]..self.offsets[a + 1]
    }

    /// Storage index of a node, `None` outside the wedge.
    pub fn index(&self, a: i64, b: i64, c: i64) -> Option<usize> {
        let n = self.count as i64;
        if b < 0 || b > a || a > c || c >= n {
            return None;
        }
        let (a, b, c) = (a as usize, b as usize, c as usize);
        Some(self.offsets[a] + b * (self.count - a) + (c - a))
    }

    /// Node indices `(b, c)` of the entry at offset `j` within block `a`.
    pub fn block_node(&self, a: usize, j: usize) -> (usize, usize) {
        let width = self.count - a;
        (j / width, a + j % width)
    }

    /// Trapezoid weight of a node: a half for each wall it lies on.
    pub fn weight(&self, a: usize, b: usize, c: usize) -> f64 {
        let w1 = if a == b { 0.5 } else { 1.0 };
        let w2 = if a == c { 0.5 } else { 1.0 };
        w1 * w2
    }
}

/// Eight components on a wedge lattice at a common time.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeBodyField {
    pub grid: WedgeGrid,
    pub time: f64,
    pub values: Vec<[C64; 8]>,
    /// Loss rates at the wall nodes of each wall at the last reflection
    /// stage; half of each belongs to the next step's flux integral.
    pub wall_rate: [f64; 2],
}

impl ThreeBodyField {
    pub fn zeros(grid: WedgeGrid, time: f64) -> Self {
        let values = vec![[C64::new(0.0, 0.0); 8]; grid.len()];
        Self { grid, time, values, wall_rate: [0.0; 2] }
    }

    /// Samples initial data at the nodes.
    pub fn from_data<D: ThreeBodyInitial + ?Sized>(grid: WedgeGrid, data: &D) -> Self {
        let mut field = Self::zeros(grid, 0.0);
        let g = &field.grid;
        let blocks = split_blocks(g, &mut field.values);
        blocks.into_par_iter().enumerate().for_each(|(a, block)| {
            let sp = g.position(a);
            for (j, v) in block.iter_mut().enumerate() {
                let (b, c) = g.block_node(a, j);
                *v = data.eval(sp, g.position(b), g.position(c));
            }
        });
        field
    }

    pub fn at(&self, a: usize, b: usize, c: usize) -> Option<&[C64; 8]> {
        self.grid.index(a as i64, b as i64, c as i64).map(|i| &self.values[i])
    }

    /// Weighted sum of `f(node value, weight)` over all nodes, reduced per
    /// photon index in a fixed order.
    pub fn weighted_sum<F>(&self, f: F) -> f64
    where
        F: Fn(&[C64; 8], usize, usize, usize) -> f64 + Sync,
    {
        let g = &self.grid;
        let partial: Vec<f64> = (0..g.count)
            .into_par_iter()
            .map(|a| {
                let r = g.block(a);
                let mut acc = 0.0;
                for (j, v) in self.values[r].iter().enumerate() {
                    let (b, c) = g.block_node(a, j);
                    acc += g.weight(a, b, c) * f(v, a, b, c);
                }
                acc
            })
            .collect();
        partial.iter().sum::<f64>() * g.spacing.powi(3)
    }

    /// Squared L² norm by the trapezoid rule on the wedge.
    pub fn norm_sq(&self) -> f64 {
        self.weighted_sum(|v, _, _, _| v.iter().map(|z| z.norm_sqr()).sum())
    }

    /// L² distance to a field on the same lattice.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::contract("ThreeBodyField::distance", "fields live on different lattices"));
        }
        Ok(self
            .weighted_sum(|v, a, b, c| {
                let w = &other.values[other.grid.index(a as i64, b as i64, c as i64).expect("same lattice")];
                v.iter().zip(w).map(|(x, y)| (x - y).norm_sqr()).sum()
            })
            .sqrt())
    }

    /// Value at an arbitrary point of the closed wedge: tensor cubic
    /// interpolation when the whole stencil lies in the wedge, trilinear
    /// otherwise, zero outside the lattice.
    pub fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        let g = &self.grid;
        let zero = [C64::new(0.0, 0.0); 8];
        if !(s_e1 <= s_ph && s_ph <= s_e2) {
            return zero;
        }
        let coord = |s: f64| (s - g.origin) / g.spacing;
        let (xa, xb, xc) = (coord(s_ph), coord(s_e1), coord(s_e2));
        let last = (g.count - 1) as f64;
        if [xa, xb, xc].iter().any(|x| !(*x >= 0.0 && *x <= last)) {
            return zero;
        }
        let base = |x: f64| (x.floor() as i64).min(g.count as i64 - 2);
        let (ia, ib, ic) = (base(xa), base(xb), base(xc));
        let (ua, ub, uc) = (xa - ia as f64, xb - ib as f64, xc - ic as f64);
        let get = |a: i64, b: i64, c: i64| self.grid.index(a, b, c).map(|i| &self.values[i]);
        let cubic_ok = ib >= 1 && ib + 2 <= ia - 1 && ia + 2 <= ic - 1 && ic + 2 < g.count as i64;
        let mut out = zero;
        if cubic_ok {
            for k in 0..8 {
                let mut plane = [C64::new(0.0, 0.0); 4];
                for (pa, slot) in plane.iter_mut().enumerate() {
                    let mut line = [C64::new(0.0, 0.0); 4];
                    for (pb, l) in line.iter_mut().enumerate() {
                        let mut col = [C64::new(0.0, 0.0); 4];
                        for (pc, z) in col.iter_mut().enumerate() {
                            *z = get(ia - 1 + pa as i64, ib - 1 + pb as i64, ic - 1 + pc as i64).map_or(C64::new(0.0, 0.0), |v| v[k]);
                        }
                        *l = lagrange4(col, uc + 1.0);
                    }
                    *slot = lagrange4(line, ub + 1.0);
                }
                out[k] = lagrange4(plane, ua + 1.0);
            }
            return out;
        }
        for (da, wa) in [(0, 1.0 - ua), (1, ua)] {
            for (db, wb) in [(0, 1.0 - ub), (1, ub)] {
                for (dc, wc) in [(0, 1.0 - uc), (1, uc)] {
                    let w = wa * wb * wc;
                    if w == 0.0 {
                        continue;
                    }
                    if let Some(v) = get(ia + da, ib + db, ic + dc) {
                        for k in 0..8 {
                            out[k] += v[k] * w;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Splits storage into one mutable slice per photon index.
pub(crate) fn split_blocks<'v, T>(g: &WedgeGrid, mut values: &'v mut [T]) -> Vec<&'v mut [T]> {
    let mut out = Vec::with_capacity(g.count);
    for a in 0..g.count {
        let (head, tail) = values.split_at_mut(g.block(a).len());
        out.push(head);
        values = tail;
    }
    out
}

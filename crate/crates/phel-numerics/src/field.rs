use crate::{Error, Grid1D, Result, C64};

/// Cubic Lagrange interpolation through nodes at 0, 1, 2, 3 evaluated at `u`.
pub fn lagrange4(v: [C64; 4], u: f64) -> C64 {
    let w = lagrange4_weights(u);
    v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3]
}

pub(crate) fn lagrange4_weights(u: f64) -> [f64; 4] {
    let a = u;
    let b = u - 1.0;
    let c = u - 2.0;
    let d = u - 3.0;
    [-b * c * d / 6.0, a * c * d / 2.0, -a * b * d / 2.0, a * b * c / 6.0]
}

/// Stencil start and weights for a coordinate on a grid. `None` means the
/// coordinate is outside the sampled span.
fn stencil(grid: &Grid1D, s: f64) -> Option<(usize, [f64; 4])> {
    if !grid.contains(s) {
        return None;
    }
    let n = grid.count();
    let u = grid.index_coord(s).clamp(0.0, (n - 1) as f64);
    if n < 4 {
        // linear fallback for tiny grids
        let i = (u.floor() as usize).min(n - 2);
        let f = u - i as f64;
        let mut w = [0.0; 4];
        w[0] = 1.0 - f;
        w[1] = f;
        return Some((i, w));
    }
    let cell = (u.floor() as usize).min(n - 2);
    let start = cell.saturating_sub(1).min(n - 4);
    Some((start, lagrange4_weights(u - start as f64)))
}

fn stencil_len(grid: &Grid1D) -> usize {
    grid.count().min(4).max(2)
}

/// Complex samples on a uniform 1D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField1D {
    pub grid: Grid1D,
    pub values: Vec<C64>,
    /// Data vanish outside the grid; interpolation there returns zero.
    pub compact_support: bool,
}

impl SampledField1D {
    pub fn new(grid: Grid1D, values: Vec<C64>, compact_support: bool) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::contract(
                "SampledField1D::new",
                format!("{} values for {} nodes", values.len(), grid.count()),
            ));
        }
        Ok(Self { grid, values, compact_support })
    }

    pub fn from_fn(grid: Grid1D, compact_support: bool, f: impl Fn(f64) -> C64) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values, compact_support }
    }

    pub fn zeros(grid: Grid1D, compact_support: bool) -> Self {
        Self { grid, values: vec![C64::new(0.0, 0.0); grid.count()], compact_support }
    }

    /// Cubic interpolation; zero outside the grid for compact data.
    pub fn interpolate(&self, s: f64) -> Result<C64> {
        interpolate(self, s)
    }

    /// Like `interpolate` but treats every point outside the grid as zero.
    pub fn eval_or_zero(&self, s: f64) -> C64 {
        eval_slice(&self.grid, &self.values, s)
    }
}

/// Cubic interpolation of samples on `grid`, zero outside it.
pub fn eval_slice(grid: &Grid1D, values: &[C64], s: f64) -> C64 {
    match stencil(grid, s) {
        None => C64::new(0.0, 0.0),
        Some((i, w)) => {
            let mut acc = C64::new(0.0, 0.0);
            for (k, wk) in w.iter().enumerate().take(stencil_len(grid)) {
                acc += values[i + k] * *wk;
            }
            acc
        }
    }
}

/// Cubic Lagrange interpolation of a sampled field.
pub fn interpolate(field: &SampledField1D, s: f64) -> Result<C64> {
    if !s.is_finite() {
        return Err(Error::domain("interpolate", format!("coordinate {s} is not finite")));
    }
    if !field.grid.contains(s) && !field.compact_support {
        return Err(Error::domain(
            "interpolate",
            format!("coordinate {s} outside [{}, {}]", field.grid.origin(), field.grid.last()),
        ));
    }
    Ok(field.eval_or_zero(s))
}

/// Complex samples on a tensor grid, row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField2D {
    pub grids: [Grid1D; 2],
    pub values: Vec<C64>,
    pub compact_support: bool,
}

impl SampledField2D {
    pub fn new(grids: [Grid1D; 2], values: Vec<C64>, compact_support: bool) -> Result<Self> {
        let n = grids[0].count() * grids[1].count();
        if values.len() != n {
            return Err(Error::contract(
                "SampledField2D::new",
                format!("{} values for {} nodes", values.len(), n),
            ));
        }
        Ok(Self { grids, values, compact_support })
    }

    pub fn from_fn(grids: [Grid1D; 2], compact_support: bool, f: impl Fn(f64, f64) -> C64) -> Self {
        let mut values = Vec::with_capacity(grids[0].count() * grids[1].count());
        for a in grids[0].points() {
            for b in grids[1].points() {
                values.push(f(a, b));
            }
        }
        Self { grids, values, compact_support }
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[i * self.grids[1].count() + j]
    }

    /// Tensor cubic interpolation, zero outside the grid.
    pub fn eval_or_zero(&self, a: f64, b: f64) -> C64 {
        let (Some((i0, w0)), Some((j0, w1))) = (stencil(&self.grids[0], a), stencil(&self.grids[1], b)) else {
            return C64::new(0.0, 0.0);
        };
        let n1 = self.grids[1].count();
        let (l0, l1) = (stencil_len(&self.grids[0]), stencil_len(&self.grids[1]));
        let mut acc = C64::new(0.0, 0.0);
        for (p, wp) in w0.iter().enumerate().take(l0) {
            let row = (i0 + p) * n1 + j0;
            let mut r = C64::new(0.0, 0.0);
            for (q, wq) in w1.iter().enumerate().take(l1) {
                r += self.values[row + q] * *wq;
            }
            acc += r * *wp;
        }
        acc
    }

    pub fn interpolate(&self, a: f64, b: f64) -> Result<C64> {
        let inside = self.grids[0].contains(a) && self.grids[1].contains(b);
        if !inside && !self.compact_support {
            return Err(Error::domain("SampledField2D::interpolate", format!("({a}, {b}) outside grid")));
        }
        Ok(self.eval_or_zero(a, b))
    }
}

/// Complex samples on a 3D tensor grid, row-major with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField3D {
    pub grids: [Grid1D; 3],
    pub values: Vec<C64>,
    pub compact_support: bool,
}

impl SampledField3D {
    pub fn new(grids: [Grid1D; 3], values: Vec<C64>, compact_support: bool) -> Result<Self> {
        let n = grids[0].count() * grids[1].count() * grids[2].count();
        if values.len() != n {
            return Err(Error::contract(
                "SampledField3D::new",
                format!("{} values for {} nodes", values.len(), n),
            ));
        }
        Ok(Self { grids, values, compact_support })
    }

    pub fn from_fn(grids: [Grid1D; 3], compact_support: bool, f: impl Fn(f64, f64, f64) -> C64) -> Self {
        let mut values = Vec::with_capacity(grids[0].count() * grids[1].count() * grids[2].count());
        for a in grids[0].points() {
            for b in grids[1].points() {
                for c in grids[2].points() {
                    values.push(f(a, b, c));
                }
            }
        }
        Self { grids, values, compact_support }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> C64 {
        let n1 = self.grids[1].count();
        let n2 = self.grids[2].count();
        self.values[(i * n1 + j) * n2 + k]
    }

    /// Tensor cubic interpolation, zero outside the grid.
    pub fn eval_or_zero(&self, a: f64, b: f64, c: f64) -> C64 {
        let (Some((i0, w0)), Some((j0, w1)), Some((k0, w2))) = (
            stencil(&self.grids[0], a),
            stencil(&self.grids[1], b),
            stencil(&self.grids[2], c),
        ) else {
            return C64::new(0.0, 0.0);
        };
        let n1 = self.grids[1].count();
        let n2 = self.grids[2].count();
        let ls = [stencil_len(&self.grids[0]), stencil_len(&self.grids[1]), stencil_len(&self.grids[2])];
        let mut acc = C64::new(0.0, 0.0);
        for (p, wp) in w0.iter().enumerate().take(ls[0]) {
            for (q, wq) in w1.iter().enumerate().take(ls[1]) {
                let base = ((i0 + p) * n1 + j0 + q) * n2 + k0;
                let mut r = C64::new(0.0, 0.0);
                for (m, wm) in w2.iter().enumerate().take(ls[2]) {
                    r += self.values[base + m] * *wm;
                }
                acc += r * (*wp * *wq);
            }
        }
        acc
    }

    pub fn interpolate(&self, a: f64, b: f64, c: f64) -> Result<C64> {
        let inside = self.grids[0].contains(a) && self.grids[1].contains(b) && self.grids[2].contains(c);
        if !inside && !self.compact_support {
            return Err(Error::domain(
                "SampledField3D::interpolate",
                format!("({a}, {b}, {c}) outside grid"),
            ));
        }
        Ok(self.eval_or_zero(a, b, c))
    }
}

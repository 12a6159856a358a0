use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative slack used when deciding whether a coordinate sits on a node.
const NODE_TOL: f64 = 1e-9;

/// Uniform one-dimensional grid `origin + i * spacing`, `i < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    origin: f64,
    spacing: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(origin: f64, spacing: f64, count: usize) -> Result<Self> {
        if !origin.is_finite() || !spacing.is_finite() || spacing <= 0.0 {
            return Err(Error::domain(
                "Grid1D::new",
                format!("origin {origin} and spacing {spacing} must be finite with spacing > 0"),
            ));
        }
        if count < 2 {
            return Err(Error::domain("Grid1D::new", format!("count {count} must be at least 2")));
        }
        Ok(Self { origin, spacing, count })
    }

    /// Smallest grid with the given spacing that starts at `lo` and reaches `hi`.
    pub fn covering(lo: f64, hi: f64, spacing: f64) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::domain("Grid1D::covering", format!("empty interval [{lo}, {hi}]")));
        }
        let cells = ((hi - lo) / spacing - NODE_TOL).ceil().max(1.0) as usize;
        Self::new(lo, spacing, cells + 1)
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

    pub fn point(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.point(i))
    }

    /// Whether `s` lies in `[origin, last]` up to node tolerance.
    pub fn contains(&self, s: f64) -> bool {
        let u = (s - self.origin) / self.spacing;
        u >= -NODE_TOL && u <= (self.count - 1) as f64 + NODE_TOL
    }

    /// Continuous index `(s - origin) / spacing`.
    pub fn index_coord(&self, s: f64) -> f64 {
        (s - self.origin) / self.spacing
    }

    /// Node index if `s` is a node up to tolerance.
    pub fn node_index(&self, s: f64) -> Option<usize> {
        let u = self.index_coord(s);
        let r = u.round();
        if (u - r).abs() <= NODE_TOL * u.abs().max(1.0) && r >= 0.0 && (r as usize) < self.count {
            Some(r as usize)
        } else {
            None
        }
    }
}

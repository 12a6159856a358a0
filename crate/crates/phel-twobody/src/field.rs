use crate::{Result, TwoBodyConfig, TwoBodyEvolver, TwoBodyInitial};
use phel_numerics::{Error, Grid1D, C64};
use rayon::prelude::*;

/// Equal-time two-body snapshot on a photon × electron grid. Nodes with
/// `s_e < s_ph` hold zeros; nodes on the diagonal hold the limit from the
/// physical side.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyField {
    pub t: f64,
    pub photon: Grid1D,
    pub electron: Grid1D,
    pub values: Vec<[C64; 4]>,
}

fn diagonal_offset(photon: &Grid1D, electron: &Grid1D) -> Result<isize> {
    let h = photon.spacing();
    let off = (electron.origin() - photon.origin()) / h;
    if (electron.spacing() - h).abs() > 1e-12 * h || (off - off.round()).abs() > 1e-9 {
        return Err(Error::contract("TwoBodyField", "photon and electron grids must share spacing and nodes").into());
    }
    Ok(off.round() as isize)
}

impl TwoBodyField {
    /// Evaluate at all physical nodes at common time `t`.
    pub fn evolve<D: TwoBodyInitial + ?Sized>(
        ev: &TwoBodyEvolver<'_, D>,
        t: f64,
        photon: Grid1D,
        electron: Grid1D,
    ) -> Result<Self> {
        let off = diagonal_offset(&photon, &electron)?;
        let ne = electron.count();
        let rows: Vec<Vec<[C64; 4]>> = (0..photon.count())
            .into_par_iter()
            .map(|i| {
                let s_ph = photon.point(i);
                let q = s_ph + t;
                let mut row = None;
                (0..ne)
                    .map(|j| {
                        // electron node j sits at photon index j + off
                        if (j as isize + off) < i as isize {
                            return [C64::new(0.0, 0.0); 4];
                        }
                        let s_e = electron.point(j);
                        let c = TwoBodyConfig { t_ph: t, s_ph, t_e: t, s_e };
                        if s_ph + t <= s_e - t {
                            return ev.far(&c);
                        }
                        let r = row.get_or_insert_with(|| ev.row(q, t));
                        let m = ev.electron_free(s_ph - t, phel_numerics::Sign::Minus, t, s_e);
                        [m[0], m[1], r.plus_minus(t, s_e), r.plus_plus(t, s_e)]
                    })
                    .collect()
            })
            .collect();
        Ok(Self { t, photon, electron, values: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> [C64; 4] {
        self.values[i * self.electron.count() + j]
    }

    /// Probability `∫∫_{s_ph<s_e} Σ|ψ|²` with the vertex rule on the
    /// triangles cut by the diagonal and the tensor trapezoid rule elsewhere.
    pub fn norm_sq(&self) -> Result<f64> {
        let off = diagonal_offset(&self.photon, &self.electron)?;
        let h = self.photon.spacing();
        let (np, ne) = (self.photon.count(), self.electron.count());
        let dens = |i: usize, j: usize| self.at(i, j).iter().map(|v| v.norm_sqr()).sum::<f64>();
        let mut total = 0.0;
        for i in 0..np - 1 {
            for j in 0..ne - 1 {
                let d = j as isize + off - i as isize;
                if d >= 1 {
                    total += 0.25 * h * h * (dens(i, j) + dens(i + 1, j) + dens(i, j + 1) + dens(i + 1, j + 1));
                } else if d == 0 {
                    total += h * h / 6.0 * (dens(i, j) + dens(i, j + 1) + dens(i + 1, j + 1));
                }
            }
        }
        Ok(total)
    }
}

/// Sup over the diagonal of `|ψ₊₋ − e^{iθ}ψ₋₊|`, with both components
/// extrapolated to the diagonal from the four nearest nodes on the physical
/// side along the electron axis.
pub fn boundary_residual_2body(field: &TwoBodyField, theta: f64) -> Result<f64> {
    let off = diagonal_offset(&field.photon, &field.electron)?;
    let phase = C64::from_polar(1.0, theta);
    let ne = field.electron.count() as isize;
    const W: [f64; 4] = [4.0, -6.0, 4.0, -1.0];
    let mut worst: f64 = 0.0;
    for i in 0..field.photon.count() {
        let j = i as isize - off;
        if j < 0 || j + 4 >= ne {
            continue;
        }
        let mut pm = C64::new(0.0, 0.0);
        let mut mp = C64::new(0.0, 0.0);
        for (k, w) in W.iter().enumerate() {
            let v = field.at(i, (j + 1 + k as isize) as usize);
            pm += v[2] * *w;
            mp += v[1] * *w;
        }
        worst = worst.max((pm - phase * mp).norm());
    }
    Ok(worst)
}

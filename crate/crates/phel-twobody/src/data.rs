use phel_free::{wall_mask, Packet};
use phel_numerics::{Grid1D, SampledField2D, C64};

/// Initial data `ψ̊(s_ph, s_e)` on `s_ph < s_e`; implementations return
/// zero elsewhere.
pub trait TwoBodyInitial: Sync {
    fn eval(&self, s_ph: f64, s_e: f64) -> [C64; 4];
}

impl<F> TwoBodyInitial for F
where
    F: Fn(f64, f64) -> [C64; 4] + Sync,
{
    fn eval(&self, s_ph: f64, s_e: f64) -> [C64; 4] {
        self(s_ph, s_e)
    }
}

/// Photon packet times electron packet, cut off smoothly near the wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductData {
    pub photon: Packet,
    pub electron: Packet,
    /// Cutoff distance; zero disables the cutoff.
    pub delta0: f64,
}

impl TwoBodyInitial for ProductData {
    fn eval(&self, s_ph: f64, s_e: f64) -> [C64; 4] {
        let gap = s_e - s_ph;
        if gap <= 0.0 {
            return [C64::new(0.0, 0.0); 4];
        }
        let mask = if self.delta0 > 0.0 { wall_mask(gap, self.delta0) } else { 1.0 };
        let a = self.photon.eval(s_ph);
        let b = self.electron.eval(s_e);
        [a[0] * b[0] * mask, a[0] * b[1] * mask, a[1] * b[0] * mask, a[1] * b[1] * mask]
    }
}

/// Four components sampled on a photon × electron tensor grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyData {
    pub fields: [SampledField2D; 4],
}

impl TwoBodyData {
    pub fn sample(source: &impl TwoBodyInitial, photon: Grid1D, electron: Grid1D) -> Self {
        let grids = [photon, electron];
        let mut vals: [Vec<C64>; 4] = Default::default();
        for a in photon.points() {
            for b in electron.points() {
                let v = source.eval(a, b);
                for k in 0..4 {
                    vals[k].push(v[k]);
                }
            }
        }
        let fields = vals.map(|values| SampledField2D { grids, values, compact_support: true });
        Self { fields }
    }
}

impl TwoBodyInitial for TwoBodyData {
    fn eval(&self, s_ph: f64, s_e: f64) -> [C64; 4] {
        if s_e <= s_ph {
            return [C64::new(0.0, 0.0); 4];
        }
        std::array::from_fn(|k| self.fields[k].eval_or_zero(s_ph, s_e))
    }
}

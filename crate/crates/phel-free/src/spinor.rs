use phel_numerics::{Error, Grid1D, Result, SampledField1D, Sign, C64};

/// Two chiral components of an electron on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectronSpinor {
    pub minus: SampledField1D,
    pub plus: SampledField1D,
}

/// Two chiral components of a photon on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonBispinor {
    pub minus: SampledField1D,
    pub plus: SampledField1D,
}

macro_rules! two_component {
    ($t:ident) => {
        impl $t {
            pub fn new(minus: SampledField1D, plus: SampledField1D) -> Result<Self> {
                if minus.grid != plus.grid {
                    return Err(Error::contract(concat!(stringify!($t), "::new"), "components on different grids"));
                }
                Ok(Self { minus, plus })
            }

            pub fn from_fn(grid: Grid1D, compact_support: bool, f: impl Fn(Sign, f64) -> C64) -> Self {
                Self {
                    minus: SampledField1D::from_fn(grid, compact_support, |s| f(Sign::Minus, s)),
                    plus: SampledField1D::from_fn(grid, compact_support, |s| f(Sign::Plus, s)),
                }
            }

            pub fn grid(&self) -> Grid1D {
                self.minus.grid
            }

            pub fn component(&self, sign: Sign) -> &SampledField1D {
                match sign {
                    Sign::Minus => &self.minus,
                    Sign::Plus => &self.plus,
                }
            }

            /// Both components interpolated at `s`, zero outside the grid.
            pub fn eval(&self, s: f64) -> [C64; 2] {
                [self.minus.eval_or_zero(s), self.plus.eval_or_zero(s)]
            }

            /// Squared L² norm by composite Simpson over the whole grid.
            pub fn norm_sq(&self) -> f64 {
                let g = self.grid();
                let w = phel_numerics::simpson_weights(g.count() - 1, g.spacing());
                self.minus
                    .values
                    .iter()
                    .zip(&self.plus.values)
                    .zip(&w)
                    .map(|((a, b), wk)| (a.norm_sqr() + b.norm_sqr()) * wk)
                    .sum()
            }
        }
    };
}

two_component!(ElectronSpinor);
two_component!(PhotonBispinor);

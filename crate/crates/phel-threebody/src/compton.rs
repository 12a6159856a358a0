use crate::{check_config, classify_three_body, comp3, ThreeBodyConfig, ThreeBodyInitial, RegionLabel};
use phel_free::dirac_point_channels;
use phel_numerics::{Error, PhysicalParams, Result, Sign, C64};
use phel_twobody::{comp, TwoBodyConfig, TwoBodyEvolver};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Which photon–electron pair a Compton formula treats as interacting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComptonCase {
    /// Photon and electron 1; electron 2 evolves freely.
    Left,
    /// Photon and electron 2; electron 1 evolves freely.
    Right,
    /// `ς₀ = −` components from the left pair, `ς₀ = +` from the right.
    Both,
}

impl ComptonCase {
    pub fn from_label(label: RegionLabel) -> Option<Self> {
        match label {
            RegionLabel::Compton1 => Some(Self::Left),
            RegionLabel::Compton2 => Some(Self::Right),
            RegionLabel::Compton3 => Some(Self::Both),
            _ => None,
        }
    }

    pub fn label(self) -> RegionLabel {
        match self {
            Self::Left => RegionLabel::Compton1,
            Self::Right => RegionLabel::Compton2,
            Self::Both => RegionLabel::Compton3,
        }
    }
}

fn twobody_err(e: phel_twobody::Error) -> Error {
    match e {
        phel_twobody::Error::Numerics(e) => e,
        other => Error::contract("contact evolution", other.to_string()),
    }
}

/// Three-body propagator outside the Coulomb region for fixed data,
/// parameters and quadrature spacing `h`.
pub struct ThreeBodyEvolver<'a, D: ThreeBodyInitial + ?Sized> {
    data: &'a D,
    params: PhysicalParams,
    h: f64,
}

impl<'a, D: ThreeBodyInitial + ?Sized> ThreeBodyEvolver<'a, D> {
    pub fn new(data: &'a D, params: PhysicalParams, h: f64) -> Result<Self> {
        params.validate()?;
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain("ThreeBodyEvolver", format!("quadrature spacing {h} must be > 0")));
        }
        Ok(Self { data, params, h })
    }

    /// Free evolution in all three variables.
    pub fn free(&self, c: &ThreeBodyConfig) -> Result<[C64; 8]> {
        let (w, h) = (self.params.omega, self.h);
        let mut out = [ZERO; 8];
        for s0 in Sign::BOTH {
            let foot = c.s_ph + s0.value() * c.t_ph;
            let k0 = 4 * s0.index();
            // electron 2 first: channel j = ς₁, entries (ς₂ = −, ς₂ = +)
            let inner = |s1: f64| -> Result<[C64; 4]> {
                dirac_point_channels(
                    |s2: f64| {
                        let d = self.data.eval(foot, s1, s2);
                        [d[k0], d[k0 + 1], d[k0 + 2], d[k0 + 3]]
                    },
                    w,
                    c.t_e2,
                    c.s_e2,
                    h,
                )
            };
            // then electron 1: channel j = ς₂, entries (ς₁ = −, ς₁ = +)
            let v = dirac_point_channels(
                |s1: f64| {
                    let v = inner(s1).unwrap_or([ZERO; 4]);
                    [v[0], v[2], v[1], v[3]]
                },
                w,
                c.t_e1,
                c.s_e1,
                h,
            )?;
            out[k0] = v[0];
            out[k0 + 2] = v[1];
            out[k0 + 1] = v[2];
            out[k0 + 3] = v[3];
        }
        Ok(out)
    }

    /// Contact evolution in the photon and electron 1 variables, written in
    /// reflected coordinates so that the pair has the two-body orientation;
    /// electron 2 evolves freely.
    pub fn left_pair(&self, c: &ThreeBodyConfig) -> Result<[C64; 8]> {
        let (w, h) = (self.params.omega, self.h);
        let pair = TwoBodyConfig { t_ph: c.t_ph, s_ph: -c.s_ph, t_e: c.t_e1, s_e: -c.s_e1 };
        let mut out = [ZERO; 8];
        for s2 in Sign::BOTH {
            let data = |x: f64, y: f64| -> [C64; 4] {
                // reflected component (a, b) is (ā, b̄) of the original
                let v = dirac_point_channels(
                    |sigma: f64| {
                        let d = self.data.eval(-x, -y, sigma);
                        let at = |a: Sign, b: Sign| {
                            let k = comp3(a.flip(), b.flip(), Sign::Minus);
                            [d[k], d[k + 1]]
                        };
                        let [p, q] = at(Sign::Minus, Sign::Minus);
                        let [r, s] = at(Sign::Minus, Sign::Plus);
                        let [t, u] = at(Sign::Plus, Sign::Minus);
                        let [v, z] = at(Sign::Plus, Sign::Plus);
                        [p, q, r, s, t, u, v, z]
                    },
                    w,
                    c.t_e2,
                    c.s_e2,
                    h,
                )
                .unwrap_or([ZERO; 8]);
                let j = s2.index();
                [v[j], v[2 + j], v[4 + j], v[6 + j]]
            };
            let ev = TwoBodyEvolver::new(&data, w, self.params.theta1, h).map_err(twobody_err)?;
            let v = ev.eval(&pair).map_err(twobody_err)?;
            for s0 in Sign::BOTH {
                for s1 in Sign::BOTH {
                    out[comp3(s0, s1, s2)] = v[comp(s0.flip(), s1.flip())];
                }
            }
        }
        Ok(out)
    }

    /// Contact evolution in the photon and electron 2 variables; electron 1
    /// evolves freely.
    pub fn right_pair(&self, c: &ThreeBodyConfig) -> Result<[C64; 8]> {
        let (w, h) = (self.params.omega, self.h);
        let pair = TwoBodyConfig { t_ph: c.t_ph, s_ph: c.s_ph, t_e: c.t_e2, s_e: c.s_e2 };
        let mut out = [ZERO; 8];
        for s1 in Sign::BOTH {
            let data = |x: f64, y: f64| -> [C64; 4] {
                let v = dirac_point_channels(
                    |sigma: f64| {
                        let d = self.data.eval(x, sigma, y);
                        // channel (ς₀, ς₂), entries ς₁ = −, +
                        [d[0], d[2], d[1], d[3], d[4], d[6], d[5], d[7]]
                    },
                    w,
                    c.t_e1,
                    c.s_e1,
                    h,
                )
                .unwrap_or([ZERO; 8]);
                let j = s1.index();
                [v[j], v[2 + j], v[4 + j], v[6 + j]]
            };
            let ev = TwoBodyEvolver::new(&data, w, self.params.theta2, h).map_err(twobody_err)?;
            let v = ev.eval(&pair).map_err(twobody_err)?;
            for s0 in Sign::BOTH {
                for s2 in Sign::BOTH {
                    out[comp3(s0, s1, s2)] = v[comp(s0, s2)];
                }
            }
        }
        Ok(out)
    }

    /// Compton formula for the given case, without checking the region.
    pub fn compton_unchecked(&self, c: &ThreeBodyConfig, case: ComptonCase) -> Result<[C64; 8]> {
        match case {
            ComptonCase::Left => self.left_pair(c),
            ComptonCase::Right => self.right_pair(c),
            ComptonCase::Both => {
                let l = self.left_pair(c)?;
                let r = self.right_pair(c)?;
                Ok(std::array::from_fn(|k| if k < 4 { l[k] } else { r[k] }))
            }
        }
    }

    /// Solution at a configuration outside the Coulomb region.
    pub fn eval(&self, c: &ThreeBodyConfig) -> Result<[C64; 8]> {
        match classify_three_body(c)? {
            RegionLabel::Free => self.free(c),
            RegionLabel::Coulomb => Err(Error::contract(
                "ThreeBodyEvolver::eval",
                format!("{c:?} is a Coulomb configuration; use the equal-time leaky evolution"),
            )),
            label => self.compton_unchecked(c, ComptonCase::from_label(label).expect("Compton label")),
        }
    }
}

/// Free three-time evolution at a configuration of the free region.
pub fn evolve_free_3<D: ThreeBodyInitial + ?Sized>(
    data: &D,
    params: &PhysicalParams,
    h: f64,
    c: &ThreeBodyConfig,
) -> Result<[C64; 8]> {
    let label = classify_three_body(c)?;
    if label != RegionLabel::Free {
        return Err(Error::domain("evolve_free_3", format!("{c:?} is {label:?}, not free")));
    }
    ThreeBodyEvolver::new(data, *params, h)?.free(c)
}

/// Compton-case evolution; the case must match the configuration's region.
pub fn evolve_compton<D: ThreeBodyInitial + ?Sized>(
    data: &D,
    params: &PhysicalParams,
    h: f64,
    c: &ThreeBodyConfig,
    case: ComptonCase,
) -> Result<[C64; 8]> {
    check_config("evolve_compton", c)?;
    let label = classify_three_body(c)?;
    if label != case.label() {
        return Err(Error::domain("evolve_compton", format!("{c:?} is {label:?}, not {:?}", case.label())));
    }
    ThreeBodyEvolver::new(data, *params, h)?.compton_unchecked(c, case)
}

use crate::{check_config, classify_three_body, RegionLabel, ThreeBodyConfig, ThreeBodyEvolver, ThreeBodyField, ThreeBodyInitial};
use phel_numerics::{Error, PhysicalParams, Result, C64};
use std::sync::OnceLock;

/// How the solution at the common time `min(t_ph, t_e1, t_e2)` is obtained.
#[derive(Debug, Clone, Copy)]
pub enum EqualTimeLeg<'f> {
    /// Free and Compton formulas; fails if a needed point is Coulomb.
    Exact,
    /// A leaky lattice solution already evolved to the common time.
    Lattice(&'f ThreeBodyField),
}

/// Multi-time solution: evolve all particles to the earliest of the three
/// times, then apply the free or Compton formula for the remaining
/// time differences.
pub fn multitime_eval<D: ThreeBodyInitial + ?Sized>(
    data: &D,
    params: &PhysicalParams,
    h: f64,
    c: &ThreeBodyConfig,
    leg: EqualTimeLeg<'_>,
) -> Result<[C64; 8]> {
    check_config("multitime_eval", c)?;
    let t = c.min_time();
    let rest = c.shifted(t);
    if classify_three_body(&rest)? == RegionLabel::Coulomb {
        return Err(Error::contract("multitime_eval", format!("{rest:?} is still Coulomb after the equal-time leg")));
    }
    if t == 0.0 {
        return ThreeBodyEvolver::new(data, *params, h)?.eval(&rest);
    }
    match leg {
        EqualTimeLeg::Lattice(field) => {
            if (field.time - t).abs() > 1e-9 * t.max(1.0) {
                return Err(Error::contract(
                    "multitime_eval",
                    format!("lattice field is at time {}, the common time is {t}", field.time),
                ));
            }
            let at_t = |x: f64, y: f64, z: f64| field.eval(x, y, z);
            ThreeBodyEvolver::new(&at_t, *params, h)?.eval(&rest)
        }
        EqualTimeLeg::Exact => {
            let inner = ThreeBodyEvolver::new(data, *params, h)?;
            let failure: OnceLock<Error> = OnceLock::new();
            let at_t = |x: f64, y: f64, z: f64| {
                if !(y < x && x < z) {
                    return [C64::new(0.0, 0.0); 8];
                }
                inner.eval(&ThreeBodyConfig::equal_time(t, x, y, z)).unwrap_or_else(|e| {
                    let _ = failure.set(e);
                    [C64::new(0.0, 0.0); 8]
                })
            };
            let v = ThreeBodyEvolver::new(&at_t, *params, h)?.eval(&rest)?;
            match failure.into_inner() {
                Some(e) => Err(e),
                None => Ok(v),
            }
        }
    }
}

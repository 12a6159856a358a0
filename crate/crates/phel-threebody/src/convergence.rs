use crate::{leaky_evolve_field, ThreeBodyField, ThreeBodyInitial, TransitionFunction, WedgeGrid};
use phel_numerics::{Error, PhysicalParams, Result};

/// One rung of the ε ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub epsilon: f64,
    /// `‖Ψ_ε(T)‖`.
    pub norm: f64,
    /// `‖Ψ_ε(T) − Ψ_ε'(T)‖` for the next rung `ε'`; `None` on the last.
    pub gap: Option<f64>,
    /// Lost probability `‖Ψ̊‖² − ‖Ψ_ε(T)‖²`.
    pub leaked: f64,
    /// Time-integrated wall flux, the flux-side estimate of `−leaked`.
    pub flux: f64,
    /// Largest increase of the squared norm over one lattice step.
    pub max_norm_increase: f64,
    /// Largest pointwise mismatch between the two wall-flux formulas.
    pub flux_mismatch: f64,
}

/// Runs the leaky evolution to time `t_final` for each ε of a strictly
/// decreasing ladder on one shared lattice and compares neighbours.
pub fn convergence_study<D: ThreeBodyInitial + ?Sized>(
    data: &D,
    params: &PhysicalParams,
    grid: &WedgeGrid,
    t_final: f64,
    ladder: &[f64],
) -> Result<Vec<ConvergenceRow>> {
    if ladder.is_empty() || ladder.iter().any(|e| !(*e > 0.0)) || ladder.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("convergence_study", format!("ladder {ladder:?} must be positive and strictly decreasing")));
    }
    let initial = ThreeBodyField::from_data(grid.clone(), data);
    let n0 = initial.norm_sq();
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(ladder.len());
    let mut previous: Option<ThreeBodyField> = None;
    for &eps in ladder {
        let p = PhysicalParams { epsilon: eps, ..*params };
        let mu = TransitionFunction::new(eps)?;
        let run = leaky_evolve_field(initial.clone(), &p, &mu, t_final)?;
        let mut last = n0;
        let mut max_increase = f64::NEG_INFINITY;
        for r in &run.records {
            max_increase = max_increase.max(r.norm_sq - last);
            last = r.norm_sq;
        }
        if let (Some(prev), Some(row)) = (previous.as_ref(), rows.last_mut()) {
            row.gap = Some(prev.distance(&run.field)?);
        }
        let norm_sq = run.field.norm_sq();
        rows.push(ConvergenceRow {
            epsilon: eps,
            norm: norm_sq.sqrt(),
            gap: None,
            leaked: n0 - norm_sq,
            flux: run.total_flux(),
            max_norm_increase: if run.records.is_empty() { 0.0 } else { max_increase },
            flux_mismatch: run.max_flux_mismatch(),
        });
        previous = Some(run.field);
    }
    Ok(rows)
}

use crate::record::{FluxTotals, RunRecord};
use crate::scenario::{Mode, Scenario};
use crate::suite::{run_suite, sum_roundoff, wedge_snapshot};
use crate::table::{label, num, report_table, Snapshot, Table, TableError};
use phel_free::{dirac_propagate, photon_transport, ElectronSpinor, PhotonBispinor};
use phel_numerics::{Grid1D, Sign, C64};
use phel_threebody::{
    check_config, classify_three_body, convergence_study, leaky_evolve, multitime_eval, EqualTimeLeg, LeakyRun,
    RegionLabel, ThreeBodyConfig, ThreeBodyField, TransitionFunction, WedgeGrid,
};
use phel_twobody::{boundary_residual_2body, TwoBodyEvolver, TwoBodyField};
use phel_verify::{Bound, Check};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Numerics(#[from] phel_numerics::Error),
    #[error(transparent)]
    TwoBody(#[from] phel_twobody::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("{0}")]
    Message(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    /// Whatever the scenario's mode asks for.
    Run,
    Verify,
    Converge,
}

/// An invocation in progress: emitted files go to `out` and into the
/// record's manifest.
pub struct Session<'a> {
    pub scenario: &'a Scenario,
    pub out: PathBuf,
    pub record: RunRecord,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub log: Box<dyn FnMut(&str) + 'a>,
}

impl<'a> Session<'a> {
    pub fn new(scenario: &'a Scenario, out: &Path, threads: usize, seed: u64, mode: Mode) -> Self {
        Self {
            scenario,
            out: out.to_path_buf(),
            record: RunRecord::new(scenario.hash(), mode.to_string(), threads, seed),
            checks: Vec::new(),
            seed,
            log: Box::new(|_| {}),
        }
    }

    fn emit(&mut self, name: &str, table: &Table) -> Result<(), RunError> {
        table.write(&self.out.join(name))?;
        self.record.manifest.push(name.to_string());
        Ok(())
    }

    /// Dispatches, then writes the record. Returns whether everything
    /// completed and every check passed.
    pub fn execute(&mut self, verb: Verb) -> bool {
        let mode = match verb {
            Verb::Run => self.scenario.run.mode,
            Verb::Verify => Mode::Verify,
            Verb::Converge => Mode::Convergence,
        };
        self.record.mode = mode.to_string();
        let result = match mode {
            Mode::Free => self.free(),
            Mode::TwoBody => self.two_body(),
            Mode::ThreeBodyEqualTime => self.three_body_equal_time(),
            Mode::ThreeBodyMultitime => self.three_body_multitime(),
            Mode::Convergence => self.convergence(),
            Mode::Verify => self.verify(),
        };
        if !self.checks.is_empty() {
            let report = report_table(&self.checks);
            if let Err(e) = self.emit("report.csv", &report) {
                self.record.error.get_or_insert(e.to_string());
            }
        }
        self.record.checks_failed = self.checks.iter().filter(|c| !c.passed).count();
        match result {
            Ok(()) => self.record.complete = self.record.error.is_none(),
            Err(e) => {
                self.record.complete = false;
                self.record.error = Some(e.to_string());
            }
        }
        if let Err(e) = self.record.write(&self.out) {
            (self.log)(&format!("cannot write record: {e}"));
            self.record.complete = false;
        }
        self.record.complete && self.record.checks_failed == 0
    }

    fn grid1(&self) -> Result<Grid1D, RunError> {
        let g = &self.scenario.grid;
        Ok(Grid1D::covering(g.lo, g.hi, g.spacing)?)
    }

    fn wedge(&self) -> Result<WedgeGrid, RunError> {
        let g = &self.scenario.grid;
        Ok(WedgeGrid::covering(g.lo, g.hi, g.spacing)?)
    }

    fn series_times(&self) -> Vec<f64> {
        let n = self.scenario.output.series_points;
        let t = self.scenario.run.t_final;
        (0..=n).map(|k| t * k as f64 / n as f64).collect()
    }

    /// Each particle evolved on its own.
    fn free(&mut self) -> Result<(), RunError> {
        let sc = self.scenario;
        let grid = self.grid1()?;
        let photon = sc.photon.packet();
        let photon = PhotonBispinor::from_fn(grid, true, |sg, s| photon.eval(s)[sg.index()]);
        let electrons = [&sc.electron1, &sc.electron2].map(|p| {
            let p = p.packet();
            ElectronSpinor::from_fn(grid, true, |sg, s| p.eval(s)[sg.index()])
        });
        let omega = sc.physics.omega;
        let evolve = |t: f64| -> Result<(PhotonBispinor, [ElectronSpinor; 2]), RunError> {
            Ok((
                photon_transport(&photon, t)?,
                [dirac_propagate(&electrons[0], omega, t)?, dirac_propagate(&electrons[1], omega, t)?],
            ))
        };
        let mut series = Table::new(&["time", "photon_norm_sq", "electron1_norm_sq", "electron2_norm_sq"]);
        let mut last = None;
        let started = std::time::Instant::now();
        for t in self.series_times() {
            let (ph, [e1, e2]) = evolve(t)?;
            let norms = [ph.norm_sq(), e1.norm_sq(), e2.norm_sq()];
            for (name, n) in ["photon", "electron1", "electron2"].iter().zip(norms) {
                self.record.norm(name, t, n);
            }
            series.push(std::iter::once(t).chain(norms).map(num).collect());
            last = Some((ph, e1, e2));
        }
        self.record.timing.push(crate::record::Timing {
            stage: "evolve".into(),
            seconds: started.elapsed().as_secs_f64(),
        });
        self.emit("series.csv", &series)?;
        let (ph, e1, e2) = last.expect("at least one time");
        let stride = sc.stride();
        let one_body = |values: [&[C64]; 2]| {
            let mut snap = Snapshot::new(&["s"]);
            for i in (0..grid.count()).step_by(stride) {
                for sign in Sign::BOTH {
                    snap.push(&[grid.point(i)], label(&[sign]), values[sign.index()][i]);
                }
            }
            snap.to_table()
        };
        self.emit("snapshot_photon.csv", &one_body([&ph.minus.values, &ph.plus.values]))?;
        self.emit("snapshot_electron1.csv", &one_body([&e1.minus.values, &e1.plus.values]))?;
        self.emit("snapshot_electron2.csv", &one_body([&e2.minus.values, &e2.plus.values]))?;
        Ok(())
    }

    /// Photon and electron 1 with the contact condition of phase θ₁.
    fn two_body(&mut self) -> Result<(), RunError> {
        let sc = self.scenario;
        let grid = self.grid1()?;
        let data = sc.two_body_data();
        let theta = sc.physics.theta1;
        let ev = TwoBodyEvolver::new(&data, sc.physics.omega, theta, sc.grid.spacing)?;
        let mut series = Table::new(&["time", "norm_sq", "boundary_residual"]);
        let mut last = None;
        let started = std::time::Instant::now();
        for t in self.series_times() {
            let field = TwoBodyField::evolve(&ev, t, grid, grid)?;
            let n = field.norm_sq()?;
            let r = boundary_residual_2body(&field, theta)?;
            self.record.norm("two_body", t, n);
            series.push(vec![num(t), num(n), num(r)]);
            last = Some(field);
        }
        self.record.timing.push(crate::record::Timing {
            stage: "evolve".into(),
            seconds: started.elapsed().as_secs_f64(),
        });
        self.emit("series.csv", &series)?;
        let field = last.expect("at least one time");
        let mut snap = Snapshot::new(&["s_ph", "s_e"]);
        let stride = sc.stride();
        let n = grid.count();
        for i in (0..n).step_by(stride) {
            for j in (i..n).filter(|j| j % stride == 0) {
                let v = field.at(i, j);
                for (k, z) in v.iter().enumerate() {
                    let signs = [Sign::from_index(k >> 1), Sign::from_index(k & 1)];
                    snap.push(&[grid.point(i), grid.point(j)], label(&signs), *z);
                }
            }
        }
        self.emit("snapshot.csv", &snap.to_table())
    }

    fn leaky(&mut self, t: f64) -> Result<LeakyRun, RunError> {
        let sc = self.scenario;
        let grid = self.wedge()?;
        let mu = TransitionFunction::new(sc.run.epsilon)?;
        let data = sc.three_body_data();
        let params = sc.params(sc.run.epsilon);
        let run = self.record.time("leaky_evolve", || leaky_evolve(&data, &params, grid, &mu, t))?;
        let mut series = Table::new(&["time", "norm_sq", "flux_c1", "flux_c2", "flux_mismatch"]);
        series.push(vec![num(0.0), num(run.initial_norm_sq), num(0.0), num(0.0), num(0.0)]);
        self.record.norm("three_body", 0.0, run.initial_norm_sq);
        let mut totals = FluxTotals::default();
        for r in &run.records {
            series.push(vec![num(r.time), num(r.norm_sq), num(r.flux_c1), num(r.flux_c2), num(r.flux_mismatch)]);
            self.record.norm("three_body", r.time, r.norm_sq);
            totals.c1 += r.flux_c1;
            totals.c2 += r.flux_c2;
        }
        self.record.flux_totals = Some(totals);
        self.emit("series.csv", &series)?;
        Ok(run)
    }

    fn three_body_equal_time(&mut self) -> Result<(), RunError> {
        let run = self.leaky(self.scenario.run.t_final)?;
        let snap = wedge_snapshot(&run.field, self.scenario.stride());
        self.emit("snapshot.csv", &snap.to_table())
    }

    /// Lattice evolution to the earliest of the three times, then the free
    /// and Compton formulas for the remaining time differences.
    fn three_body_multitime(&mut self) -> Result<(), RunError> {
        let sc = self.scenario;
        let [t_ph, t_e1, t_e2] = sc.run.times.ok_or_else(|| RunError::Message("run.times is required".into()))?;
        let t0 = t_ph.min(t_e1).min(t_e2);
        let run = self.leaky(t0)?;
        let grid = run.field.grid.clone();
        let stride = sc.stride();
        let n = grid.count();
        let mut configs = Vec::new();
        for a in (0..n).step_by(stride) {
            for b in (0..=a).step_by(stride) {
                for c in (a..n).filter(|c| c % stride == 0) {
                    let cfg = ThreeBodyConfig {
                        t_ph,
                        s_ph: grid.position(a),
                        t_e1,
                        s_e1: grid.position(b),
                        t_e2,
                        s_e2: grid.position(c),
                    };
                    let admissible = check_config("three_body_multitime", &cfg).is_ok()
                        && classify_three_body(&cfg.shifted(t0)).map_or(false, |l| l != RegionLabel::Coulomb);
                    if admissible {
                        configs.push(cfg);
                    }
                }
            }
        }
        let data = sc.three_body_data();
        let params = sc.params(sc.run.epsilon);
        let h = sc.grid.spacing;
        let field: &ThreeBodyField = &run.field;
        let values = self.record.time("multitime_eval", || {
            configs
                .par_iter()
                .map(|c| multitime_eval(&data, &params, h, c, EqualTimeLeg::Lattice(field)))
                .collect::<Result<Vec<_>, _>>()
        })?;
        let mut snap = Snapshot::new(&["t_ph", "s_ph", "t_e1", "s_e1", "t_e2", "s_e2"]);
        for (c, v) in configs.iter().zip(values) {
            let x = [c.t_ph, c.s_ph, c.t_e1, c.s_e1, c.t_e2, c.s_e2];
            for (k, z) in v.iter().enumerate() {
                snap.push(&x, label(&phel_threebody::signs3(k)), *z);
            }
        }
        self.emit("snapshot.csv", &snap.to_table())
    }

    /// The ε ladder on one lattice, tabulated with the convergence checks.
    fn convergence(&mut self) -> Result<(), RunError> {
        let sc = self.scenario;
        let grid = self.wedge()?;
        let data = sc.three_body_data();
        let ladder = &sc.run.ladder;
        let n0_sq = ThreeBodyField::from_data(grid.clone(), &data).norm_sq();
        let rows = self.record.time("convergence_study", || {
            convergence_study(&data, &sc.params(ladder[0]), &grid, sc.run.t_final, ladder)
        })?;
        let mut table =
            Table::new(&["epsilon", "norm", "gap", "leaked", "flux", "max_norm_increase", "flux_mismatch"]);
        for r in &rows {
            table.push(vec![
                num(r.epsilon),
                num(r.norm),
                r.gap.map(num).unwrap_or_default(),
                num(r.leaked),
                num(r.flux),
                num(r.max_norm_increase),
                num(r.flux_mismatch),
            ]);
            self.record.norm(&format!("epsilon={}", r.epsilon), sc.run.t_final, r.norm * r.norm);
        }
        self.emit("convergence.csv", &table)?;
        let gaps: Vec<f64> = rows.iter().filter_map(|r| r.gap).collect();
        let n0 = n0_sq.sqrt();
        let mut checks = vec![
            Check::new(
                "convergence.max_step_norm_increase",
                rows.iter().map(|r| r.max_norm_increase / n0_sq).fold(f64::NEG_INFINITY, f64::max),
                Bound::AtMost(sum_roundoff(&grid)),
            ),
            Check::new(
                "convergence.flux_mismatch",
                rows.iter().map(|r| r.flux_mismatch).fold(0.0, f64::max),
                Bound::Below(1e-6),
            ),
        ];
        let balance = rows
            .iter()
            .map(|r| if r.leaked == 0.0 && r.flux == 0.0 { 0.0 } else { (r.leaked + r.flux).abs() / r.leaked.abs() })
            .fold(0.0, f64::max);
        checks.push(Check::new("convergence.balance_relative", balance, Bound::Below(2e-3)));
        if gaps.len() >= 2 {
            let ratio = gaps.windows(2).map(|w| w[1] / w[0]).fold(f64::NEG_INFINITY, f64::max);
            checks.push(Check::new("convergence.gap_ratio_max", ratio, Bound::Below(1.0)));
        }
        if let Some(g) = gaps.last() {
            checks.push(Check::new("convergence.final_gap_relative", g / n0, Bound::Below(5e-3)));
        }
        if rows.len() >= 2 {
            let red = rows.windows(2).map(|w| w[0].leaked / w[1].leaked).fold(f64::INFINITY, f64::min);
            checks.push(Check::new("convergence.leak_reduction_min", red, Bound::AtLeast(1.5)));
        }
        self.checks.extend(checks);
        Ok(())
    }

    fn verify(&mut self) -> Result<(), RunError> {
        let sc = self.scenario;
        let seed = self.seed;
        let started = std::time::Instant::now();
        let log = &mut self.log;
        let sections = run_suite(sc, seed, |s| {
            for c in &s.checks {
                log(&format!("[{}] {c}", s.title));
            }
        });
        self.record.timing.push(crate::record::Timing {
            stage: "verify".into(),
            seconds: started.elapsed().as_secs_f64(),
        });
        for s in sections {
            self.checks.extend(s.checks.into_iter().map(|c| Check { name: format!("{}/{}", s.title, c.name), ..c }));
        }
        Ok(())
    }
}

use crate::{classify, Region, Result, TwoBodyConfig, TwoBodyInitial};
use phel_free::{dirac_point, goursat_left_fn, goursat_right_fn};
use phel_numerics::{eval_slice, panels, simpson, Error, Grid1D, Sign, C64, I};

/// Two-body propagator for fixed data, mass, contact phase and quadrature
/// spacing.
pub struct TwoBodyEvolver<'a, D: TwoBodyInitial + ?Sized> {
    data: &'a D,
    omega: f64,
    phase: C64,
    h: f64,
}

impl<'a, D: TwoBodyInitial + ?Sized> TwoBodyEvolver<'a, D> {
    pub fn new(data: &'a D, omega: f64, theta: f64, h: f64) -> Result<Self> {
        if !omega.is_finite() || omega < 0.0 || !theta.is_finite() || !(h > 0.0) {
            return Err(Error::domain(
                "TwoBodyEvolver",
                format!("need omega >= 0, finite theta and h > 0 (omega {omega}, theta {theta}, h {h})"),
            )
            .into());
        }
        Ok(Self { data, omega, phase: C64::from_polar(1.0, theta), h })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Free electron evolution of the photon component `photon` with the
    /// photon foot fixed at `foot`; returns both electron components.
    pub fn electron_free(&self, foot: f64, photon: Sign, t: f64, s: f64) -> [C64; 2] {
        let k = 2 * photon.index();
        let data = |sigma: f64| {
            let d = self.data.eval(foot, sigma);
            [d[k], d[k + 1]]
        };
        dirac_point(data, self.omega, t.max(0.0), s, self.h).unwrap_or([C64::new(0.0, 0.0); 2])
    }

    /// Free formula, valid in the far region and for the `ς₀ = −`
    /// components everywhere.
    pub fn far(&self, c: &TwoBodyConfig) -> [C64; 4] {
        let m = self.electron_free(c.s_ph - c.t_ph, Sign::Minus, c.t_e, c.s_e);
        let p = self.electron_free(c.s_ph + c.t_ph, Sign::Plus, c.t_e, c.s_e);
        [m[0], m[1], p[0], p[1]]
    }

    /// Edge data for photon foot `q`, enough for electron times up to `t_max`.
    pub fn row(&self, q: f64, t_max: f64) -> ContactRow<'_, 'a, D> {
        ContactRow::new(self, q, t_max)
    }

    /// Contact formula; also valid on the collision set itself.
    pub fn contact(&self, c: &TwoBodyConfig) -> [C64; 4] {
        let m = self.electron_free(c.s_ph - c.t_ph, Sign::Minus, c.t_e, c.s_e);
        let row = self.row(c.s_ph + c.t_ph, c.t_e);
        [m[0], m[1], row.plus_minus(c.t_e, c.s_e), row.plus_plus(c.t_e, c.s_e)]
    }

    /// Solution at a configuration, dispatching on the region.
    pub fn eval(&self, c: &TwoBodyConfig) -> Result<[C64; 4]> {
        Ok(match classify(c)? {
            Region::Far => self.far(c),
            Region::Near => self.contact(c),
        })
    }
}

/// Characteristic data for one photon foot `q`:
/// `F(b) = ψ₊₋` at electron `(b, q+b)` from the free formula and
/// `G(c) = e^{iθ} ψ₋₊` at the collision point `(c, q−c)`.
pub struct ContactRow<'e, 'a, D: TwoBodyInitial + ?Sized> {
    ev: &'e TwoBodyEvolver<'a, D>,
    q: f64,
    grid: Grid1D,
    f: Vec<C64>,
    g: Vec<C64>,
}

impl<'e, 'a, D: TwoBodyInitial + ?Sized> ContactRow<'e, 'a, D> {
    fn new(ev: &'e TwoBodyEvolver<'a, D>, q: f64, t_max: f64) -> Self {
        // edge data vary on half the scale of the bulk, so sample finer
        let h = ev.h / 4.0;
        let n = ((t_max.max(0.0) / h).ceil() as usize + 5).max(5);
        let grid = Grid1D::new(0.0, h, n).expect("positive spacing");
        let f = grid.points().map(|b| ev.electron_free(q, Sign::Plus, b, q + b)[0]).collect();
        let g = grid
            .points()
            .map(|c| ev.phase * ev.electron_free(q - 2.0 * c, Sign::Minus, c, q - c)[1])
            .collect();
        Self { ev, q, grid, f, g }
    }

    pub fn foot(&self) -> f64 {
        self.q
    }

    /// `ψ₊₋` at electron `(t, s)`.
    pub fn plus_minus(&self, t: f64, s: f64) -> C64 {
        if s - t >= self.q {
            return self.ev.electron_free(self.q, Sign::Plus, t, s)[0];
        }
        let rel = (s - self.q).clamp(-t, t);
        let f = |b: f64| eval_slice(&self.grid, &self.f, b);
        let g = |c: f64| eval_slice(&self.grid, &self.g, c);
        let w = self.ev.omega;
        let r = goursat_right_fn(f, w, t, rel, self.ev.h).unwrap_or_default();
        let l = goursat_left_fn(g, w, t, rel, self.ev.h).unwrap_or_default();
        r + l
    }

    /// `ψ₊₊` at electron `(t, s)`, by transport along `(τ, s+t−τ)`.
    pub fn plus_plus(&self, t: f64, s: f64) -> C64 {
        let base = self.ev.data.eval(self.q, s + t)[3];
        if t <= 0.0 || self.ev.omega == 0.0 {
            return base;
        }
        let line = |tau: f64| self.plus_minus(tau, s + t - tau);
        base - I * self.ev.omega * simpson(line, 0.0, t, panels(0.0, t, self.ev.h))
    }
}

/// Free evolution at a far configuration.
pub fn evolve_far<D: TwoBodyInitial + ?Sized>(data: &D, omega: f64, h: f64, c: &TwoBodyConfig) -> Result<[C64; 4]> {
    let ev = TwoBodyEvolver::new(data, omega, 0.0, h)?;
    match classify(c)? {
        Region::Far => Ok(ev.far(c)),
        Region::Near => Err(Error::contract("evolve_far", format!("{c:?} is in the near region")).into()),
    }
}

/// Evolution with the contact condition `ψ₊₋ = e^{iθ} ψ₋₊` at any ordered
/// spacelike configuration.
pub fn contact_evolve<D: TwoBodyInitial + ?Sized>(
    data: &D,
    theta: f64,
    omega: f64,
    h: f64,
    c: &TwoBodyConfig,
) -> Result<[C64; 4]> {
    TwoBodyEvolver::new(data, omega, theta, h)?.eval(c)
}

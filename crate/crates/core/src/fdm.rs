//! Theta-method finite-difference solver for the dimensionless system.
//!
//! Uniform grid `Y_i = i h`, `i = 0..=ny+1`, `h = y_max / (ny + 1)`, with
//! Dirichlet data at both ends: `V = t^2`, `T = phi = 1` at the wall and zero
//! at `y_max`. Each step advances `T` and `phi` first (they do not depend on
//! `V`), then `V` with the buoyancy source weighted by the same `theta` as
//! the diffusion operator. `theta = 0.5` is Crank-Nicolson.
//!
//! The thermal and solutal wall values switch on at `t = 0+`, so they are
//! taken as 1 already at the initial level. The constant tridiagonal
//! matrices are factored once and reused every step.

use ndarray::{Array2, ArrayView1};
use serde::Serialize;

use crate::analytic::AnalyticSolution;
use crate::model::{EvalPoint, FieldKind, FlowParameters};
use crate::{lit, to_f64, Error, Real, Result};

/// Grid and time-stepping configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdmConfig<T> {
    /// Truncation length of the computational domain.
    pub y_max: T,
    /// Number of interior nodes.
    pub ny: usize,
    pub dt: T,
    pub t_end: T,
    /// Implicitness weight, 0 = explicit, 0.5 = Crank-Nicolson, 1 = backward Euler.
    pub theta: T,
    /// Keep every `store_every`-th time level (the initial and final levels are always kept).
    pub store_every: usize,
}

impl<T: Real> FdmConfig<T> {
    pub const DEFAULT_Y_MAX: f64 = 20.0;

    /// Crank-Nicolson configuration storing every level.
    pub fn new(y_max: T, ny: usize, dt: T, t_end: T) -> Self {
        Self {
            y_max,
            ny,
            dt,
            t_end,
            theta: lit(0.5),
            store_every: 1,
        }
    }

    /// Builds a configuration from a target spacing: `ny = round(y_max / dy) - 1`.
    pub fn with_spacing(y_max: T, dy: T, dt: T, t_end: T) -> Result<Self> {
        if !(dy > T::zero()) || !(y_max > T::zero()) {
            return Err(Error::InvalidParameter {
                name: "dy",
                value: to_f64(dy),
                expected: "> 0 with y_max > 0",
            });
        }
        let cells = (y_max / dy).round().to_usize().unwrap_or(0);
        Ok(Self::new(y_max, cells.saturating_sub(1), dt, t_end))
    }

    pub fn theta(mut self, theta: T) -> Self {
        self.theta = theta;
        self
    }

    pub fn store_every(mut self, stride: usize) -> Self {
        self.store_every = stride;
        self
    }

    /// Grid spacing `y_max / (ny + 1)`.
    pub fn dy(&self) -> T {
        self.y_max / lit((self.ny + 1) as f64)
    }

    /// Number of time steps; `dt` is shrunk slightly so that the steps land on `t_end`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).ceil().to_usize().unwrap_or(1).max(1)
    }

    pub fn effective_dt(&self) -> T {
        self.t_end / lit(self.steps() as f64)
    }

    /// Checks the configuration against the parameter set (stability for `theta < 0.5`).
    pub fn validate(&self, params: &FlowParameters<T>) -> Result<()> {
        let check = |ok: bool, name: &'static str, value: T, expected: &'static str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value: to_f64(value),
                    expected,
                })
            }
        };
        check(
            self.y_max.is_finite() && self.y_max > T::zero(),
            "y_max",
            self.y_max,
            "> 0",
        )?;
        check(
            self.ny >= 16,
            "ny",
            lit(self.ny as f64),
            ">= 16 interior nodes",
        )?;
        check(
            self.dt.is_finite() && self.dt > T::zero(),
            "dt",
            self.dt,
            "> 0",
        )?;
        check(
            self.t_end.is_finite() && self.t_end > T::zero(),
            "t_end",
            self.t_end,
            "> 0",
        )?;
        check(
            self.theta >= T::zero() && self.theta <= T::one(),
            "theta",
            self.theta,
            "0 <= theta <= 1",
        )?;
        check(self.store_every >= 1, "store_every", T::zero(), ">= 1")?;
        if self.theta < lit(0.5) {
            let h = self.dy();
            let smallest = T::one().min(params.pr()).min(params.sc());
            let limit = h * h * smallest / lit(2.0);
            if self.dt > limit {
                return Err(Error::Unstable {
                    dt: to_f64(self.dt),
                    limit: to_f64(limit),
                    theta: to_f64(self.theta),
                });
            }
        }
        Ok(())
    }
}

/// Pre-factored constant tridiagonal matrix (Thomas algorithm).
///
/// Row `i` reads `lower x[i-1] + diag x[i] + upper x[i+1] = rhs[i]`.
#[derive(Debug, Clone)]
pub struct Tridiagonal<T> {
    lower: T,
    /// Modified super-diagonal `c'_i`.
    upper_mod: Vec<T>,
    /// Reciprocal pivots `1 / (b - a c'_{i-1})`.
    pivot_inv: Vec<T>,
}

impl<T: Real> Tridiagonal<T> {
    pub fn constant(n: usize, lower: T, diag: T, upper: T) -> Self {
        let mut upper_mod = Vec::with_capacity(n);
        let mut pivot_inv = Vec::with_capacity(n);
        let mut prev = T::zero();
        for _ in 0..n {
            let inv = (diag - lower * prev).recip();
            prev = upper * inv;
            pivot_inv.push(inv);
            upper_mod.push(prev);
        }
        Self {
            lower,
            upper_mod,
            pivot_inv,
        }
    }

    pub fn len(&self) -> usize {
        self.pivot_inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivot_inv.is_empty()
    }

    /// Overwrites `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [T]) {
        let n = self.len();
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        if n == 0 {
            return;
        }
        rhs[0] = rhs[0] * self.pivot_inv[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.lower * rhs[i - 1]) * self.pivot_inv[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] = rhs[i] - self.upper_mod[i] * rhs[i + 1];
        }
    }
}

/// One diffusion equation `u_t = kappa u_YY + s` advanced by the theta-method.
struct ThetaStepper<T> {
    r: T,
    theta: T,
    dt: T,
    matrix: Tridiagonal<T>,
    rhs: Vec<T>,
}

impl<T: Real> ThetaStepper<T> {
    fn new(kappa: T, dt: T, h: T, theta: T, interior: usize) -> Self {
        let r = kappa * dt / (h * h);
        let off = -theta * r;
        let diag = T::one() + lit::<T>(2.0) * theta * r;
        Self {
            r,
            theta,
            dt,
            matrix: Tridiagonal::constant(interior, off, diag, off),
            rhs: vec![T::zero(); interior],
        }
    }

    /// Advances the full nodal vector `u` (boundary nodes included) in place.
    /// `u[0]` must hold the old wall value; `wall` is the new one. The far
    /// boundary is homogeneous. `source` gives the source at old/new levels
    /// for interior node `i` (0-based over the interior).
    fn step(&mut self, u: &mut [T], wall: T, source: Option<(&[T], &[T])>) {
        let n = self.rhs.len();
        let explicit = (T::one() - self.theta) * self.r;
        let two = lit::<T>(2.0);
        for i in 0..n {
            let j = i + 1;
            let lap = u[j - 1] - two * u[j] + u[j + 1];
            let mut value = u[j] + explicit * lap;
            if let Some((old, new)) = source {
                value = value + self.dt * ((T::one() - self.theta) * old[i] + self.theta * new[i]);
            }
            self.rhs[i] = value;
        }
        self.rhs[0] = self.rhs[0] + self.theta * self.r * wall;
        self.matrix.solve_in_place(&mut self.rhs);
        u[0] = wall;
        u[1..=n].copy_from_slice(&self.rhs);
        u[n + 1] = T::zero();
    }
}

/// Stored solution, arrays indexed `(time level, node)` including both boundary nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FdmSolution<T> {
    pub config: FdmConfig<T>,
    pub y_grid: Vec<T>,
    pub times: Vec<T>,
    pub v_field: Array2<T>,
    pub t_field: Array2<T>,
    pub phi_field: Array2<T>,
}

/// Integrates the system from `t = 0` to `cfg.t_end`.
pub fn solve<T: Real>(params: &FlowParameters<T>, cfg: &FdmConfig<T>) -> Result<FdmSolution<T>> {
    cfg.validate(params)?;
    let interior = cfg.ny;
    let nodes = interior + 2;
    let h = cfg.dy();
    let steps = cfg.steps();
    let dt = cfg.effective_dt();
    let theta = cfg.theta;

    let mut thermal = ThetaStepper::new(params.pr().recip(), dt, h, theta, interior);
    let mut solutal = ThetaStepper::new(params.sc().recip(), dt, h, theta, interior);
    let mut momentum = ThetaStepper::new(T::one(), dt, h, theta, interior);

    let cos_alpha = params.alpha().cos();
    let gr = params.gr() * cos_alpha;
    let gc = params.gc() * cos_alpha;

    let mut v = vec![T::zero(); nodes];
    let mut temp = vec![T::zero(); nodes];
    let mut phi = vec![T::zero(); nodes];
    let mut source_old = vec![T::zero(); interior];
    let mut source_new = vec![T::zero(); interior];

    let stored_levels = 1
        + (1..=steps)
            .filter(|&n| n % cfg.store_every == 0 || n == steps)
            .count();
    let mut times = Vec::with_capacity(stored_levels);
    let mut v_field = Array2::zeros((stored_levels, nodes));
    let mut t_field = Array2::zeros((stored_levels, nodes));
    let mut phi_field = Array2::zeros((stored_levels, nodes));
    times.push(T::zero());
    let mut row = 1;

    // Wall temperature and concentration are on from t = 0+.
    temp[0] = T::one();
    phi[0] = T::one();
    for i in 0..interior {
        source_old[i] = gr * temp[i + 1] + gc * phi[i + 1];
    }

    for n in 1..=steps {
        let t_new = dt * lit(n as f64);

        thermal.step(&mut temp, T::one(), None);
        solutal.step(&mut phi, T::one(), None);
        for i in 0..interior {
            source_new[i] = gr * temp[i + 1] + gc * phi[i + 1];
        }
        momentum.step(&mut v, t_new * t_new, Some((&source_old, &source_new)));
        std::mem::swap(&mut source_old, &mut source_new);

        for (name, field) in [("V", &v), ("T", &temp), ("phi", &phi)] {
            if field.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteField {
                    field: name,
                    step: n,
                    time: to_f64(t_new),
                });
            }
        }

        if n % cfg.store_every == 0 || n == steps {
            times.push(t_new);
            v_field.row_mut(row).assign(&ArrayView1::from(&v[..]));
            t_field.row_mut(row).assign(&ArrayView1::from(&temp[..]));
            phi_field.row_mut(row).assign(&ArrayView1::from(&phi[..]));
            row += 1;
        }
    }

    // The stored initial level is the t <= 0 state: everything zero.
    let y_grid = (0..nodes).map(|i| h * lit(i as f64)).collect();
    Ok(FdmSolution {
        config: *cfg,
        y_grid,
        times,
        v_field,
        t_field,
        phi_field,
    })
}

impl<T: Real> FdmSolution<T> {
    pub fn field(&self, kind: FieldKind) -> &Array2<T> {
        match kind {
            FieldKind::Velocity => &self.v_field,
            FieldKind::Temperature => &self.t_field,
            FieldKind::Concentration => &self.phi_field,
        }
    }

    /// Index of the first stored level at or after `t`.
    pub fn level_at_or_after(&self, t: T) -> Option<usize> {
        let tol = self.config.effective_dt() * lit(1e-9);
        self.times.iter().position(|&s| s >= t - tol)
    }

    pub fn final_level(&self) -> usize {
        self.times.len() - 1
    }

    /// Field values `(V, T, phi)` at `(y, t)`: linear in space, at the first
    /// stored level at or after `t`.
    pub fn sample_at(&self, y: T, t: T) -> Result<(T, T, T)> {
        let y_max = self.config.y_max;
        let t_end = *self.times.last().expect("at least the initial level");
        let out = || Error::OutOfDomain {
            y: to_f64(y),
            t: to_f64(t),
        };
        if !(y >= T::zero() && y <= y_max) || !(t >= T::zero() && t <= t_end) {
            return Err(out());
        }
        let level = self.level_at_or_after(t).ok_or_else(out)?;
        let h = self.config.dy();
        let last = self.y_grid.len() - 1;
        let pos = (y / h).min(lit(last as f64));
        let left = pos.floor().to_usize().unwrap_or(0).min(last - 1);
        let w = pos - lit(left as f64);
        let interp = |field: &Array2<T>| {
            let row = field.row(level);
            row[left] * (T::one() - w) + row[left + 1] * w
        };
        Ok((
            interp(&self.v_field),
            interp(&self.t_field),
            interp(&self.phi_field),
        ))
    }

    /// Max-norm difference between this solution and the closed form, per
    /// field, at stored level `level`.
    pub fn max_error(&self, exact: &AnalyticSolution<T>, level: usize) -> Result<[T; 3]> {
        let t = self.times[level];
        let mut errs = [T::zero(); 3];
        for (k, kind) in FieldKind::ALL.iter().enumerate() {
            let row = self.field(*kind).row(level);
            for (i, &y) in self.y_grid.iter().enumerate() {
                let e = (row[i] - exact.field(*kind, EvalPoint::new(y, t)?)).abs();
                errs[k] = errs[k].max(e);
            }
        }
        Ok(errs)
    }
}

/// How each level of a convergence study is refined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Refinement {
    /// Halve the spacing and quarter the time step.
    Space,
    /// Halve the time step, spacing fixed.
    Time,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceLevel<T> {
    pub dy: T,
    pub dt: T,
    /// Max-norm errors of `(V, T, phi)` at `t_end`.
    pub errors: [T; 3],
    /// Observed order `log2(e_{k-1} / e_k)` relative to the previous level.
    pub orders: Option<[T; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy<T> {
    pub refinement: Refinement,
    pub levels: Vec<ConvergenceLevel<T>>,
}

impl<T: Real> ConvergenceStudy<T> {
    /// Order of the finest pair of levels.
    pub fn final_orders(&self) -> Option<[T; 3]> {
        self.levels.last().and_then(|l| l.orders)
    }
}

/// Grid refinement study against the closed form at `base_cfg.t_end`.
pub fn convergence_study<T: Real>(
    params: &FlowParameters<T>,
    base_cfg: &FdmConfig<T>,
    levels: usize,
) -> Result<ConvergenceStudy<T>> {
    refinement_study(params, base_cfg, levels, Refinement::Space)
}

pub fn refinement_study<T: Real>(
    params: &FlowParameters<T>,
    base_cfg: &FdmConfig<T>,
    levels: usize,
    refinement: Refinement,
) -> Result<ConvergenceStudy<T>> {
    if levels < 2 {
        return Err(Error::Invalid(format!(
            "convergence study needs at least two levels, got {levels}"
        )));
    }
    let exact = AnalyticSolution::new(*params)?;
    let mut cfg = *base_cfg;
    let mut out: Vec<ConvergenceLevel<T>> = Vec::with_capacity(levels);
    for k in 0..levels {
        if k > 0 {
            match refinement {
                Refinement::Space => {
                    cfg.ny = 2 * (cfg.ny + 1) - 1;
                    cfg.dt = cfg.dt / lit(4.0);
                }
                Refinement::Time => cfg.dt = cfg.dt / lit(2.0),
            }
        }
        // Only the final level is needed.
        cfg.store_every = cfg.steps();
        let sol = solve(params, &cfg)?;
        let errors = sol.max_error(&exact, sol.final_level())?;
        let orders = out.last().map(|prev| {
            let mut p = [T::zero(); 3];
            for i in 0..3 {
                p[i] = (prev.errors[i] / errors[i]).log2();
            }
            p
        });
        out.push(ConvergenceLevel {
            dy: cfg.dy(),
            dt: cfg.effective_dt(),
            errors,
            orders,
        });
    }
    Ok(ConvergenceStudy {
        refinement,
        levels: out,
    })
}

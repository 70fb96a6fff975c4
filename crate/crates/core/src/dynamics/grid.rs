//! Uniform time grids, fixed-step RK4 and the cumulative quadratures that
//! share the grid with it.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::coefficient::{CoefficientFn, ComplexCoefficient};
use crate::error::{Error, Result};

/// Default integration step.
pub const DEFAULT_DT: f64 = 1e-3;
/// Default recording stride.
pub const DEFAULT_STRIDE: usize = 10;
/// Largest endpoint change tolerated when the step is halved.
pub const STEP_TOL: f64 = 1e-8;

/// `[0, t_end]` split into equal steps close to `dt`, recorded every `stride` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    steps: usize,
    stride: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, dt: f64, stride: usize) -> Result<Self> {
        if !(t_end > 0.0) || !(dt > 0.0) || stride == 0 || !t_end.is_finite() {
            return Err(Error::InvalidGrid);
        }
        let steps = libm::round(t_end / dt).max(1.0) as usize;
        Ok(TimeGrid { t_end, steps, stride })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Actual step length `t_end / steps`.
    pub fn dt(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    pub fn time(&self, step: usize) -> f64 {
        if step == self.steps {
            self.t_end
        } else {
            step as f64 * self.dt()
        }
    }

    /// Whether step `k` is recorded: every `stride`-th step plus the last one.
    pub fn is_sample(&self, step: usize) -> bool {
        step % self.stride == 0 || step == self.steps
    }

    pub fn sample_steps(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.steps).filter(move |k| self.is_sample(*k))
    }

    pub fn sample_times(&self) -> Vec<f64> {
        self.sample_steps().map(|k| self.time(k)).collect()
    }

    /// Same recording times, half the step.
    pub fn halved(&self) -> Self {
        TimeGrid {
            t_end: self.t_end,
            steps: 2 * self.steps,
            stride: 2 * self.stride,
        }
    }

    /// Half the step and half the sample spacing.
    pub fn refined(&self) -> Self {
        TimeGrid {
            t_end: self.t_end,
            steps: 2 * self.steps,
            stride: self.stride,
        }
    }
}

/// Vector-space operations RK4 needs.
pub trait OdeState: Clone {
    /// `self + c·k`
    fn add_scaled(&self, c: f64, k: &Self) -> Self;
    /// Distance used for the step-halving check.
    fn deviation(&self, other: &Self) -> f64;
}

impl OdeState for Complex64 {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        self + k * c
    }
    fn deviation(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl OdeState for Vec<Complex64> {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        self.iter().zip(k).map(|(a, b)| a + b * c).collect()
    }
    fn deviation(&self, other: &Self) -> f64 {
        self.iter().zip(other).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// One classical RK4 step of `y' = f(t, y)`.
pub fn rk4_step<S, F>(f: &mut F, t: f64, h: f64, y: &S) -> Result<S>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S>,
{
    let k1 = f(t, y)?;
    let k2 = f(t + 0.5 * h, &y.add_scaled(0.5 * h, &k1))?;
    let k3 = f(t + 0.5 * h, &y.add_scaled(0.5 * h, &k2))?;
    let k4 = f(t + h, &y.add_scaled(h, &k3))?;
    Ok(y
        .add_scaled(h / 6.0, &k1)
        .add_scaled(h / 3.0, &k2)
        .add_scaled(h / 3.0, &k3)
        .add_scaled(h / 6.0, &k4))
}

/// Fixed-step integration over `grid`; `on_step(k, t, y)` sees every step including `k = 0`.
pub fn integrate<S, F, G>(f: &mut F, y0: &S, grid: &TimeGrid, mut on_step: G) -> Result<S>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S>,
    G: FnMut(usize, f64, &S) -> Result<()>,
{
    let h = grid.dt();
    let mut y = y0.clone();
    on_step(0, 0.0, &y)?;
    for k in 0..grid.steps() {
        y = rk4_step(f, grid.time(k), h, &y)?;
        on_step(k + 1, grid.time(k + 1), &y)?;
    }
    Ok(y)
}

/// [`integrate`] followed by a second pass at half the step; fails with
/// [`Error::StepTooLarge`] when the endpoints differ by more than [`STEP_TOL`].
///
/// Returns the endpoint and the observed endpoint deviation.
pub fn integrate_checked<S, F, G>(f: &mut F, y0: &S, grid: &TimeGrid, on_step: G) -> Result<(S, f64)>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S>,
    G: FnMut(usize, f64, &S) -> Result<()>,
{
    let coarse = integrate(f, y0, grid, on_step)?;
    let fine = integrate(f, y0, &grid.halved(), |_, _, _| Ok(()))?;
    let deviation = coarse.deviation(&fine);
    if deviation > STEP_TOL {
        return Err(Error::StepTooLarge { deviation });
    }
    Ok((coarse, deviation))
}

/// Cumulative integrals on every grid step.
#[derive(Debug, Clone)]
pub struct PhaseIntegrals {
    /// `Ω(t_k) = ∫₀^{t_k} ω`
    pub omega: Vec<f64>,
    /// `Γ(t_k) = ∫₀^{t_k} f(s) e^{iΩ(s)} ds`
    pub forcing: Vec<Complex64>,
}

/// Simpson's rule on each step, using the step midpoint.
///
/// `Ω` at the midpoint comes from Simpson's rule on the half step, so the
/// forcing integrand is evaluated without interpolation.
pub fn phase_integrals(omega: &CoefficientFn, f: &ComplexCoefficient, grid: &TimeGrid) -> PhaseIntegrals {
    let h = grid.dt();
    let mut big_omega = Vec::with_capacity(grid.steps() + 1);
    let mut gamma = Vec::with_capacity(grid.steps() + 1);
    let integrand = |t: f64, phase: f64| f.eval(t) * Complex64::from_polar(1.0, phase);

    let mut om = 0.0;
    let mut g = Complex64::new(0.0, 0.0);
    big_omega.push(om);
    gamma.push(g);
    for k in 0..grid.steps() {
        let t0 = grid.time(k);
        let t1 = grid.time(k + 1);
        let tm = t0 + 0.5 * h;
        let om_mid = om + h / 12.0 * (omega.eval(t0) + 4.0 * omega.eval(t0 + 0.25 * h) + omega.eval(tm));
        let om_next = om + h / 6.0 * (omega.eval(t0) + 4.0 * omega.eval(tm) + omega.eval(t1));
        g += (integrand(t0, om) + integrand(tm, om_mid) * 4.0 + integrand(t1, om_next)) * (h / 6.0);
        om = om_next;
        big_omega.push(om);
        gamma.push(g);
    }
    PhaseIntegrals { omega: big_omega, forcing: gamma }
}

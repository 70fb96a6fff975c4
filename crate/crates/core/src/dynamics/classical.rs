//! Classical eigenvalue laws: `iż = ωz + f` for the boson and
//! `iζ̇ = ωζ − η` with its phase equation for the Grassmann-forced fermion.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::grid::{integrate, integrate_checked, phase_integrals, OdeState, TimeGrid};
use super::{HamiltonianSpec, SystemKind};
use crate::error::{Error, Result};
use crate::fermion::{make_coherent, FermionState};
use crate::grassmann::{GeneratorSet, Multivector};

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

/// `z(t)` from RK4 next to the closed form `β̃(t) z0 + γ̃(t)`.
#[derive(Debug, Clone)]
pub struct ClassicalBosonPath {
    pub times: Vec<f64>,
    pub rk4: Vec<Complex64>,
    pub closed_form: Vec<Complex64>,
    pub step_deviation: f64,
}

impl ClassicalBosonPath {
    /// Largest gap between the integrated and the closed-form eigenvalue.
    pub fn max_disagreement(&self) -> f64 {
        self.rk4
            .iter()
            .zip(&self.closed_form)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn boson_rhs(spec: &HamiltonianSpec) -> impl FnMut(f64, &Complex64) -> Result<Complex64> + '_ {
    move |t, z| Ok(MINUS_I * (z * spec.omega.eval(t) + spec.forcing.eval(t)))
}

/// Integrates `iż = ω(t)z + f(t)` and evaluates the closed form on the same grid.
pub fn evolve_classical_boson(spec: &HamiltonianSpec, z0: Complex64, grid: &TimeGrid) -> Result<ClassicalBosonPath> {
    if spec.kind != SystemKind::Boson {
        return Err(Error::WrongKind);
    }
    let mut times = Vec::new();
    let mut rk4 = Vec::new();
    let (_, step_deviation) = integrate_checked(&mut boson_rhs(spec), &z0, grid, |k, t, z| {
        if grid.is_sample(k) {
            times.push(t);
            rk4.push(*z);
        }
        Ok(())
    })?;

    let q = phase_integrals(&spec.omega, &spec.forcing, grid);
    let closed_form = grid
        .sample_steps()
        .map(|k| {
            let beta_tilde = Complex64::from_polar(1.0, -q.omega[k]);
            let gamma_tilde = MINUS_I * q.forcing[k] * beta_tilde;
            beta_tilde * z0 + gamma_tilde
        })
        .collect();
    Ok(ClassicalBosonPath { times, rk4, closed_form, step_deviation })
}

/// Endpoint of the boson law without the step-halving check.
pub fn classical_boson_endpoint(spec: &HamiltonianSpec, z0: Complex64, grid: &TimeGrid) -> Result<Complex64> {
    integrate(&mut boson_rhs(spec), &z0, grid, |_, _, _| Ok(()))
}

/// `(ζ, φ)` integrated jointly.
#[derive(Debug, Clone)]
struct LawState {
    zeta: Multivector,
    phase: Multivector,
}

impl OdeState for LawState {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        LawState {
            zeta: &self.zeta + &(&k.zeta * c),
            phase: &self.phase + &(&k.phase * c),
        }
    }

    fn deviation(&self, other: &Self) -> f64 {
        self.zeta.distance(&other.zeta).max(self.phase.distance(&other.phase))
    }
}

#[derive(Debug, Clone)]
pub struct GrassmannPoint {
    pub t: f64,
    pub zeta: Multivector,
    /// Even, self-conjugate phase with real body.
    pub phase: Multivector,
}

impl GrassmannPoint {
    /// `e^{−iφ}|ζ⟩`, the Schrödinger solution this point describes.
    pub fn state(&self) -> Result<FermionState> {
        let rotation = self.phase.scale(MINUS_I).exponential();
        Ok(make_coherent(&self.zeta)?.left_mul(&rotation))
    }
}

#[derive(Debug, Clone)]
pub struct GrassmannPath {
    pub samples: Vec<GrassmannPoint>,
    pub step_deviation: f64,
}

/// Integrates `iζ̇ = ωζ − η` and `φ̇ = δ − ½(ζ*η + η*ζ)` from `ζ(0) = ζ0`, `φ(0) = 0`.
///
/// `eta` must stay odd and linear so that `ζ(t)` stays linear too.
pub fn integrate_grassmann_law<W, E, D>(
    omega: W,
    eta: E,
    delta: D,
    zeta0: &Multivector,
    grid: &TimeGrid,
) -> Result<GrassmannPath>
where
    W: Fn(f64) -> f64,
    E: Fn(f64) -> Multivector,
    D: Fn(f64) -> Multivector,
{
    if !zeta0.is_odd_linear() {
        return Err(Error::NotOddLinear);
    }
    let gens = zeta0.generators().clone();
    let mut rhs = |t: f64, y: &LawState| -> Result<LawState> {
        let e = eta(t);
        let zeta_dot = (&y.zeta * omega(t) - &e).scale(MINUS_I);
        let cross = &y.zeta.conjugate() * &e + &e.conjugate() * &y.zeta;
        let phase_dot = delta(t) - &cross * 0.5;
        Ok(LawState { zeta: zeta_dot, phase: phase_dot })
    };
    let start = LawState { zeta: zeta0.clone(), phase: Multivector::zero(&gens) };
    let mut samples = Vec::new();
    let (_, step_deviation) = integrate_checked(&mut rhs, &start, grid, |k, t, y| {
        if grid.is_sample(k) {
            if !y.zeta.is_odd_linear() {
                return Err(Error::NotDegreeOne);
            }
            samples.push(GrassmannPoint { t, zeta: y.zeta.clone(), phase: y.phase.clone() });
        }
        Ok(())
    })?;
    Ok(GrassmannPath { samples, step_deviation })
}

/// [`integrate_grassmann_law`] driven by a Grassmann-kind [`HamiltonianSpec`].
pub fn evolve_grassmann_classical(
    spec: &HamiltonianSpec,
    zeta0: &Multivector,
    grid: &TimeGrid,
) -> Result<GrassmannPath> {
    if spec.kind != SystemKind::Grassmann {
        return Err(Error::WrongKind);
    }
    let gens: Arc<GeneratorSet> = zeta0.generators().clone();
    let pair = spec.eta_pair.ok_or(Error::WrongKind)?;
    if pair >= gens.pair_count() {
        return Err(Error::UnknownPair(pair));
    }
    let eta_bits = 0b11u32 << (2 * pair);
    if zeta0.terms().any(|(m, _)| m & eta_bits != 0) {
        return Err(Error::GeneratorCollision);
    }
    integrate_grassmann_law(
        |t| spec.omega.eval(t),
        |t| spec.eta(&gens, t).expect("pair checked above"),
        |t| Multivector::real(&gens, spec.scalar.eval(t)),
        zeta0,
        grid,
    )
}

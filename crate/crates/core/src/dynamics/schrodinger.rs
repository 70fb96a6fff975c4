//! Direct RK4 integration of `iψ̇ = H(t)ψ` in both Fock spaces.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::grid::{integrate_checked, OdeState, TimeGrid};
use super::{HamiltonianSpec, SystemKind};
use crate::boson::{BosonState, Ladder};
use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, FermionState};
use crate::grassmann::Multivector;

/// Largest `sup_norm(H† − H)` accepted by the fermion integrator.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest Fock-space tail mass tolerated during boson propagation.
pub const TAIL_GUARD: f64 = 1e-6;

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

impl OdeState for FermionState {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        FermionState {
            psi0: &self.psi0 + &(&k.psi0 * c),
            psi1: &self.psi1 + &(&k.psi1 * c),
        }
    }

    fn deviation(&self, other: &Self) -> f64 {
        self.distance(other)
    }
}

impl OdeState for BosonState {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        self.axpy(Complex64::new(c, 0.0), k)
    }

    fn deviation(&self, other: &Self) -> f64 {
        self.distance(other)
    }
}

#[derive(Debug, Clone)]
pub struct FermionSample {
    pub t: f64,
    pub state: FermionState,
    /// `None` when the vacuum amplitude has lost its body.
    pub eigenvalue: Option<Multivector>,
    /// Eigen-equation residual, infinite when no eigenvalue exists.
    pub residual: f64,
    /// `sup_norm(⟨ψ(t)|ψ(t)⟩ − ⟨ψ(0)|ψ(0)⟩)`
    pub norm_deviation: f64,
}

#[derive(Debug, Clone)]
pub struct FermionTrajectory {
    pub samples: Vec<FermionSample>,
    pub step_deviation: f64,
}

impl FermionTrajectory {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_deviation).fold(0.0, f64::max)
    }
}

/// Propagates `s0` under `h(t)`, sampling on `grid`.
///
/// `h` is checked for self-adjointness at every grid step.
pub fn evolve_schrodinger_fermion<H>(h: H, s0: &FermionState, grid: &TimeGrid) -> Result<FermionTrajectory>
where
    H: Fn(f64) -> Result<FermionOperator>,
{
    let norm0 = s0.inner_product(s0)?;
    let mut rhs = |t: f64, y: &FermionState| Ok(h(t)?.apply(y)?.scale(MINUS_I));
    let mut samples = Vec::new();
    let (_, step_deviation) = integrate_checked(&mut rhs, s0, grid, |k, t, y| {
        let deviation = h(t)?.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { t, deviation });
        }
        if grid.is_sample(k) {
            let (eigenvalue, residual) = match y.extract_eigenvalue() {
                Ok(pair) => (Some(pair.value), pair.residual),
                Err(_) => (None, f64::INFINITY),
            };
            let norm_deviation = y.inner_product(y)?.distance(&norm0);
            samples.push(FermionSample { t, state: y.clone(), eigenvalue, residual, norm_deviation });
        }
        Ok(())
    })?;
    Ok(FermionTrajectory { samples, step_deviation })
}

#[derive(Debug, Clone)]
pub struct BosonSample {
    pub t: f64,
    pub state: BosonState,
    /// `⟨a⟩`, the eigenvalue candidate.
    pub mean_lower: Complex64,
    /// `‖(a − ⟨a⟩)ψ‖ / ‖ψ‖`
    pub residual: f64,
    /// `|‖ψ(t)‖² − ‖ψ(0)‖²|`
    pub norm_deviation: f64,
    pub tail_mass: f64,
}

#[derive(Debug, Clone)]
pub struct BosonTrajectory {
    pub samples: Vec<BosonSample>,
    pub step_deviation: f64,
}

impl BosonTrajectory {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_deviation).fold(0.0, f64::max)
    }
}

/// `H(t)ψ` for the boson Hamiltonian `ω a†a + f a† + f* a + g`.
pub fn apply_boson_hamiltonian(spec: &HamiltonianSpec, t: f64, psi: &BosonState) -> BosonState {
    let f = spec.forcing.eval(t);
    psi.apply_ladder(Ladder::Number)
        .scale(Complex64::new(spec.omega.eval(t), 0.0))
        .axpy(f, &psi.apply_ladder(Ladder::Raise))
        .axpy(f.conj(), &psi.apply_ladder(Ladder::Lower))
        .axpy(Complex64::new(spec.scalar.eval(t), 0.0), psi)
}

/// Propagates `s0` in the truncated Fock space; fails with
/// [`Error::TruncationBreach`] once the tail mass exceeds [`TAIL_GUARD`].
pub fn evolve_schrodinger_boson(spec: &HamiltonianSpec, s0: &BosonState, grid: &TimeGrid) -> Result<BosonTrajectory> {
    if spec.kind != SystemKind::Boson {
        return Err(Error::WrongKind);
    }
    let norm0 = s0.norm_sqr();
    let mut rhs = |t: f64, y: &BosonState| Ok(apply_boson_hamiltonian(spec, t, y).scale(MINUS_I));
    let mut samples = Vec::new();
    let (_, step_deviation) = integrate_checked(&mut rhs, s0, grid, |k, t, y| {
        let tail = y.tail_mass();
        if tail > TAIL_GUARD {
            return Err(Error::TruncationBreach { t, tail });
        }
        if grid.is_sample(k) {
            let mean_lower = y.mean_lower();
            samples.push(BosonSample {
                t,
                state: y.clone(),
                mean_lower,
                residual: y.eigen_residual(mean_lower),
                norm_deviation: (y.norm_sqr() - norm0).abs(),
                tail_mass: tail,
            });
        }
        Ok(())
    })?;
    Ok(BosonTrajectory { samples, step_deviation })
}

//! Time propagation for the boson, fermion and Grassmann-forced fermion
//! oscillators, together with their ladder invariants.

use alloc::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{Basis, FermionOperator};
use crate::grassmann::{GeneratorSet, Multivector};

pub mod classical;
pub mod coefficient;
pub mod grid;
pub mod invariant;
pub mod nu;
pub mod schrodinger;

pub use classical::{
    evolve_classical_boson, evolve_grassmann_classical, integrate_grassmann_law, ClassicalBosonPath,
    GrassmannPath, GrassmannPoint,
};
pub use coefficient::{CoefficientFn, ComplexCoefficient, Term};
pub use grid::{TimeGrid, DEFAULT_DT, DEFAULT_STRIDE, STEP_TOL};
pub use invariant::{fd_order_ratio, invariant_residual, residual_refinement_ratio};
pub use nu::{
    boson_ladder_invariants, build_ladder_invariant, evolve_nu_system, fermion_ladder_invariants,
    LadderInvariants, NuState, NuTrajectory,
};
pub use schrodinger::{
    evolve_schrodinger_boson, evolve_schrodinger_fermion, BosonSample, BosonTrajectory, FermionSample,
    FermionTrajectory,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// `ω a†a + f a† + f* a + g`
    Boson,
    /// `ω b†b + f b† + f* b + g` with complex `f`
    Fermion,
    /// `ω b†b + η b† − η* b + δ` with odd `η = h(t)·g_k`
    Grassmann,
}

/// Coefficient functions of one of the three oscillator families.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub kind: SystemKind,
    pub omega: CoefficientFn,
    /// `f` for the boson and fermion kinds, the amplitude `h` of `η` otherwise.
    pub forcing: ComplexCoefficient,
    /// `g` for the boson and fermion kinds, the body of `δ` otherwise.
    pub scalar: CoefficientFn,
    /// Generator pair carrying `η` (Grassmann kind only).
    pub eta_pair: Option<usize>,
}

impl HamiltonianSpec {
    pub fn boson(omega: CoefficientFn, f: ComplexCoefficient, g: CoefficientFn) -> Self {
        HamiltonianSpec { kind: SystemKind::Boson, omega, forcing: f, scalar: g, eta_pair: None }
    }

    pub fn fermion(omega: CoefficientFn, f: ComplexCoefficient, g: CoefficientFn) -> Self {
        HamiltonianSpec { kind: SystemKind::Fermion, omega, forcing: f, scalar: g, eta_pair: None }
    }

    pub fn grassmann(omega: CoefficientFn, h: ComplexCoefficient, eta_pair: usize, delta: CoefficientFn) -> Self {
        HamiltonianSpec {
            kind: SystemKind::Grassmann,
            omega,
            forcing: h,
            scalar: delta,
            eta_pair: Some(eta_pair),
        }
    }

    /// `η(t) = h(t)·g_k` for the Grassmann kind.
    pub fn eta(&self, gens: &Arc<GeneratorSet>, t: f64) -> Result<Multivector> {
        let pair = match (self.kind, self.eta_pair) {
            (SystemKind::Grassmann, Some(k)) => k,
            _ => return Err(Error::WrongKind),
        };
        if pair >= gens.pair_count() {
            return Err(Error::UnknownPair(pair));
        }
        Ok(Multivector::generator(gens, 2 * pair).scale(self.forcing.eval(t)))
    }

    /// The fermion-sector Hamiltonian at time `t`.
    pub fn fermion_operator(&self, gens: &Arc<GeneratorSet>, t: f64) -> Result<FermionOperator> {
        let (c_raise, c_lower) = match self.kind {
            SystemKind::Fermion => {
                let f = self.forcing.eval(t);
                (Multivector::scalar(gens, f), Multivector::scalar(gens, f.conj()))
            }
            SystemKind::Grassmann => {
                let eta = self.eta(gens, t)?;
                let lower = -eta.conjugate();
                (eta, lower)
            }
            SystemKind::Boson => return Err(Error::WrongKind),
        };
        FermionOperator::from_parts(
            Multivector::real(gens, self.scalar.eval(t)),
            c_lower,
            c_raise,
            Multivector::real(gens, self.omega.eval(t)),
        )
    }
}

/// `ω b†b + g` as an operator, used for the coherence-preserving family.
pub fn free_fermion_operator(gens: &Arc<GeneratorSet>, omega: f64, g: f64) -> FermionOperator {
    &FermionOperator::basis(gens, Basis::Number).scale(Complex64::new(omega, 0.0))
        + &FermionOperator::identity(gens).scale(Complex64::new(g, 0.0))
}

//! Finite-difference check of the invariant condition `∂B/∂t + i[H, B] = 0`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::coefficient::{CoefficientFn, ComplexCoefficient};
use super::grid::{phase_integrals, TimeGrid};
use crate::boson::BosonLadderInvariant;
use crate::error::{Error, Result};
use crate::fermion::FermionOperator;
use crate::grassmann::GeneratorSet;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this both residuals are treated as round-off and the order test is skipped.
pub const RESIDUAL_FLOOR: f64 = 1e-13;

/// An operator family whose time derivative can be approximated from samples.
pub trait Invariant: Sized {
    type Hamiltonian;
    /// `Σ wᵢ·xᵢ`
    fn combine(terms: &[(f64, &Self)]) -> Self;
    /// Size of `dot + i[H, self]`.
    fn defect(&self, dot: &Self, h: &Self::Hamiltonian) -> Result<f64>;
}

impl Invariant for FermionOperator {
    type Hamiltonian = FermionOperator;

    fn combine(terms: &[(f64, &Self)]) -> Self {
        let mut acc = FermionOperator::zero(terms[0].1.generators());
        for (w, op) in terms {
            acc = &acc + &op.scale(Complex64::new(*w, 0.0));
        }
        acc
    }

    fn defect(&self, dot: &Self, h: &FermionOperator) -> Result<f64> {
        Ok((dot + &h.commutator(self)?.scale(I)).sup_norm())
    }
}

/// `ω(t)` and `f(t)` of the boson Hamiltonian at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonCoefficients {
    pub omega: f64,
    pub f: Complex64,
}

impl Invariant for BosonLadderInvariant {
    type Hamiltonian = BosonCoefficients;

    fn combine(terms: &[(f64, &Self)]) -> Self {
        terms.iter().fold(
            BosonLadderInvariant { beta: Complex64::new(0.0, 0.0), gamma: Complex64::new(0.0, 0.0) },
            |acc, (w, x)| BosonLadderInvariant { beta: acc.beta + x.beta * *w, gamma: acc.gamma + x.gamma * *w },
        )
    }

    // i[H, βa + γ] = −iβω a − iβf
    fn defect(&self, dot: &Self, h: &BosonCoefficients) -> Result<f64> {
        let a_part = dot.beta - I * self.beta * h.omega;
        let c_part = dot.gamma - I * self.beta * h.f;
        Ok(a_part.norm().max(c_part.norm()))
    }
}

/// Largest invariant-condition defect over the grid samples.
///
/// Derivatives use centred differences in the interior and second-order
/// one-sided three-point formulas at both ends.
pub fn invariant_residual<B, H>(samples: &[B], h: H, grid: &TimeGrid) -> Result<f64>
where
    B: Invariant,
    H: Fn(f64) -> Result<B::Hamiltonian>,
{
    if grid.steps() % grid.stride() != 0 || samples.len() != grid.steps() / grid.stride() + 1 {
        return Err(Error::InvalidGrid);
    }
    let n = samples.len();
    if n < 3 {
        return Err(Error::GridTooCoarse { ratio: f64::NAN });
    }
    let spacing = grid.dt() * grid.stride() as f64;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        let dot = if k == 0 {
            B::combine(&[(-1.5, &samples[0]), (2.0, &samples[1]), (-0.5, &samples[2])])
        } else if k == n - 1 {
            B::combine(&[(1.5, &samples[k]), (-2.0, &samples[k - 1]), (0.5, &samples[k - 2])])
        } else {
            B::combine(&[(0.5, &samples[k + 1]), (-0.5, &samples[k - 1])])
        };
        let dot = B::combine(&[(1.0 / spacing, &dot)]);
        let t = grid.time(k * grid.stride());
        worst = worst.max(samples[k].defect(&dot, &h(t)?)?);
    }
    Ok(worst)
}

/// Residuals on `grid` and on `grid.refined()`.
pub fn residual_refinement_ratio<B, F, H>(build: F, h: H, grid: &TimeGrid) -> Result<(f64, f64)>
where
    B: Invariant,
    F: Fn(&TimeGrid) -> Result<Vec<B>>,
    H: Fn(f64) -> Result<B::Hamiltonian>,
{
    let coarse = invariant_residual(&build(grid)?, &h, grid)?;
    let fine_grid = grid.refined();
    let fine = invariant_residual(&build(&fine_grid)?, &h, &fine_grid)?;
    Ok((coarse, fine))
}

/// Confirms second-order convergence of the finite-difference check on
/// `B = e^{iΩ}b`, an exact invariant of `ω(t) b†b`.
///
/// Returns the coarse/fine residual ratio, or [`Error::GridTooCoarse`] when it
/// falls outside `[3, 5]` above the round-off floor.
pub fn fd_order_ratio(omega: &CoefficientFn, grid: &TimeGrid) -> Result<f64> {
    let gens = GeneratorSet::empty();
    let build = |g: &TimeGrid| -> Result<Vec<FermionOperator>> {
        let q = phase_integrals(omega, &ComplexCoefficient::zero(), g);
        let b = FermionOperator::lower(&gens);
        Ok(g.sample_steps().map(|k| b.scale(Complex64::from_polar(1.0, q.omega[k]))).collect())
    };
    let h = |t: f64| Ok(super::free_fermion_operator(&gens, omega.eval(t), 0.0));
    let (coarse, fine) = residual_refinement_ratio(build, h, grid)?;
    if coarse < RESIDUAL_FLOOR && fine < RESIDUAL_FLOOR {
        return Ok(4.0);
    }
    let ratio = coarse / fine;
    if !(3.0..=5.0).contains(&ratio) {
        return Err(Error::GridTooCoarse { ratio });
    }
    Ok(ratio)
}

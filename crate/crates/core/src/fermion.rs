//! One-mode fermion Fock space with Grassmann-valued coefficients.
//!
//! Operators are expanded as `c_I·I + c_-·b + c_+·b† + c_n·b†b` with the
//! coefficients written to the left. States are `ψ0|0⟩ + ψ1|1⟩`, again with
//! left coefficients. Whenever an odd operator (`b` or `b†`) moves past a
//! coefficient, the coefficient picks up the grade involution, which is how
//! `bζ = −ζb` is realised.

use alloc::sync::Arc;
use core::ops::{Add, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::{GeneratorSet, Multivector, PRUNE_TOL};

/// Tolerance for the ladder-operator algebra check in [`make_displacement`].
pub const LADDER_TOL: f64 = 1e-10;

/// Basis element of the one-mode fermion operator algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Identity = 0,
    /// `b`
    Lower = 1,
    /// `b†`
    Raise = 2,
    /// `b†b`
    Number = 3,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Identity, Basis::Lower, Basis::Raise, Basis::Number];

    pub fn is_odd(self) -> bool {
        matches!(self, Basis::Lower | Basis::Raise)
    }

    pub fn adjoint(self) -> Basis {
        match self {
            Basis::Lower => Basis::Raise,
            Basis::Raise => Basis::Lower,
            other => other,
        }
    }

    /// Expansion of `self · rhs` over the basis.
    fn product(self, rhs: Basis) -> [f64; 4] {
        use Basis::*;
        let mut out = [0.0; 4];
        match (self, rhs) {
            (Identity, x) | (x, Identity) => out[x as usize] = 1.0,
            (Lower, Raise) => {
                out[Identity as usize] = 1.0;
                out[Number as usize] = -1.0;
            }
            (Lower, Number) => out[Lower as usize] = 1.0,
            (Raise, Lower) => out[Number as usize] = 1.0,
            (Number, Raise) => out[Raise as usize] = 1.0,
            (Number, Number) => out[Number as usize] = 1.0,
            (Lower, Lower) | (Raise, Raise) | (Raise, Number) | (Number, Lower) => {}
        }
        out
    }
}

/// Sign-corrected coefficient when an operator of the given parity passes `c`.
fn pass(c: &Multivector, odd_operator: bool) -> Multivector {
    if odd_operator {
        c.grade_involution()
    } else {
        c.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    coeffs: [Multivector; 4],
}

impl FermionOperator {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        let z = Multivector::zero(gens);
        FermionOperator {
            coeffs: [z.clone(), z.clone(), z.clone(), z],
        }
    }

    pub fn basis(gens: &Arc<GeneratorSet>, element: Basis) -> Self {
        let mut out = Self::zero(gens);
        out.coeffs[element as usize] = Multivector::one(gens);
        out
    }

    pub fn identity(gens: &Arc<GeneratorSet>) -> Self {
        Self::basis(gens, Basis::Identity)
    }

    /// `b`
    pub fn lower(gens: &Arc<GeneratorSet>) -> Self {
        Self::basis(gens, Basis::Lower)
    }

    /// `b†`
    pub fn raise(gens: &Arc<GeneratorSet>) -> Self {
        Self::basis(gens, Basis::Raise)
    }

    /// `b†b`
    pub fn number(gens: &Arc<GeneratorSet>) -> Self {
        Self::basis(gens, Basis::Number)
    }

    /// `c_I·I + c_-·b + c_+·b† + c_n·b†b`.
    pub fn from_parts(
        c_identity: Multivector,
        c_lower: Multivector,
        c_raise: Multivector,
        c_number: Multivector,
    ) -> Result<Self> {
        let gens = c_identity.generators().clone();
        for c in [&c_lower, &c_raise, &c_number] {
            if c.generators() != &gens {
                return Err(Error::MismatchedGenerators);
            }
        }
        Ok(FermionOperator {
            coeffs: [c_identity, c_lower, c_raise, c_number],
        })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        self.coeffs[0].generators()
    }

    pub fn coeff(&self, element: Basis) -> &Multivector {
        &self.coeffs[element as usize]
    }

    /// `c · self`.
    pub fn left_mul(&self, c: &Multivector) -> Self {
        FermionOperator {
            coeffs: self.coeffs.clone().map(|x| c * &x),
        }
    }

    /// `self · c`, i.e. the operator followed by multiplication with `c·I`.
    pub fn right_mul(&self, c: &Multivector) -> Self {
        let mut out = self.clone();
        for e in Basis::ALL {
            out.coeffs[e as usize] = &self.coeffs[e as usize] * &pass(c, e.is_odd());
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FermionOperator {
            coeffs: self.coeffs.clone().map(|x| x.scale(c)),
        }
    }

    /// Graded operator product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.generators() != rhs.generators() {
            return Err(Error::MismatchedGenerators);
        }
        let mut out = Self::zero(self.generators());
        for left in Basis::ALL {
            let c1 = &self.coeffs[left as usize];
            if c1.sup_norm() == 0.0 {
                continue;
            }
            for right in Basis::ALL {
                let c2 = &rhs.coeffs[right as usize];
                if c2.sup_norm() == 0.0 {
                    continue;
                }
                let c = c1 * &pass(c2, left.is_odd());
                for (k, w) in left.product(right).into_iter().enumerate() {
                    if w != 0.0 {
                        out.coeffs[k] += &(&c * w);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, rhs] = self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.compose(rhs)? - &rhs.compose(self)?)
    }

    /// `{self, rhs} = self·rhs + rhs·self`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        Ok(&self.compose(rhs)? + &rhs.compose(self)?)
    }

    /// `(c·O)† = O†·c* = (−1)^{p(c)p(O)} c*·O†`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.generators());
        for e in Basis::ALL {
            let c = self.coeffs[e as usize].conjugate();
            out.coeffs[e.adjoint() as usize] = pass(&c, e.is_odd());
        }
        out
    }

    /// `sup_norm(H† − H)`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.adjoint().distance(self)
    }

    /// Largest coefficient magnitude over all basis components.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().map(Multivector::sup_norm).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, state: &FermionState) -> Result<FermionState> {
        if self.generators() != state.generators() {
            return Err(Error::MismatchedGenerators);
        }
        let [c_id, c_lo, c_hi, c_n] = &self.coeffs;
        let p0 = &state.psi0;
        let p1 = &state.psi1;
        // b|1⟩ = |0⟩, b†|0⟩ = |1⟩, b†b|1⟩ = |1⟩.
        let psi0 = c_id * p0 + c_lo * &p1.grade_involution();
        let psi1 = c_id * p1 + c_hi * &p0.grade_involution() + c_n * p1;
        Ok(FermionState { psi0, psi1 })
    }

    /// Terminating power series `Σ oᵏ/k!`.
    ///
    /// The body of the identity coefficient is split off as a commuting
    /// scalar factor; what remains has to be nilpotent within `2m + 3` powers.
    pub fn exp_operator(&self) -> Result<Self> {
        let gens = self.generators().clone();
        let shift = self.coeffs[0].body();
        let mut rest = self.clone();
        rest.coeffs[0].coefficients_mut()[0] = Complex64::new(0.0, 0.0);

        let mut term = Self::identity(&gens);
        let mut acc = term.clone();
        let max_power = gens.len() + 3;
        for k in 1..=max_power {
            term = term.compose(&rest)?.scale(Complex64::new(1.0 / k as f64, 0.0));
            if term.sup_norm() <= PRUNE_TOL {
                return Ok(acc.scale(shift.exp()));
            }
            acc = &acc + &term;
        }
        Err(Error::NonTerminatingSeries)
    }

    /// Sup-norms of `{L, L†} − I` and `L²`.
    pub fn ladder_defects(&self) -> Result<(f64, f64)> {
        let gens = self.generators().clone();
        let anti = &self.anticommutator(&self.adjoint())? - &Self::identity(&gens);
        let square = self.compose(self)?;
        Ok((anti.sup_norm(), square.sup_norm()))
    }
}

impl Add for &FermionOperator {
    type Output = FermionOperator;
    fn add(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }
}

impl Sub for &FermionOperator {
    type Output = FermionOperator;
    fn sub(self, rhs: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

/// `ψ0|0⟩ + ψ1|1⟩` with Grassmann amplitudes on the left.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionState {
    pub psi0: Multivector,
    pub psi1: Multivector,
}

impl FermionState {
    pub fn new(psi0: Multivector, psi1: Multivector) -> Result<Self> {
        if psi0.generators() != psi1.generators() {
            return Err(Error::MismatchedGenerators);
        }
        Ok(FermionState { psi0, psi1 })
    }

    pub fn vacuum(gens: &Arc<GeneratorSet>) -> Self {
        FermionState {
            psi0: Multivector::one(gens),
            psi1: Multivector::zero(gens),
        }
    }

    /// `|1⟩ = b†|0⟩`.
    pub fn excited(gens: &Arc<GeneratorSet>) -> Self {
        FermionState {
            psi0: Multivector::zero(gens),
            psi1: Multivector::one(gens),
        }
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        self.psi0.generators()
    }

    /// `λ · self`.
    pub fn left_mul(&self, lambda: &Multivector) -> Self {
        FermionState {
            psi0: lambda * &self.psi0,
            psi1: lambda * &self.psi1,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FermionState {
            psi0: self.psi0.scale(c),
            psi1: self.psi1.scale(c),
        }
    }

    /// `⟨self|other⟩ = ψ0* φ0 + ĝ(ψ1* φ1)`, where `ĝ` is the grade involution
    /// picked up by passing the odd bra `⟨1|`.
    pub fn inner_product(&self, other: &Self) -> Result<Multivector> {
        Ok(self.psi0.conjugate().multiply(&other.psi0)?
            + self.psi1.conjugate().multiply(&other.psi1)?.grade_involution())
    }

    /// Body of `⟨ψ|ψ⟩`.
    pub fn norm_body(&self) -> f64 {
        self.inner_product(self)
            .map(|n| n.body().re)
            .expect("state components share generators")
    }

    pub fn sup_norm(&self) -> f64 {
        self.psi0.sup_norm().max(self.psi1.sup_norm())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.psi0.distance(&other.psi0).max(self.psi1.distance(&other.psi1))
    }

    /// Eigenvalue of `b`, if this is a coherent state, with the eigen-equation residual.
    pub fn extract_eigenvalue(&self) -> Result<Eigenpair> {
        let inv = self.psi0.invert().map_err(|_| Error::VacuumAmplitudeZero)?;
        let value = self.psi1.grade_involution().multiply(&inv)?;
        let b = FermionOperator::lower(self.generators());
        let lhs = b.apply(self)?;
        let rhs = self.left_mul(&value);
        let residual = lhs.distance(&rhs) / self.norm_body();
        Ok(Eigenpair { value, residual })
    }
}

impl Add for &FermionState {
    type Output = FermionState;
    fn add(self, rhs: &FermionState) -> FermionState {
        FermionState {
            psi0: &self.psi0 + &rhs.psi0,
            psi1: &self.psi1 + &rhs.psi1,
        }
    }
}

impl Sub for &FermionState {
    type Output = FermionState;
    fn sub(self, rhs: &FermionState) -> FermionState {
        FermionState {
            psi0: &self.psi0 - &rhs.psi0,
            psi1: &self.psi1 - &rhs.psi1,
        }
    }
}

/// Result of [`FermionState::extract_eigenvalue`].
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: Multivector,
    /// `sup_norm(b·s − λ·s) / body⟨s|s⟩`
    pub residual: f64,
}

impl Eigenpair {
    pub fn is_coherent(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

fn require_odd_linear(zeta: &Multivector) -> Result<()> {
    if zeta.is_odd_linear() {
        Ok(())
    } else {
        Err(Error::NotOddLinear)
    }
}

/// `|ζ⟩ = exp(−½ζ*ζ)(|0⟩ − ζ|1⟩)`.
pub fn make_coherent(zeta: &Multivector) -> Result<FermionState> {
    require_odd_linear(zeta)?;
    let psi0 = (&zeta.conjugate() * zeta).scale(Complex64::new(-0.5, 0.0)).exponential();
    let psi1 = -(&psi0 * zeta);
    Ok(FermionState { psi0, psi1 })
}

/// `b†ζ − ζ*b`, the generator of the displacement `D(ζ)`.
pub fn displacement_generator(zeta: &Multivector, ladder: &FermionOperator) -> Result<FermionOperator> {
    require_odd_linear(zeta)?;
    Ok(&ladder.adjoint().right_mul(zeta) - &ladder.left_mul(&zeta.conjugate()))
}

/// `D(ζ, L) = exp(L†ζ − ζ*L)` for a fermion ladder operator `L`.
pub fn make_displacement(zeta: &Multivector, ladder: &FermionOperator) -> Result<FermionOperator> {
    require_odd_linear(zeta)?;
    let (anticommutator, square) = ladder.ladder_defects()?;
    if anticommutator > LADDER_TOL || square > LADDER_TOL {
        return Err(Error::NotALadder { anticommutator, square });
    }
    displacement_generator(zeta, ladder)?.exp_operator()
}

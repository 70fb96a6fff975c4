//! Linear ladder invariants `B(t)` with `B(0) = b` (or `a`).
//!
//! The fermion invariant with a complex scalar forcing mixes `b`, `b†` and
//! `n` and is carried by three complex functions `ν₋, ν₊, ν₃`:
//!
//! `B = ν₋ b + ν₊ b† + ν₃ (n − ½)`
//!
//! with `ν̇₋ = i(ων₋ − f*ν₃)`, `ν̇₊ = i(fν₃ − ων₊)`, `ν̇₃ = 2i(f*ν₊ − fν₋)`.
//! The boson and Grassmann-forced invariants stay of the form `β·b + γ`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::grid::{integrate_checked, phase_integrals, OdeState, TimeGrid};
use super::{HamiltonianSpec, SystemKind};
use crate::boson::BosonLadderInvariant;
use crate::error::{Error, Result};
use crate::fermion::{Basis, FermionOperator};
use crate::grassmann::{GeneratorSet, Multivector};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuState {
    pub nu_minus: Complex64,
    pub nu_plus: Complex64,
    pub nu_3: Complex64,
}

impl NuState {
    /// `B(0) = b`.
    pub const INITIAL: NuState = NuState {
        nu_minus: Complex64::new(1.0, 0.0),
        nu_plus: Complex64::new(0.0, 0.0),
        nu_3: Complex64::new(0.0, 0.0),
    };

    /// `|ν₋|² + |ν₊|² + ½|ν₃|²`, equal to 1 along exact solutions.
    pub fn conserved(&self) -> f64 {
        self.nu_minus.norm_sqr() + self.nu_plus.norm_sqr() + 0.5 * self.nu_3.norm_sqr()
    }

    /// Time derivative for frequency `omega` and forcing `f`.
    pub fn derivative(&self, omega: f64, f: Complex64) -> NuState {
        NuState {
            nu_minus: I * (self.nu_minus * omega - self.nu_3 * f.conj()),
            nu_plus: I * (self.nu_3 * f - self.nu_plus * omega),
            nu_3: I * 2.0 * (self.nu_plus * f.conj() - self.nu_minus * f),
        }
    }

    pub fn to_operator(&self, gens: &Arc<GeneratorSet>) -> FermionOperator {
        let c = |z: Complex64| Multivector::scalar(gens, z);
        FermionOperator::from_parts(
            c(self.nu_3 * -0.5),
            c(self.nu_minus),
            c(self.nu_plus),
            c(self.nu_3),
        )
        .expect("scalar coefficients share generators")
    }

    /// `(ν₋, ν₊, ν₃)` read back from an operator with scalar coefficients.
    pub fn from_operator(op: &FermionOperator) -> NuState {
        NuState {
            nu_minus: op.coeff(Basis::Lower).body(),
            nu_plus: op.coeff(Basis::Raise).body(),
            nu_3: op.coeff(Basis::Number).body(),
        }
    }
}

impl OdeState for NuState {
    fn add_scaled(&self, c: f64, k: &Self) -> Self {
        NuState {
            nu_minus: self.nu_minus + k.nu_minus * c,
            nu_plus: self.nu_plus + k.nu_plus * c,
            nu_3: self.nu_3 + k.nu_3 * c,
        }
    }

    fn deviation(&self, other: &Self) -> f64 {
        (self.nu_minus - other.nu_minus)
            .norm()
            .max((self.nu_plus - other.nu_plus).norm())
            .max((self.nu_3 - other.nu_3).norm())
    }
}

#[derive(Debug, Clone)]
pub struct NuTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<NuState>,
    pub step_deviation: f64,
}

impl NuTrajectory {
    /// Largest `|C(t) − 1|` over the samples.
    pub fn max_conservation_drift(&self) -> f64 {
        self.states.iter().map(|s| (s.conserved() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Integrates the `ν` system for a fermion-kind spec from `B(0) = b`.
pub fn evolve_nu_system(spec: &HamiltonianSpec, grid: &TimeGrid) -> Result<NuTrajectory> {
    if spec.kind != SystemKind::Fermion {
        return Err(Error::WrongKind);
    }
    let mut rhs = |t: f64, y: &NuState| Ok(y.derivative(spec.omega.eval(t), spec.forcing.eval(t)));
    let mut times = Vec::new();
    let mut states = Vec::new();
    let (_, step_deviation) = integrate_checked(&mut rhs, &NuState::INITIAL, grid, |k, t, y| {
        if grid.is_sample(k) {
            times.push(t);
            states.push(*y);
        }
        Ok(())
    })?;
    Ok(NuTrajectory { times, states, step_deviation })
}

/// `A(t) = e^{iΩ}a + iΓ` on the grid samples.
pub fn boson_ladder_invariants(spec: &HamiltonianSpec, grid: &TimeGrid) -> Result<Vec<BosonLadderInvariant>> {
    if spec.kind != SystemKind::Boson {
        return Err(Error::WrongKind);
    }
    let q = phase_integrals(&spec.omega, &spec.forcing, grid);
    Ok(grid
        .sample_steps()
        .map(|k| BosonLadderInvariant {
            beta: Complex64::from_polar(1.0, q.omega[k]),
            gamma: I * q.forcing[k],
        })
        .collect())
}

/// Fermion-sector invariants on the grid samples.
///
/// Scalar forcing goes through the `ν` system; Grassmann forcing gives
/// `B = e^{iΩ}b − i(∫h e^{iΩ})·g_k`.
pub fn fermion_ladder_invariants(
    spec: &HamiltonianSpec,
    gens: &Arc<GeneratorSet>,
    grid: &TimeGrid,
) -> Result<Vec<FermionOperator>> {
    match spec.kind {
        SystemKind::Fermion => Ok(evolve_nu_system(spec, grid)?
            .states
            .iter()
            .map(|s| s.to_operator(gens))
            .collect()),
        SystemKind::Grassmann => {
            let pair = spec.eta_pair.ok_or(Error::WrongKind)?;
            if pair >= gens.pair_count() {
                return Err(Error::UnknownPair(pair));
            }
            let g = Multivector::generator(gens, 2 * pair);
            let q = phase_integrals(&spec.omega, &spec.forcing, grid);
            let b = FermionOperator::lower(gens);
            let id = FermionOperator::identity(gens);
            Ok(grid
                .sample_steps()
                .map(|k| {
                    let gamma = g.scale(-I * q.forcing[k]);
                    &b.scale(Complex64::from_polar(1.0, q.omega[k])) + &id.left_mul(&gamma)
                })
                .collect())
        }
        SystemKind::Boson => Err(Error::WrongKind),
    }
}

/// Invariants of either sector, sampled on a grid.
#[derive(Debug, Clone)]
pub enum LadderInvariants {
    Boson(Vec<BosonLadderInvariant>),
    Fermion(Vec<FermionOperator>),
}

impl LadderInvariants {
    pub fn len(&self) -> usize {
        match self {
            LadderInvariants::Boson(v) => v.len(),
            LadderInvariants::Fermion(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dispatches on `spec.kind`; `gens` is ignored for the boson.
pub fn build_ladder_invariant(
    spec: &HamiltonianSpec,
    gens: &Arc<GeneratorSet>,
    grid: &TimeGrid,
) -> Result<LadderInvariants> {
    match spec.kind {
        SystemKind::Boson => boson_ladder_invariants(spec, grid).map(LadderInvariants::Boson),
        _ => fermion_ladder_invariants(spec, gens, grid).map(LadderInvariants::Fermion),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::coefficient::{CoefficientFn, ComplexCoefficient};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `exp(−iHt)` for a 2×2 Hermitian `H` via its eigen-decomposition.
    fn expm_2x2(h: [[Complex64; 2]; 2], t: f64) -> [[Complex64; 2]; 2] {
        let a = h[0][0].re;
        let d = h[1][1].re;
        let b = h[0][1];
        let mean = 0.5 * (a + d);
        let half = 0.5 * (a - d);
        let r = (half * half + b.norm_sqr()).sqrt();
        let phase = Complex64::from_polar(1.0, -mean * t);
        let (cs, sn) = ((r * t).cos(), (r * t).sin());
        let s = if r > 0.0 { sn / r } else { t };
        // exp(−i(K)t) with K traceless = cos(rt) − i sin(rt) K/r
        let k = [[c(half, 0.0), b], [h[1][0], c(-half, 0.0)]];
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { 1.0 } else { 0.0 };
                out[i][j] = phase * (c(cs * id, 0.0) - I * k[i][j] * s);
            }
        }
        out
    }

    fn mul(x: [[Complex64; 2]; 2], y: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        out
    }

    fn dagger(x: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
    }

    #[test]
    fn nu_system_matches_matrix_exponential() {
        let (omega, f, g) = (1.3, c(0.4, -0.25), 0.2);
        let spec = HamiltonianSpec::fermion(
            CoefficientFn::constant(omega),
            ComplexCoefficient::constant(f),
            CoefficientFn::constant(g),
        );
        let grid = TimeGrid::new(2.0, 1e-3, 500).unwrap();
        let traj = evolve_nu_system(&spec, &grid).unwrap();
        // Basis {|0⟩, |1⟩}: H|0⟩ = g|0⟩ + f|1⟩, H|1⟩ = f*|0⟩ + (ω+g)|1⟩.
        let h = [[c(g, 0.0), f.conj()], [f, c(omega + g, 0.0)]];
        let b = [[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        for (t, s) in traj.times.iter().zip(&traj.states) {
            let u = expm_2x2(h, *t);
            let bt = mul(mul(u, b), dagger(u));
            assert!((s.nu_minus - bt[0][1]).norm() < 1e-9, "t = {t}");
            assert!((s.nu_plus - bt[1][0]).norm() < 1e-9);
            assert!((s.nu_3 - (bt[1][1] - bt[0][0])).norm() < 1e-9);
            assert!((bt[0][0] + bt[1][1]).norm() < 1e-12);
        }
        assert!(traj.max_conservation_drift() < 1e-10);
    }

    #[test]
    fn unforced_nu_is_a_phase() {
        let spec = HamiltonianSpec::fermion(CoefficientFn::constant(2.0), ComplexCoefficient::zero(), CoefficientFn::zero());
        let grid = TimeGrid::new(1.0, 1e-3, 100).unwrap();
        let traj = evolve_nu_system(&spec, &grid).unwrap();
        for (t, s) in traj.times.iter().zip(&traj.states) {
            assert!((s.nu_minus - Complex64::from_polar(1.0, 2.0 * t)).norm() < 1e-11);
            assert_eq!(s.nu_plus, c(0.0, 0.0));
            assert_eq!(s.nu_3, c(0.0, 0.0));
        }
    }

    #[test]
    fn operator_round_trip() {
        let gens = GeneratorSet::empty();
        let s = NuState { nu_minus: c(0.1, 0.2), nu_plus: c(-0.3, 0.0), nu_3: c(0.0, 0.5) };
        assert_eq!(NuState::from_operator(&s.to_operator(&gens)), s);
        assert_eq!(NuState::INITIAL.to_operator(&gens), FermionOperator::lower(&gens));
    }

    #[test]
    fn kind_dispatch() {
        let gens = GeneratorSet::new(&["zeta", "eta"]).unwrap();
        let grid = TimeGrid::new(1.0, 1e-2, 10).unwrap();
        let b = HamiltonianSpec::boson(CoefficientFn::constant(1.0), ComplexCoefficient::zero(), CoefficientFn::zero());
        assert_eq!(evolve_nu_system(&b, &grid).unwrap_err(), Error::WrongKind);
        assert!(matches!(build_ladder_invariant(&b, &gens, &grid).unwrap(), LadderInvariants::Boson(v) if v.len() == 11));
        let g = HamiltonianSpec::grassmann(CoefficientFn::constant(1.0), ComplexCoefficient::constant(c(0.5, 0.0)), 1, CoefficientFn::zero());
        let inv = fermion_ladder_invariants(&g, &gens, &grid).unwrap();
        assert_eq!(inv.len(), 11);
        assert_eq!(inv[0], FermionOperator::lower(&gens));
        for op in &inv {
            let (anti, square) = op.ladder_defects().unwrap();
            assert!(anti < 1e-12 && square < 1e-12);
        }
    }

    #[test]
    fn boson_invariant_constant_forcing() {
        // ω = 0: β = 1, γ = i f t
        let spec = HamiltonianSpec::boson(CoefficientFn::zero(), ComplexCoefficient::constant(c(0.3, 0.1)), CoefficientFn::zero());
        let grid = TimeGrid::new(2.0, 1e-2, 50).unwrap();
        let inv = boson_ladder_invariants(&spec, &grid).unwrap();
        for (t, a) in grid.sample_times().iter().zip(&inv) {
            assert!((a.beta - c(1.0, 0.0)).norm() < 1e-15);
            assert!((a.gamma - I * c(0.3, 0.1) * *t).norm() < 1e-13);
        }
    }
}

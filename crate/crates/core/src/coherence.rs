//! Coherence certification of states and trajectories, classification of
//! Hamiltonians, and reconstruction of Grassmann forcing from an eigenvalue path.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::boson::{make_coherent_boson, BosonState, DEFAULT_NMAX};
use crate::dynamics::grid::phase_integrals;
use crate::dynamics::{
    evolve_classical_boson, evolve_grassmann_classical, evolve_schrodinger_boson, evolve_schrodinger_fermion,
    integrate_grassmann_law, BosonTrajectory, CoefficientFn, ComplexCoefficient, FermionTrajectory, GrassmannPath,
    HamiltonianSpec, SystemKind, TimeGrid,
};
use crate::error::{Error, Result};
use crate::fermion::{make_coherent, FermionState};
use crate::grassmann::{GeneratorSet, Multivector};

/// Residual bound for a coherent fermion state (exact sector).
pub const FERMION_COHERENT_TOL: f64 = 1e-8;
/// Residual bound for a coherent boson state (truncated sector).
pub const BOSON_COHERENT_TOL: f64 = 1e-6;
/// `|f′(t)|` at or below this counts as zero forcing.
pub const ZERO_FORCING_TOL: f64 = 1e-12;
/// A residual above this is a visible loss of coherence.
pub const VISIBLE_BREAK_TOL: f64 = 1e-3;
/// Pass threshold for [`verify_trajectory`].
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Eigenvalue {
    Grassmann(Multivector),
    Complex(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    pub eigenvalue: Eigenvalue,
    pub residual: f64,
    pub is_coherent: bool,
}

/// States that can be tested for being eigenstates of the lowering operator.
pub trait Eigenstate {
    fn coherence_report(&self) -> Result<CoherenceReport>;
}

impl Eigenstate for FermionState {
    fn coherence_report(&self) -> Result<CoherenceReport> {
        let pair = self.extract_eigenvalue()?;
        Ok(CoherenceReport {
            is_coherent: pair.residual <= FERMION_COHERENT_TOL,
            residual: pair.residual,
            eigenvalue: Eigenvalue::Grassmann(pair.value),
        })
    }
}

impl Eigenstate for BosonState {
    /// Fails with [`Error::NotInvertible`] on the zero vector.
    fn coherence_report(&self) -> Result<CoherenceReport> {
        if !(self.norm_sqr() > 0.0) {
            return Err(Error::NotInvertible);
        }
        let lambda = self.mean_lower();
        let residual = self.eigen_residual(lambda);
        Ok(CoherenceReport {
            eigenvalue: Eigenvalue::Complex(lambda),
            residual,
            is_coherent: residual <= BOSON_COHERENT_TOL,
        })
    }
}

pub fn check_eigenstate<S: Eigenstate>(s: &S) -> Result<CoherenceReport> {
    s.coherence_report()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Preserving,
    NonPreserving,
}

#[derive(Debug, Clone)]
pub struct Classification {
    /// Verdict from the coefficient functions alone.
    pub verdict: Verdict,
    /// Verdict from propagating a coherent probe state.
    pub dynamic_verdict: Verdict,
    /// Largest eigenstate residual seen along the probe trajectory.
    pub max_residual: f64,
    /// First grid time with `|f′(t)| > ZERO_FORCING_TOL` (fermion kind).
    pub forcing_onset: Option<f64>,
    /// The eigenvalue law followed by the probe (Grassmann kind).
    pub law: Option<GrassmannPath>,
}

impl Classification {
    pub fn agrees(&self) -> bool {
        self.verdict == self.dynamic_verdict
    }
}

/// Generators and initial eigenvalue used to probe a fermion-sector spec.
pub fn probe_generators(spec: &HamiltonianSpec) -> Result<(Arc<GeneratorSet>, Multivector)> {
    match (spec.kind, spec.eta_pair) {
        (SystemKind::Grassmann, Some(eta)) => {
            let pairs = (eta + 1).max(2);
            let names: Vec<_> = (0..pairs)
                .map(|k| if k == eta { alloc::format!("eta{k}") } else { alloc::format!("zeta{k}") })
                .collect();
            let gens = GeneratorSet::new(&names)?;
            let zeta_pair = if eta == 0 { 1 } else { 0 };
            let zeta0 = Multivector::generator(&gens, 2 * zeta_pair).scale(Complex64::new(0.5, 0.0));
            Ok((gens, zeta0))
        }
        (SystemKind::Fermion, _) => {
            let gens = GeneratorSet::new(&["zeta"])?;
            let zeta0 = Multivector::generator(&gens, 0).scale(Complex64::new(0.5, 0.0));
            Ok((gens, zeta0))
        }
        _ => Err(Error::WrongKind),
    }
}

const PROBE_Z0: Complex64 = Complex64::new(0.5, 0.0);

/// Static verdict cross-checked by propagating a coherent probe on `grid`.
pub fn classify_hamiltonian(spec: &HamiltonianSpec, grid: &TimeGrid) -> Result<Classification> {
    let mut forcing_onset = None;
    let mut law = None;
    let (verdict, max_residual) = match spec.kind {
        SystemKind::Boson => {
            let s0 = make_coherent_boson(PROBE_Z0, DEFAULT_NMAX)?;
            let traj = evolve_schrodinger_boson(spec, &s0, grid)?;
            (Verdict::Preserving, traj.max_residual())
        }
        SystemKind::Fermion => {
            forcing_onset = (0..=grid.steps())
                .map(|k| grid.time(k))
                .find(|t| spec.forcing.eval(*t).norm() > ZERO_FORCING_TOL);
            let verdict = if forcing_onset.is_some() { Verdict::NonPreserving } else { Verdict::Preserving };
            let (gens, zeta0) = probe_generators(spec)?;
            let traj = evolve_schrodinger_fermion(|t| spec.fermion_operator(&gens, t), &make_coherent(&zeta0)?, grid)?;
            (verdict, traj.max_residual())
        }
        SystemKind::Grassmann => {
            let (gens, zeta0) = probe_generators(spec)?;
            let traj = evolve_schrodinger_fermion(|t| spec.fermion_operator(&gens, t), &make_coherent(&zeta0)?, grid)?;
            law = Some(evolve_grassmann_classical(spec, &zeta0, grid)?);
            (Verdict::Preserving, traj.max_residual())
        }
    };
    let dynamic_verdict = if max_residual > VISIBLE_BREAK_TOL { Verdict::NonPreserving } else { Verdict::Preserving };
    Ok(Classification { verdict, dynamic_verdict, max_residual, forcing_onset, law })
}

/// Degree-one odd path `ζ(t) = Σ cₖ(t)·gₖ` with analytic component functions.
#[derive(Debug, Clone)]
pub struct OddPath {
    gens: Arc<GeneratorSet>,
    components: Vec<(usize, ComplexCoefficient)>,
}

impl OddPath {
    /// `components` pairs a generator index with its coefficient function.
    pub fn new(gens: &Arc<GeneratorSet>, components: Vec<(usize, ComplexCoefficient)>) -> Result<Self> {
        if components.iter().any(|(g, _)| *g >= gens.len()) {
            return Err(Error::NotDegreeOne);
        }
        Ok(OddPath { gens: gens.clone(), components })
    }

    /// Reads the components back from a degree-one multivector with constant coefficients.
    pub fn constant(zeta: &Multivector) -> Result<Self> {
        if !zeta.is_odd_linear() {
            return Err(Error::NotDegreeOne);
        }
        let components = zeta
            .terms()
            .map(|(mask, c)| (mask.trailing_zeros() as usize, ComplexCoefficient::constant(c)))
            .collect();
        Ok(OddPath { gens: zeta.generators().clone(), components })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    fn assemble(&self, t: f64, derivative: bool) -> Multivector {
        self.components.iter().fold(Multivector::zero(&self.gens), |acc, (g, c)| {
            let value = if derivative { c.derivative().eval(t) } else { c.eval(t) };
            acc + Multivector::generator(&self.gens, *g).scale(value)
        })
    }

    pub fn eval(&self, t: f64) -> Multivector {
        self.assemble(t, false)
    }

    pub fn derivative(&self, t: f64) -> Multivector {
        self.assemble(t, true)
    }
}

/// Forcing `(η, δ)` that makes a prescribed path the eigenvalue law.
#[derive(Debug, Clone)]
pub struct ReconstructedForcing {
    pub path: OddPath,
    pub omega: CoefficientFn,
    pub beta: CoefficientFn,
}

impl ReconstructedForcing {
    /// `η = ωζ − iζ̇`
    pub fn eta(&self, t: f64) -> Multivector {
        let i = Complex64::new(0.0, 1.0);
        self.path.eval(t) * self.omega.eval(t) - self.path.derivative(t).scale(i)
    }

    /// `δ = β + ωζ*ζ − (i/2)(ζ*ζ̇ − ζ̇*ζ)`
    pub fn delta(&self, t: f64) -> Multivector {
        let gens = self.path.generators();
        let z = self.path.eval(t);
        let dz = self.path.derivative(t);
        let zs = z.conjugate();
        let cross = &zs * &dz - &dz.conjugate() * &z;
        Multivector::real(gens, self.beta.eval(t)) + (&zs * &z) * self.omega.eval(t)
            - cross.scale(Complex64::new(0.0, 0.5))
    }

    /// Integrates the classical law driven by the reconstructed forcing from `ζ(0)`.
    pub fn replay(&self, grid: &TimeGrid) -> Result<GrassmannPath> {
        integrate_grassmann_law(
            |t| self.omega.eval(t),
            |t| self.eta(t),
            |t| self.delta(t),
            &self.path.eval(0.0),
            grid,
        )
    }
}

pub fn reconstruct_forcing(path: &OddPath, omega: &CoefficientFn, beta: &CoefficientFn) -> ReconstructedForcing {
    ReconstructedForcing { path: path.clone(), omega: omega.clone(), beta: beta.clone() }
}

/// Law a trajectory is expected to follow.
#[derive(Debug, Clone)]
pub enum ExpectedLaw {
    /// `ζ(t) = e^{−i∫ω}ζ0`
    FreeRotation { omega: CoefficientFn, zeta0: Multivector },
    /// `iζ̇ = ωζ − η` with the phase law; states are compared too.
    GrassmannForced { spec: HamiltonianSpec, zeta0: Multivector },
    /// `z(t) = β̃z0 + γ̃`
    Boson { spec: HamiltonianSpec, z0: Complex64 },
}

#[derive(Debug, Clone, Copy)]
pub enum Trajectory<'a> {
    Fermion(&'a FermionTrajectory),
    Boson(&'a BosonTrajectory),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    /// Largest eigenvalue deviation from the law; infinite where no eigenvalue exists.
    pub max_deviation: f64,
    pub max_residual: f64,
    /// Largest deviation of the state from `e^{−iφ}|ζ(t)⟩` (Grassmann law only).
    pub max_state_deviation: Option<f64>,
    pub passed: bool,
}

/// Compares a trajectory recorded on `grid` against an independently integrated law.
pub fn verify_trajectory(traj: Trajectory<'_>, law: &ExpectedLaw, grid: &TimeGrid) -> Result<VerificationReport> {
    let (max_deviation, max_residual, max_state_deviation) = match (traj, law) {
        (Trajectory::Fermion(tr), ExpectedLaw::FreeRotation { omega, zeta0 }) => {
            require_eigenvalues(tr)?;
            let q = phase_integrals(omega, &ComplexCoefficient::zero(), grid);
            let expected: Vec<Multivector> = grid
                .sample_steps()
                .map(|k| zeta0.scale(Complex64::from_polar(1.0, -q.omega[k])))
                .collect();
            (eigenvalue_deviation(tr, &expected)?, tr.max_residual(), None)
        }
        (Trajectory::Fermion(tr), ExpectedLaw::GrassmannForced { spec, zeta0 }) => {
            require_eigenvalues(tr)?;
            let path = evolve_grassmann_classical(spec, zeta0, grid)?;
            let expected: Vec<Multivector> = path.samples.iter().map(|p| p.zeta.clone()).collect();
            let mut state_dev: f64 = 0.0;
            for (s, p) in tr.samples.iter().zip(&path.samples) {
                state_dev = state_dev.max(s.state.distance(&p.state()?));
            }
            (eigenvalue_deviation(tr, &expected)?, tr.max_residual(), Some(state_dev))
        }
        (Trajectory::Boson(tr), ExpectedLaw::Boson { spec, z0 }) => {
            if tr.samples.is_empty() {
                return Err(Error::MissingEigenvalues);
            }
            let path = evolve_classical_boson(spec, *z0, grid)?;
            if path.closed_form.len() != tr.samples.len() {
                return Err(Error::InvalidGrid);
            }
            let dev = tr
                .samples
                .iter()
                .zip(&path.closed_form)
                .map(|(s, z)| (s.mean_lower - z).norm())
                .fold(0.0, f64::max);
            (dev, tr.max_residual(), None)
        }
        _ => return Err(Error::WrongKind),
    };
    let passed = max_deviation <= VERIFY_TOL
        && max_residual <= VERIFY_TOL
        && max_state_deviation.map_or(true, |d| d <= VERIFY_TOL);
    Ok(VerificationReport { max_deviation, max_residual, max_state_deviation, passed })
}

fn require_eigenvalues(tr: &FermionTrajectory) -> Result<()> {
    if tr.samples.iter().all(|s| s.eigenvalue.is_none()) {
        Err(Error::MissingEigenvalues)
    } else {
        Ok(())
    }
}

fn eigenvalue_deviation(tr: &FermionTrajectory, expected: &[Multivector]) -> Result<f64> {
    if expected.len() != tr.samples.len() {
        return Err(Error::InvalidGrid);
    }
    Ok(tr
        .samples
        .iter()
        .zip(expected)
        .map(|(s, want)| s.eigenvalue.as_ref().map_or(f64::INFINITY, |got| got.distance(want)))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{free_fermion_operator, Term};
    use crate::fermion::FermionOperator;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> TimeGrid {
        TimeGrid::new(2.0, 1e-3, 100).unwrap()
    }

    #[test]
    fn eigenstate_reports() {
        let gens = GeneratorSet::new(&["zeta"]).unwrap();
        let zeta = Multivector::generator(&gens, 0).scale(c(0.3, 0.4));
        let r = check_eigenstate(&make_coherent(&zeta).unwrap()).unwrap();
        assert!(r.is_coherent);
        assert_eq!(r.eigenvalue, Eigenvalue::Grassmann(zeta));
        assert_eq!(
            check_eigenstate(&FermionState::excited(&gens)).unwrap_err(),
            Error::VacuumAmplitudeZero
        );

        let r = check_eigenstate(&make_coherent_boson(c(0.5, 0.2), 64).unwrap()).unwrap();
        assert!(r.is_coherent);
        assert!(matches!(r.eigenvalue, Eigenvalue::Complex(z) if (z - c(0.5, 0.2)).norm() < 1e-12));
        let r = check_eigenstate(&BosonState::number_state(1, 10)).unwrap();
        assert!(!r.is_coherent);
        assert_eq!(check_eigenstate(&BosonState::zeros(4)).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn classification_examples() {
        let free = HamiltonianSpec::fermion(CoefficientFn::constant(1.0), ComplexCoefficient::zero(), CoefficientFn::zero());
        let r = classify_hamiltonian(&free, &grid()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserving);
        assert!(r.agrees() && r.forcing_onset.is_none());

        let forced = HamiltonianSpec::fermion(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::constant(c(0.3, 0.0)),
            CoefficientFn::zero(),
        );
        let r = classify_hamiltonian(&forced, &grid()).unwrap();
        assert_eq!(r.verdict, Verdict::NonPreserving);
        assert!(r.agrees());
        assert_eq!(r.forcing_onset, Some(0.0));

        let g = HamiltonianSpec::grassmann(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::rotating(0.4, -1.0, 0.0),
            1,
            CoefficientFn::zero(),
        );
        let r = classify_hamiltonian(&g, &grid()).unwrap();
        assert_eq!(r.verdict, Verdict::Preserving);
        assert!(r.agrees() && r.law.is_some());

        let b = HamiltonianSpec::boson(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::constant(c(0.2, 0.0)),
            CoefficientFn::zero(),
        );
        assert!(classify_hamiltonian(&b, &grid()).unwrap().agrees());
    }

    #[test]
    fn late_forcing_onset() {
        // f′ = t: zero only at t = 0.
        let spec = HamiltonianSpec::fermion(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::real(CoefficientFn::new(vec![Term::Power { coef: 1.0, power: 1 }])),
            CoefficientFn::zero(),
        );
        let r = classify_hamiltonian(&spec, &grid()).unwrap();
        assert_eq!(r.forcing_onset, Some(1e-3));
        assert!(r.agrees());
    }

    #[test]
    fn reconstruction_examples() {
        let gens = GeneratorSet::new(&["zeta", "eta"]).unwrap();
        let zeta = Multivector::generator(&gens, 0).scale(c(0.6, -0.2));
        let beta = CoefficientFn::constant(0.1);

        // Free evolution: η = 0, δ = β.
        let path = OddPath::new(&gens, vec![(0, ComplexCoefficient::rotating(0.6, -1.0, -0.2f64.atan2(0.6)))]).unwrap();
        let r = reconstruct_forcing(&path, &CoefficientFn::constant(1.0), &beta);
        for t in [0.0, 0.7, 1.9] {
            assert!(r.eta(t).sup_norm() < 1e-15);
            assert!(r.delta(t).distance(&Multivector::real(&gens, 0.1)) < 1e-15);
        }

        // Constant path: η = ωζ, δ = β + ωζ*ζ.
        let r = reconstruct_forcing(&OddPath::constant(&zeta).unwrap(), &CoefficientFn::constant(2.0), &beta);
        assert!(r.eta(0.3).distance(&zeta.scale(c(2.0, 0.0))) < 1e-15);
        let want = Multivector::real(&gens, 0.1) + (&zeta.conjugate() * &zeta) * 2.0;
        assert!(r.delta(0.3).distance(&want) < 1e-15);

        // ζ = i·h·t·η_g with ω = 0 gives η = h·η_g.
        let h = c(0.4, 0.1);
        let ih = c(0.0, 1.0) * h;
        let ramp = ComplexCoefficient::new(
            CoefficientFn::new(vec![Term::Power { coef: ih.re, power: 1 }]),
            CoefficientFn::new(vec![Term::Power { coef: ih.im, power: 1 }]),
        );
        let r = reconstruct_forcing(&OddPath::new(&gens, vec![(2, ramp)]).unwrap(), &CoefficientFn::zero(), &beta);
        assert!(r.eta(1.1).distance(&Multivector::generator(&gens, 2).scale(h)) < 1e-15);

        assert_eq!(
            OddPath::new(&gens, vec![(4, ComplexCoefficient::zero())]).unwrap_err(),
            Error::NotDegreeOne
        );
        assert_eq!(OddPath::constant(&Multivector::one(&gens)).unwrap_err(), Error::NotDegreeOne);
    }

    #[test]
    fn reconstruction_round_trip() {
        let gens = GeneratorSet::new(&["zeta", "eta"]).unwrap();
        let path = OddPath::new(
            &gens,
            vec![
                (0, ComplexCoefficient::rotating(0.5, 0.7, 0.1)),
                (3, ComplexCoefficient::real(CoefficientFn::new(vec![Term::Const(0.2), Term::Power { coef: -0.3, power: 2 }]))),
            ],
        )
        .unwrap();
        let beta = CoefficientFn::new(vec![Term::Sin { amp: 0.2, freq: 1.0, phase: 0.0 }]);
        let r = reconstruct_forcing(&path, &CoefficientFn::constant(1.3), &beta);
        let replay = r.replay(&grid()).unwrap();
        for p in &replay.samples {
            assert!(p.zeta.distance(&path.eval(p.t)) < 1e-8);
            let phase = Multivector::real(&gens, 0.2 * (1.0 - p.t.cos()));
            assert!(p.phase.distance(&phase) < 1e-8);
        }
    }

    #[test]
    fn verification_laws() {
        let gens = GeneratorSet::new(&["zeta"]).unwrap();
        let zeta0 = Multivector::generator(&gens, 0).scale(c(0.5, 0.0));
        let omega = CoefficientFn::new(vec![Term::Const(1.0), Term::Sin { amp: 0.5, freq: 1.0, phase: 0.0 }]);
        let g = grid();
        let s0 = make_coherent(&zeta0).unwrap();
        let tr = evolve_schrodinger_fermion(|t| Ok(free_fermion_operator(&gens, omega.eval(t), 0.2)), &s0, &g).unwrap();
        let law = ExpectedLaw::FreeRotation { omega: omega.clone(), zeta0: zeta0.clone() };
        assert!(verify_trajectory(Trajectory::Fermion(&tr), &law, &g).unwrap().passed);

        let forced = HamiltonianSpec::fermion(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::constant(c(0.3, 0.0)),
            CoefficientFn::zero(),
        );
        let tr = evolve_schrodinger_fermion(|t| forced.fermion_operator(&gens, t), &s0, &g).unwrap();
        let law = ExpectedLaw::FreeRotation { omega: CoefficientFn::constant(1.0), zeta0 };
        let report = verify_trajectory(Trajectory::Fermion(&tr), &law, &g).unwrap();
        assert!(!report.passed && report.max_residual > VISIBLE_BREAK_TOL);

        let b = HamiltonianSpec::boson(CoefficientFn::constant(1.0), ComplexCoefficient::zero(), CoefficientFn::zero());
        let btr = evolve_schrodinger_boson(&b, &make_coherent_boson(c(0.5, 0.0), 40).unwrap(), &g).unwrap();
        assert_eq!(verify_trajectory(Trajectory::Boson(&btr), &law, &g).unwrap_err(), Error::WrongKind);
    }

    #[test]
    fn grassmann_law_with_phase() {
        let spec = HamiltonianSpec::grassmann(
            CoefficientFn::constant(1.0),
            ComplexCoefficient::rotating(0.4, -1.0, 0.0),
            1,
            CoefficientFn::constant(0.1),
        );
        let (gens, zeta0) = probe_generators(&spec).unwrap();
        let g = grid();
        let tr = evolve_schrodinger_fermion(|t| spec.fermion_operator(&gens, t), &make_coherent(&zeta0).unwrap(), &g).unwrap();
        let report = verify_trajectory(
            Trajectory::Fermion(&tr),
            &ExpectedLaw::GrassmannForced { spec: spec.clone(), zeta0 },
            &g,
        )
        .unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.max_state_deviation.unwrap() < 1e-8);
    }

    #[test]
    fn missing_eigenvalues() {
        let gens = GeneratorSet::new(&["zeta"]).unwrap();
        let g = TimeGrid::new(0.1, 1e-3, 10).unwrap();
        let tr = evolve_schrodinger_fermion(|_| Ok(FermionOperator::zero(&gens)), &FermionState::excited(&gens), &g).unwrap();
        let law = ExpectedLaw::FreeRotation { omega: CoefficientFn::zero(), zeta0: Multivector::zero(&gens) };
        assert_eq!(verify_trajectory(Trajectory::Fermion(&tr), &law, &g).unwrap_err(), Error::MissingEigenvalues);
    }
}

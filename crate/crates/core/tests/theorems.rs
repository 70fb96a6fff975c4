use coherence_core::coherence::{classify_hamiltonian, reconstruct_forcing, OddPath, Verdict, VISIBLE_BREAK_TOL};
use coherence_core::dynamics::{
    evolve_nu_system, evolve_schrodinger_fermion, CoefficientFn, ComplexCoefficient, HamiltonianSpec, Term,
    TimeGrid,
};
use coherence_core::fermion::{FermionOperator, FermionState};
use coherence_core::{Complex64, GeneratorSet};
use proptest::prelude::*;

fn grid() -> TimeGrid {
    TimeGrid::new(1.5, 1e-3, 50).unwrap()
}

fn frequency() -> impl Strategy<Value = CoefficientFn> {
    (0.2..2.0f64, -0.5..0.5f64, 0.1..2.0f64)
        .prop_map(|(w, a, nu)| CoefficientFn::new(vec![Term::Const(w), Term::Sin { amp: a, freq: nu, phase: 0.0 }]))
}

/// Either identically zero or bounded well away from zero on the grid.
fn forcing() -> impl Strategy<Value = ComplexCoefficient> {
    prop_oneof![
        Just(ComplexCoefficient::zero()),
        (0.3..0.8f64, -1.0..1.0f64, -3.0..3.0f64).prop_map(|(a, nu, ph)| ComplexCoefficient::rotating(a, nu, ph)),
        (0.3..0.8f64, -0.5..0.5f64).prop_map(|(re, im)| ComplexCoefficient::constant(Complex64::new(re, im))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn static_and_dynamic_verdicts_agree(omega in frequency(), f in forcing(), g in -1.0..1.0f64) {
        let zero = f.is_identically_zero();
        let spec = HamiltonianSpec::fermion(omega, f, CoefficientFn::constant(g));
        let r = classify_hamiltonian(&spec, &grid()).unwrap();
        prop_assert!(r.agrees(), "static {:?}, residual {}", r.verdict, r.max_residual);
        prop_assert_eq!(r.verdict == Verdict::Preserving, zero);
    }

    #[test]
    fn invariant_commutes_with_b_iff_unforced(omega in frequency(), f in forcing()) {
        let zero = f.is_identically_zero();
        let spec = HamiltonianSpec::fermion(omega, f, CoefficientFn::zero());
        let gens = GeneratorSet::empty();
        let traj = evolve_nu_system(&spec, &grid()).unwrap();
        let b = FermionOperator::lower(&gens);
        let mut max_comm: f64 = 0.0;
        let mut max_mixing: f64 = 0.0;
        for s in &traj.states {
            max_comm = max_comm.max(b.commutator(&s.to_operator(&gens)).unwrap().sup_norm());
            max_mixing = max_mixing.max(s.nu_plus.norm().max(s.nu_3.norm()));
        }
        prop_assert_eq!(max_comm <= 1e-9, max_mixing <= 1e-9);
        prop_assert_eq!(max_mixing <= 1e-9, zero);
        prop_assert!(traj.max_conservation_drift() < 1e-10);
    }

    #[test]
    fn reconstruction_round_trip(
        a in 0.1..1.0f64, nu in -2.0..2.0f64, ph in -3.0..3.0f64,
        c0 in -1.0..1.0f64, c1 in -1.0..1.0f64, w in 0.0..2.0f64, beta in -1.0..1.0f64,
    ) {
        let gens = GeneratorSet::new(&["zeta", "eta"]).unwrap();
        let path = OddPath::new(&gens, vec![
            (0, ComplexCoefficient::rotating(a, nu, ph)),
            (2, ComplexCoefficient::real(CoefficientFn::new(vec![Term::Const(c0), Term::Power { coef: c1, power: 1 }]))),
        ]).unwrap();
        let r = reconstruct_forcing(&path, &CoefficientFn::constant(w), &CoefficientFn::constant(beta));
        let replay = r.replay(&grid()).unwrap();
        for p in &replay.samples {
            prop_assert!(p.zeta.distance(&path.eval(p.t)) < 1e-8);
            prop_assert!((p.phase.body() - Complex64::new(beta * p.t, 0.0)).norm() < 1e-8);
        }
    }

    /// Any nonzero scalar forcing destabilises the vacuum.
    #[test]
    fn vacuum_is_stable_only_without_forcing(omega in frequency(), f in forcing()) {
        let zero = f.is_identically_zero();
        let spec = HamiltonianSpec::fermion(omega, f, CoefficientFn::zero());
        let gens = GeneratorSet::new(&["zeta"]).unwrap();
        let traj = evolve_schrodinger_fermion(|t| spec.fermion_operator(&gens, t), &FermionState::vacuum(&gens), &grid()).unwrap();
        if zero {
            prop_assert!(traj.max_residual() < 1e-12);
        } else {
            prop_assert!(traj.max_residual() > VISIBLE_BREAK_TOL);
        }
    }
}

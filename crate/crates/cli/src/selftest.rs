//! Fast algebraic sanity checks run by `coherence selftest`.

use coherence_core::boson::make_coherent_boson;
use coherence_core::coherence::check_eigenstate;
use coherence_core::fermion::{make_coherent, make_displacement, FermionOperator, FermionState};
use coherence_core::{Complex64, GeneratorSet, Multivector, Result};

const TOL: f64 = 1e-12;

pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<f64>, tol: f64) -> SelfCheck {
    match outcome {
        Ok(v) => SelfCheck { name, passed: v <= tol, detail: format!("deviation {v:e}") },
        Err(e) => SelfCheck { name, passed: false, detail: e.to_string() },
    }
}

pub fn run_all() -> Vec<SelfCheck> {
    let gens = GeneratorSet::new(&["zeta", "eta"]).expect("two pairs fit");
    let zeta = Multivector::generator(&gens, 0).scale(Complex64::new(0.5, 0.2))
        + Multivector::generator(&gens, 3).scale(Complex64::new(0.0, -0.3));
    let eta = Multivector::generator(&gens, 2);
    let b = FermionOperator::lower(&gens);
    vec![
        check("generators anticommute", (|| {
            Ok((zeta.multiply(&eta)? + eta.multiply(&zeta)?).sup_norm())
        })(), TOL),
        check("odd elements square to zero", zeta.multiply(&zeta).map(|s| s.sup_norm()), TOL),
        check("canonical anticommutation", b.ladder_defects().map(|(a, s)| a.max(s)), TOL),
        check("fermion coherent eigenstate", make_coherent(&zeta).and_then(|s| check_eigenstate(&s)).map(|r| r.residual), TOL),
        check("coherent state normalized", (|| {
            let s = make_coherent(&zeta)?;
            Ok((s.inner_product(&s)? - Multivector::one(&gens)).sup_norm())
        })(), TOL),
        check("displacement of the vacuum", (|| {
            let d = make_displacement(&zeta, &b)?;
            Ok(d.apply(&FermionState::vacuum(&gens))?.distance(&make_coherent(&zeta)?))
        })(), TOL),
        check("boson coherent eigenstate", make_coherent_boson(Complex64::new(0.5, -0.25), 64)
            .and_then(|s| check_eigenstate(&s)).map(|r| r.residual), 1e-10),
    ]
}

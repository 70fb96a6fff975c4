use std::sync::Arc;

use coherence_core::fermion::{make_coherent, make_displacement, FermionOperator, FermionState};
use coherence_core::grassmann::product_sign;
use coherence_core::{Complex64, GeneratorSet, Multivector};
use proptest::prelude::*;

const TOL: f64 = 1e-13;

fn gens() -> Arc<GeneratorSet> {
    GeneratorSet::new(&["zeta", "eta"]).unwrap()
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn multivector() -> impl Strategy<Value = Multivector> {
    prop::collection::vec(coeff(), 16).prop_map(|cs| {
        let g = gens();
        Multivector::from_terms(&g, cs.into_iter().enumerate().map(|(m, c)| (m as u32, c)))
    })
}

fn odd_linear() -> impl Strategy<Value = Multivector> {
    prop::collection::vec(coeff(), 4).prop_map(|cs| {
        let g = gens();
        cs.into_iter()
            .enumerate()
            .fold(Multivector::zero(&g), |acc, (k, c)| acc + Multivector::generator(&g, k).scale(c))
    })
}

fn operator() -> impl Strategy<Value = FermionOperator> {
    (multivector(), multivector(), multivector(), multivector())
        .prop_map(|(a, b, c, d)| FermionOperator::from_parts(a, b, c, d).unwrap())
}

#[test]
fn associativity_on_all_monomial_triples() {
    let g = gens();
    let mono = |m: u32| Multivector::from_terms(&g, [(m, Complex64::new(1.0, 0.0))]);
    for a in 0..16 {
        for b in 0..16 {
            for c in 0..16 {
                let left = (mono(a) * mono(b)) * mono(c);
                let right = mono(a) * (mono(b) * mono(c));
                assert_eq!(left, right, "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn graded_commutativity_of_monomials() {
    for a in 0u32..16 {
        for b in 0u32..16 {
            if a & b != 0 {
                continue;
            }
            let pq = (a.count_ones() * b.count_ones()) % 2;
            let want = if pq == 0 { 1.0 } else { -1.0 };
            assert_eq!(product_sign(a, b) * product_sign(b, a), want, "{a} {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity_random(x in multivector(), y in multivector(), z in multivector()) {
        prop_assert!(((&x * &y) * &z).distance(&(&x * &(&y * &z))) < TOL);
    }

    #[test]
    fn conjugation_is_an_antihomomorphic_involution(x in multivector(), y in multivector()) {
        prop_assert!(x.conjugate().conjugate().distance(&x) < TOL);
        prop_assert!((&x * &y).conjugate().distance(&(y.conjugate() * x.conjugate())) < TOL);
    }

    #[test]
    fn parity_split_and_nilpotent_soul(x in multivector()) {
        prop_assert!((x.even() + x.odd()).distance(&x) < TOL);
        prop_assert!(x.soul().powi(5).is_zero());
        prop_assert_eq!(x.sup_norm() == 0.0, x.is_zero());
    }

    #[test]
    fn exponential_of_commuting_sum(a in multivector(), b in multivector()) {
        // Even elements commute with everything even.
        let (x, y) = (a.even().soul(), b.even().soul());
        prop_assert!((&x + &y).exponential().distance(&(x.exponential() * y.exponential())) < TOL);
    }

    #[test]
    fn inverse_multiplies_to_one(x in multivector()) {
        prop_assume!(x.body().norm() > 0.1);
        let inv = x.invert().unwrap();
        prop_assert!((&x * &inv).distance(&Multivector::one(x.generators())) < 1e-11);
    }

    #[test]
    fn berezin_is_linear(x in multivector(), y in multivector(), c in coeff()) {
        let lhs = (&x.scale(c) + &y).berezin_pair(0).unwrap();
        let rhs = x.berezin_pair(0).unwrap().scale(c) + y.berezin_pair(0).unwrap();
        prop_assert!(lhs.distance(&rhs) < TOL);
    }

    #[test]
    fn lowering_has_coherent_eigenstates(zeta in odd_linear()) {
        let s = make_coherent(&zeta).unwrap();
        let lhs = FermionOperator::lower(&gens()).apply(&s).unwrap();
        prop_assert!(lhs.distance(&s.left_mul(&zeta)) < TOL);
        let norm = s.inner_product(&s).unwrap();
        prop_assert!(norm.distance(&Multivector::one(&gens())) < TOL);
    }

    #[test]
    fn displacement_conjugation(zeta in odd_linear()) {
        let g = gens();
        let b = FermionOperator::lower(&g);
        let d = make_displacement(&zeta, &b).unwrap();
        let shifted = d.compose(&b).unwrap().compose(&d.adjoint()).unwrap();
        let want = &b - &FermionOperator::identity(&g).left_mul(&zeta);
        prop_assert!(shifted.distance(&want) < 1e-12);
        let back = d.adjoint().compose(&b).unwrap().compose(&d).unwrap();
        let want = &b + &FermionOperator::identity(&g).left_mul(&zeta);
        prop_assert!(back.distance(&want) < 1e-12);
        let vacuum = d.apply(&FermionState::vacuum(&g)).unwrap();
        prop_assert!(vacuum.distance(&make_coherent(&zeta).unwrap()) < 1e-12);
    }

    #[test]
    fn operator_adjoint_and_composition(a in operator(), b in operator(), c in operator()) {
        prop_assert!(a.adjoint().adjoint().distance(&a) < TOL);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(left.distance(&right) < 1e-11);
        let ab = a.compose(&b).unwrap().adjoint();
        let ba = b.adjoint().compose(&a.adjoint()).unwrap();
        prop_assert!(ab.distance(&ba) < 1e-11);
    }
}

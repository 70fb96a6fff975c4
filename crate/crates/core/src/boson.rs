//! Truncated one-mode boson Fock space.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_NMAX: usize = 64;
/// Largest tail mass [`make_coherent_boson`] accepts.
pub const COHERENT_TAIL_TOL: f64 = 1e-9;
/// Number of top Fock levels whose mass is reported by [`BosonState::tail_mass`].
pub const TAIL_LEVELS: usize = 2;

const SERIES_TOL: f64 = 1e-14;
const SERIES_MAX_TERMS: usize = 500;

/// Amplitudes `c_0 … c_nmax` on the number states.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonState {
    amps: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Lower,
    Raise,
    Number,
}

impl BosonState {
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        assert!(!amps.is_empty(), "a boson state needs at least one level");
        BosonState { amps }
    }

    pub fn zeros(nmax: usize) -> Self {
        BosonState {
            amps: vec![Complex64::new(0.0, 0.0); nmax + 1],
        }
    }

    /// Number state `|n⟩`.
    pub fn number_state(n: usize, nmax: usize) -> Self {
        let mut out = Self::zeros(nmax);
        out.amps[n] = Complex64::new(1.0, 0.0);
        out
    }

    pub fn vacuum(nmax: usize) -> Self {
        Self::number_state(0, nmax)
    }

    pub fn nmax(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    pub fn inner_product(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Euclidean distance between amplitude vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        libm::sqrt(
            self.amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        BosonState {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c·other`
    pub fn axpy(&self, c: Complex64, other: &Self) -> Self {
        BosonState {
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + c * b).collect(),
        }
    }

    /// Mass held in the top [`TAIL_LEVELS`] levels of the truncation.
    pub fn tail_mass(&self) -> f64 {
        let start = self.amps.len().saturating_sub(TAIL_LEVELS);
        self.amps[start..].iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn apply_ladder(&self, which: Ladder) -> Self {
        let n = self.amps.len();
        let mut out = Self::zeros(self.nmax());
        match which {
            Ladder::Lower => {
                for k in 0..n - 1 {
                    out.amps[k] = self.amps[k + 1] * libm::sqrt((k + 1) as f64);
                }
            }
            Ladder::Raise => {
                for k in 1..n {
                    out.amps[k] = self.amps[k - 1] * libm::sqrt(k as f64);
                }
            }
            Ladder::Number => {
                for k in 0..n {
                    out.amps[k] = self.amps[k] * k as f64;
                }
            }
        }
        out
    }

    /// `⟨a⟩ = ⟨ψ|a|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn mean_lower(&self) -> Complex64 {
        self.inner_product(&self.apply_ladder(Ladder::Lower)) / self.norm_sqr()
    }

    /// `‖(a − λ)ψ‖ / ‖ψ‖`.
    pub fn eigen_residual(&self, lambda: Complex64) -> f64 {
        let a_psi = self.apply_ladder(Ladder::Lower);
        a_psi.axpy(-lambda, self).norm() / self.norm()
    }

    /// `Σ n|c_n|² / Σ|c_n|²`.
    pub fn expectation_number(&self) -> f64 {
        let weighted: f64 = self
            .amps
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum();
        weighted / self.norm_sqr()
    }
}

/// Mass of the Poisson distribution with mean `|z|²` beyond `nmax`.
pub fn coherent_tail(z: Complex64, nmax: usize) -> f64 {
    let mean = z.norm_sqr();
    let mut p = libm::exp(-mean);
    for n in 1..=nmax {
        p *= mean / n as f64;
    }
    let mut tail = 0.0;
    let mut n = nmax + 1;
    loop {
        p *= mean / n as f64;
        tail += p;
        if (n as f64) > mean && p <= 1e-30 * tail.max(1e-300) {
            break;
        }
        if p == 0.0 {
            break;
        }
        n += 1;
    }
    tail
}

/// Glauber state `e^{−|z|²/2} Σ zⁿ/√(n!) |n⟩` truncated at `nmax`.
pub fn make_coherent_boson(z: Complex64, nmax: usize) -> Result<BosonState> {
    let tail = if nmax == 0 { 1.0 } else { coherent_tail(z, nmax) };
    if nmax == 0 || tail > COHERENT_TAIL_TOL {
        return Err(Error::TruncationTooSmall { nmax, tail });
    }
    let mut amps = Vec::with_capacity(nmax + 1);
    let mut c = Complex64::new(libm::exp(-0.5 * z.norm_sqr()), 0.0);
    amps.push(c);
    for n in 1..=nmax {
        c = c * z / libm::sqrt(n as f64);
        amps.push(c);
    }
    Ok(BosonState { amps })
}

/// The pair `(β, γ)` in `A = β·a + γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonLadderInvariant {
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl BosonLadderInvariant {
    pub const PLAIN: BosonLadderInvariant = BosonLadderInvariant {
        beta: Complex64::new(1.0, 0.0),
        gamma: Complex64::new(0.0, 0.0),
    };

    pub fn apply(&self, s: &BosonState) -> BosonState {
        s.apply_ladder(Ladder::Lower).scale(self.beta).axpy(self.gamma, s)
    }

    pub fn apply_adjoint(&self, s: &BosonState) -> BosonState {
        s.apply_ladder(Ladder::Raise).scale(self.beta.conj()).axpy(self.gamma.conj(), s)
    }

    /// `exp(A†z − z*A)` applied to `s` by its power series.
    pub fn displace(&self, z: Complex64, s: &BosonState) -> Result<BosonState> {
        let mut acc = s.clone();
        let mut term = s.clone();
        for k in 1..=SERIES_MAX_TERMS {
            let up = self.apply_adjoint(&term).scale(z);
            let down = self.apply(&term).scale(-z.conj());
            term = up.axpy(Complex64::new(1.0, 0.0), &down).scale(Complex64::new(1.0 / k as f64, 0.0));
            acc = acc.axpy(Complex64::new(1.0, 0.0), &term);
            if term.norm() < SERIES_TOL {
                return Ok(acc);
            }
        }
        Err(Error::SeriesStalled { terms: SERIES_MAX_TERMS })
    }
}

/// `D(z, A)|s⟩` with `A = β·a + γ`.
pub fn displace(inv: &BosonLadderInvariant, z: Complex64, s: &BosonState) -> Result<BosonState> {
    inv.displace(z, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coherent_examples() {
        let vac = make_coherent_boson(c(0.0, 0.0), 10).unwrap();
        assert_eq!(vac, BosonState::vacuum(10));

        let s = make_coherent_boson(c(1.0, 0.0), 40).unwrap();
        let e = libm::exp(-0.5);
        assert!((s.amplitudes()[0] - e).norm() < 1e-15);
        assert!((s.amplitudes()[1] - e).norm() < 1e-15);
        assert!((s.amplitudes()[2] - e / libm::sqrt(2.0)).norm() < 1e-15);

        for z in [c(1.0, 0.0), c(0.3, -0.8), c(-0.6, 0.6)] {
            let s = make_coherent_boson(z, 40).unwrap();
            // Direct sum Σ √(n+1) c̄_n c_{n+1}.
            let a = s.amplitudes();
            let mean: Complex64 = (0..40).map(|n| a[n].conj() * a[n + 1] * libm::sqrt((n + 1) as f64)).sum();
            assert!((mean - z).norm() < 1e-10);
        }
    }

    #[test]
    fn truncation_guard() {
        assert!(matches!(
            make_coherent_boson(c(3.0, 0.0), 8),
            Err(Error::TruncationTooSmall { .. })
        ));
        assert!(matches!(
            make_coherent_boson(c(0.0, 0.0), 0),
            Err(Error::TruncationTooSmall { .. })
        ));
        assert!(make_coherent_boson(c(3.0, 0.0), 9 + 30 + 20).is_ok());
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(BosonState::vacuum(5).apply_ladder(Ladder::Lower).norm(), 0.0);

        let z = c(0.7, -0.4);
        let s = make_coherent_boson(z, 40).unwrap();
        assert!(s.eigen_residual(z) <= 1e-8);

        for n in 0..8 {
            let psi = BosonState::number_state(n, 10);
            let aad = psi.apply_ladder(Ladder::Raise).apply_ladder(Ladder::Lower);
            let ada = psi.apply_ladder(Ladder::Lower).apply_ladder(Ladder::Raise);
            let comm = aad.axpy(c(-1.0, 0.0), &ada);
            assert!(comm.distance(&psi) < 1e-14);
        }
    }

    #[test]
    fn displacement_examples() {
        let z = c(0.5, 0.3);
        let d = displace(&BosonLadderInvariant::PLAIN, z, &BosonState::vacuum(40)).unwrap();
        assert!(d.distance(&make_coherent_boson(z, 40).unwrap()) < 1e-12);

        let s = make_coherent_boson(c(0.2, 0.1), 40).unwrap();
        let same = displace(&BosonLadderInvariant::PLAIN, c(0.0, 0.0), &s).unwrap();
        assert_eq!(same, s);
    }

    #[test]
    fn number_expectation() {
        assert_eq!(BosonState::vacuum(10).expectation_number(), 0.0);
        let s = make_coherent_boson(c(1.0, 0.0), 40).unwrap();
        assert!((s.expectation_number() - 1.0).abs() < 1e-9);
        assert_eq!(BosonState::number_state(1, 10).expectation_number(), 1.0);
    }

    proptest! {
        #[test]
        fn residual_shrinks_with_truncation(re in -1.0..1.0f64, im in -1.0..1.0f64, nmax in 22usize..40) {
            let z = c(re, im);
            let r_small = make_coherent_boson(z, nmax).unwrap().eigen_residual(z);
            let r_large = make_coherent_boson(z, nmax + 1).unwrap().eigen_residual(z);
            prop_assert!(r_large <= r_small);
        }

        #[test]
        fn generalized_displacement_preserves_norm(
            re in -0.7..0.7f64, im in -0.7..0.7f64, phase in 0.0..6.3f64, g_re in -0.5..0.5f64,
        ) {
            let inv = BosonLadderInvariant {
                beta: Complex64::from_polar(1.0, phase),
                gamma: c(g_re, 0.2),
            };
            let s = make_coherent_boson(c(0.3, -0.2), 40).unwrap();
            let d = inv.displace(c(re, im), &s).unwrap();
            prop_assert!((d.norm() - 1.0).abs() <= 1e-6);
        }
    }
}

//! Time-dependent coefficient functions built from constants, low-order
//! monomials and sinusoids.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// One summand of a [`CoefficientFn`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    Const(f64),
    /// `coef · t^power`, `1 <= power <= 3`.
    Power { coef: f64, power: u8 },
    /// `amp · cos(freq·t + phase)`
    Cos { amp: f64, freq: f64, phase: f64 },
    /// `amp · sin(freq·t + phase)`
    Sin { amp: f64, freq: f64, phase: f64 },
}

impl Term {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Term::Const(c) => c,
            Term::Power { coef, power } => coef * libm::pow(t, power as f64),
            Term::Cos { amp, freq, phase } => amp * libm::cos(freq * t + phase),
            Term::Sin { amp, freq, phase } => amp * libm::sin(freq * t + phase),
        }
    }

    fn derivative(&self) -> Option<Term> {
        match *self {
            Term::Const(_) => None,
            Term::Power { coef, power: 1 } => Some(Term::Const(coef)),
            Term::Power { coef, power } => Some(Term::Power {
                coef: coef * power as f64,
                power: power - 1,
            }),
            Term::Cos { amp, freq, phase } => Some(Term::Sin { amp: -amp * freq, freq, phase }),
            Term::Sin { amp, freq, phase } => Some(Term::Cos { amp: amp * freq, freq, phase }),
        }
    }

    fn is_zero(&self) -> bool {
        match *self {
            Term::Const(c) => c == 0.0,
            Term::Power { coef, .. } => coef == 0.0,
            Term::Cos { amp, .. } | Term::Sin { amp, .. } => amp == 0.0,
        }
    }
}

/// Real function of time given as a sum of [`Term`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientFn {
    terms: Vec<Term>,
}

impl CoefficientFn {
    pub fn new(terms: Vec<Term>) -> Self {
        CoefficientFn { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        CoefficientFn { terms: alloc::vec![Term::Const(c)] }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// Analytic derivative.
    pub fn derivative(&self) -> Self {
        CoefficientFn {
            terms: self.terms.iter().filter_map(Term::derivative).collect(),
        }
    }

    /// True when every term has a zero coefficient.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.iter().all(Term::is_zero)
    }

    pub fn with_term(mut self, term: Term) -> Self {
        self.terms.push(term);
        self
    }
}

/// Writes the expression grammar accepted by the scenario parser.
impl fmt::Display for CoefficientFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match *term {
                Term::Const(c) => write!(f, "{c:?}")?,
                Term::Power { coef, power } => write!(f, "{coef:?}*t^{power}")?,
                Term::Cos { amp, freq, phase } => write!(f, "{amp:?}*cos({freq:?}*t + {phase:?})")?,
                Term::Sin { amp, freq, phase } => write!(f, "{amp:?}*sin({freq:?}*t + {phase:?})")?,
            }
        }
        Ok(())
    }
}

/// Complex function `re(t) + i·im(t)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexCoefficient {
    pub re: CoefficientFn,
    pub im: CoefficientFn,
}

impl ComplexCoefficient {
    pub fn new(re: CoefficientFn, im: CoefficientFn) -> Self {
        ComplexCoefficient { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(re: CoefficientFn) -> Self {
        ComplexCoefficient { re, im: CoefficientFn::zero() }
    }

    pub fn constant(c: Complex64) -> Self {
        ComplexCoefficient {
            re: CoefficientFn::constant(c.re),
            im: CoefficientFn::constant(c.im),
        }
    }

    /// `amp · e^{i(freq·t + phase)}`.
    pub fn rotating(amp: f64, freq: f64, phase: f64) -> Self {
        ComplexCoefficient {
            re: CoefficientFn::new(alloc::vec![Term::Cos { amp, freq, phase }]),
            im: CoefficientFn::new(alloc::vec![Term::Sin { amp, freq, phase }]),
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        Complex64::new(self.re.eval(t), self.im.eval(t))
    }

    pub fn derivative(&self) -> Self {
        ComplexCoefficient {
            re: self.re.derivative(),
            im: self.im.derivative(),
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.re.is_identically_zero() && self.im.is_identically_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn evaluates_each_term_kind() {
        let f = CoefficientFn::new(vec![
            Term::Const(1.0),
            Term::Power { coef: 2.0, power: 2 },
            Term::Sin { amp: 0.5, freq: 1.0, phase: 0.0 },
        ]);
        assert!((f.eval(FRAC_PI_2) - (1.0 + 2.0 * FRAC_PI_2 * FRAC_PI_2 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = CoefficientFn::new(vec![
            Term::Const(0.3),
            Term::Power { coef: -1.5, power: 3 },
            Term::Power { coef: 0.7, power: 1 },
            Term::Cos { amp: 0.4, freq: 2.0, phase: 0.3 },
            Term::Sin { amp: -0.2, freq: 0.5, phase: -1.0 },
        ]);
        let df = f.derivative();
        let h = 1e-5;
        for t in [0.0, 0.4, 1.7, 3.2] {
            let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
            assert!((df.eval(t) - fd).abs() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn zero_detection() {
        assert!(CoefficientFn::zero().is_identically_zero());
        assert!(CoefficientFn::constant(0.0).is_identically_zero());
        assert!(!CoefficientFn::constant(1e-30).is_identically_zero());
        assert!(ComplexCoefficient::zero().is_identically_zero());
    }

    #[test]
    fn rotating_forcing() {
        let h = ComplexCoefficient::rotating(0.4, -1.0, 0.0);
        let t = 0.8;
        assert!((h.eval(t) - Complex64::from_polar(0.4, -t)).norm() < 1e-15);
    }
}

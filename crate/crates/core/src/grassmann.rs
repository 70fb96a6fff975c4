//! Finite-dimensional complex Grassmann algebra.
//!
//! Generators come in conjugate pairs `(g_k, g_k*)` stored at indices `2k` and
//! `2k + 1`. A basis monomial is a bitmask over generator indices; the
//! canonical order inside a monomial is ascending index, and every sign in the
//! algebra is the parity of the inversions needed to reach that order.
//!
//! Elements are stored densely (`2^(2m)` complex coefficients), which is
//! cheap for the at most eight generators supported here.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Upper bound on `2m`.
pub const MAX_GENERATORS: usize = 8;

/// Coefficients at or below this magnitude count as zero when listing terms.
pub const PRUNE_TOL: f64 = 1e-15;

const EVEN_BITS: u32 = 0x5555_5555;

/// Labels for `2m` generators arranged in conjugate pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    /// Builds a set from pair base names; the partner of `zeta` is `zeta*`.
    pub fn new<S: AsRef<str>>(pairs: &[S]) -> Result<Arc<Self>> {
        Self::with_labels(
            pairs
                .iter()
                .map(|p| (String::from(p.as_ref()), alloc::format!("{}*", p.as_ref())))
                .collect(),
        )
    }

    pub fn with_labels(pairs: Vec<(String, String)>) -> Result<Arc<Self>> {
        if 2 * pairs.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(2 * pairs.len()));
        }
        let mut names = Vec::with_capacity(2 * pairs.len());
        for (g, gc) in pairs {
            for name in [g, gc] {
                if names.contains(&name) {
                    return Err(Error::DuplicateGenerator(name));
                }
                names.push(name);
            }
        }
        Ok(Arc::new(GeneratorSet { names }))
    }

    /// The plain complex numbers (`m = 0`).
    pub fn empty() -> Arc<Self> {
        Arc::new(GeneratorSet { names: Vec::new() })
    }

    pub fn pair_count(&self) -> usize {
        self.names.len() / 2
    }

    /// Total number of generators, `2m`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of basis monomials, `2^(2m)`.
    pub fn dimension(&self) -> usize {
        1 << self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Pair index whose unstarred generator is called `name`.
    pub fn pair_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).filter(|i| i % 2 == 0).map(|i| i / 2)
    }

    /// Index of the conjugate partner.
    pub fn partner(index: usize) -> usize {
        index ^ 1
    }

    /// Generator labels of a monomial joined by `.`; the empty monomial is `1`.
    pub fn monomial_label(&self, mask: u32) -> String {
        if mask == 0 {
            return String::from("1");
        }
        let mut out = String::new();
        for i in 0..self.names.len() {
            if mask & (1 << i) != 0 {
                if !out.is_empty() {
                    out.push('.');
                }
                out.push_str(&self.names[i]);
            }
        }
        out
    }
}

/// Sign of `e_a e_b` relative to the canonical monomial `e_{a|b}`.
///
/// Each generator of `b` moves left past the generators of `a` with a larger
/// index. Callers must have checked `a & b == 0`.
pub fn product_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Mask and sign of the conjugate of a monomial.
///
/// `g_{i1}…g_{ik}` maps to `g_{ik}*…g_{i1}*`. Reversing `k` factors costs
/// `k(k-1)/2` transpositions, and each pair present in full comes back in
/// descending order, costing one more.
pub fn conjugate_monomial(mask: u32) -> (u32, f64) {
    let swapped = ((mask & EVEN_BITS) << 1) | ((mask >> 1) & EVEN_BITS);
    let k = mask.count_ones();
    let full_pairs = (mask & (mask >> 1) & EVEN_BITS).count_ones();
    let parity = (k * k.saturating_sub(1) / 2 + full_pairs) % 2;
    (swapped, if parity == 0 { 1.0 } else { -1.0 })
}

/// Element of the complex Grassmann algebra over a [`GeneratorSet`].
#[derive(Clone, Debug)]
pub struct Multivector {
    gens: Arc<GeneratorSet>,
    coeffs: Vec<Complex64>,
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.gens, &other.gens) && self.coeffs == other.coeffs
    }
}

fn same_algebra(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Multivector {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        Multivector {
            gens: gens.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); gens.dimension()],
        }
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        Self::scalar(gens, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, c: Complex64) -> Self {
        let mut out = Self::zero(gens);
        out.coeffs[0] = c;
        out
    }

    pub fn real(gens: &Arc<GeneratorSet>, x: f64) -> Self {
        Self::scalar(gens, Complex64::new(x, 0.0))
    }

    /// The generator at `index` with unit coefficient.
    pub fn generator(gens: &Arc<GeneratorSet>, index: usize) -> Self {
        assert!(index < gens.len(), "generator index {index} out of range");
        let mut out = Self::zero(gens);
        out.coeffs[1 << index] = Complex64::new(1.0, 0.0);
        out
    }

    /// Builds an element from `(mask, coefficient)` pairs; repeated masks add up.
    pub fn from_terms<I>(gens: &Arc<GeneratorSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, Complex64)>,
    {
        let mut out = Self::zero(gens);
        for (mask, c) in terms {
            out.coeffs[mask as usize] += c;
        }
        out
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }

    /// Dense coefficients indexed by monomial bitmask.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Nonzero terms in bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > PRUNE_TOL)
            .map(|(m, c)| (m as u32, *c))
    }

    /// Copy with every coefficient at or below [`PRUNE_TOL`] set to zero.
    pub fn pruned(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            if c.norm() <= PRUNE_TOL {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    pub fn body(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = Complex64::new(0.0, 0.0);
        out
    }

    fn filter_masks(&self, keep: impl Fn(u32) -> bool) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            if !keep(m as u32) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    pub fn even(&self) -> Self {
        self.filter_masks(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd(&self) -> Self {
        self.filter_masks(|m| m.count_ones() % 2 == 1)
    }

    /// Homogeneous part of the given degree.
    pub fn grade(&self, degree: u32) -> Self {
        self.filter_masks(|m| m.count_ones() == degree)
    }

    pub fn is_zero(&self) -> bool {
        self.sup_norm() <= PRUNE_TOL
    }

    pub fn is_even(&self) -> bool {
        self.odd().is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.even().is_zero()
    }

    /// True when every nonzero term is a single generator.
    pub fn is_odd_linear(&self) -> bool {
        self.terms().all(|(m, _)| m.count_ones() == 1)
    }

    /// Largest coefficient magnitude.
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sup_norm(self - other)`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert!(same_algebra(&self.gens, &other.gens), "generator sets differ");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Multivector {
            gens: self.gens.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Graded product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if !same_algebra(&self.gens, &other.gens) {
            return Err(Error::MismatchedGenerators);
        }
        let mut out = Self::zero(&self.gens);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if *ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if a & b != 0 || *cb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let sign = product_sign(a as u32, b as u32);
                out.coeffs[a | b] += ca * cb * sign;
            }
        }
        Ok(out)
    }

    /// Antilinear involution reversing the order of generators and swapping
    /// each with its partner.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(&self.gens);
        for (m, c) in self.coeffs.iter().enumerate() {
            let (image, sign) = conjugate_monomial(m as u32);
            out.coeffs[image as usize] += c.conj() * sign;
        }
        out
    }

    /// `even(x) - odd(x)`.
    pub fn grade_involution(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate() {
            if m.count_ones() % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// `x^k` by repeated multiplication.
    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::one(&self.gens);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `exp(body) * sum_k soul^k / k!`; the sum stops at `k = 2m`.
    pub fn exponential(&self) -> Self {
        let soul = self.soul();
        let mut term = Self::one(&self.gens);
        let mut acc = term.clone();
        for k in 1..=self.gens.len() {
            term = (&term * &soul).scale(Complex64::new(1.0 / k as f64, 0.0));
            if term.sup_norm() == 0.0 {
                break;
            }
            acc += &term;
        }
        acc.scale(self.body().exp())
    }

    /// Multiplicative inverse via the finite geometric series in `soul/body`.
    pub fn invert(&self) -> Result<Self> {
        let body = self.body();
        if body.norm() <= PRUNE_TOL {
            return Err(Error::NotInvertible);
        }
        let ratio = self.soul().scale(-1.0 / body);
        let mut term = Self::one(&self.gens);
        let mut acc = term.clone();
        for _ in 0..self.gens.len() {
            term = &term * &ratio;
            if term.sup_norm() == 0.0 {
                break;
            }
            acc += &term;
        }
        Ok(acc.scale(1.0 / body))
    }

    /// Left derivative with respect to generator `index`.
    pub fn left_derivative(&self, index: usize) -> Self {
        let bit = 1u32 << index;
        let below = bit - 1;
        let mut out = Self::zero(&self.gens);
        for (m, c) in self.coeffs.iter().enumerate() {
            let m = m as u32;
            if m & bit == 0 {
                continue;
            }
            let sign = if (m & below).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            out.coeffs[(m ^ bit) as usize] += c * sign;
        }
        out
    }

    /// `∫ dg* dg x` for pair `k`: integrate over `g` first, then over `g*`.
    pub fn berezin_pair(&self, pair: usize) -> Result<Self> {
        if pair >= self.gens.pair_count() {
            return Err(Error::UnknownPair(pair));
        }
        Ok(self.left_derivative(2 * pair).left_derivative(2 * pair + 1))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            if m != 0 {
                write!(f, "*{}", self.gens.monomial_label(m))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add<&Multivector> for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Multivector> for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert!(same_algebra(&self.gens, &rhs.gens), "generator sets differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert!(same_algebra(&self.gens, &rhs.gens), "generator sets differ");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Graded product; panics when the generator sets differ (see [`Multivector::multiply`]).
impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.multiply(rhs).expect("generator sets differ")
    }
}

impl Mul<Complex64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                $tr::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

impl Mul<Complex64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Complex64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        &self * rhs
    }
}

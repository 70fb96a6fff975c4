use core::fmt;

/// Errors raised by the algebra kernel, the Fock-space types and the integrators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands live in algebras with different generator sets.
    MismatchedGenerators,
    /// More than [`crate::grassmann::MAX_GENERATORS`] generators were requested.
    TooManyGenerators(usize),
    DuplicateGenerator(alloc::string::String),
    /// The body of the element is zero, so it has no inverse.
    NotInvertible,
    /// Berezin integration over a pair that is not declared.
    UnknownPair(usize),
    /// A coherent-state label must be an odd element of degree one.
    NotOddLinear,
    /// The operator exponential series could not be shown to terminate.
    NonTerminatingSeries,
    /// `{L, L†} = I` or `L² = 0` fails for the proposed ladder operator.
    NotALadder { anticommutator: f64, square: f64 },
    /// The vacuum amplitude has zero body; no eigenvalue can be extracted.
    VacuumAmplitudeZero,
    TruncationTooSmall { nmax: usize, tail: f64 },
    SeriesStalled { terms: usize },
    /// Halving the step moved the endpoint by more than the allowed amount.
    StepTooLarge { deviation: f64 },
    NotHermitian { t: f64, deviation: f64 },
    TruncationBreach { t: f64, tail: f64 },
    /// The Grassmann forcing generator also appears in the initial eigenvalue.
    GeneratorCollision,
    GridTooCoarse { ratio: f64 },
    InvalidGrid,
    WrongKind,
    MissingEigenvalues,
    NotDegreeOne,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MismatchedGenerators => f.write_str("operands use different generator sets"),
            Error::TooManyGenerators(n) => write!(f, "{n} generators requested, at most 8 supported"),
            Error::DuplicateGenerator(name) => write!(f, "generator `{name}` declared twice"),
            Error::NotInvertible => f.write_str("element has zero body and is not invertible"),
            Error::UnknownPair(k) => write!(f, "generator pair {k} does not exist"),
            Error::NotOddLinear => f.write_str("expected an odd element of degree one"),
            Error::NonTerminatingSeries => f.write_str("operator exponential series does not terminate"),
            Error::NotALadder { anticommutator, square } => write!(
                f,
                "not a fermion ladder operator ({{L,L†}} - I = {anticommutator:e}, L² = {square:e})"
            ),
            Error::VacuumAmplitudeZero => f.write_str("vacuum amplitude has zero body"),
            Error::TruncationTooSmall { nmax, tail } => {
                write!(f, "truncation nmax = {nmax} leaves tail mass {tail:e}")
            }
            Error::SeriesStalled { terms } => write!(f, "power series did not converge in {terms} terms"),
            Error::StepTooLarge { deviation } => {
                write!(f, "step halving changed the endpoint by {deviation:e}")
            }
            Error::NotHermitian { t, deviation } => {
                write!(f, "Hamiltonian is not self-adjoint at t = {t} (deviation {deviation:e})")
            }
            Error::TruncationBreach { t, tail } => {
                write!(f, "Fock-space tail mass {tail:e} at t = {t} exceeds the truncation guard")
            }
            Error::GeneratorCollision => {
                f.write_str("forcing generator already appears in the initial eigenvalue")
            }
            Error::GridTooCoarse { ratio } => {
                write!(f, "finite-difference refinement ratio {ratio} is not second order")
            }
            Error::InvalidGrid => f.write_str("time grid needs t_end > 0, dt > 0 and stride >= 1"),
            Error::WrongKind => f.write_str("Hamiltonian kind does not match the operation"),
            Error::MissingEigenvalues => f.write_str("trajectory carries no eigenvalue samples"),
            Error::NotDegreeOne => f.write_str("path components must be degree-one generators"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;

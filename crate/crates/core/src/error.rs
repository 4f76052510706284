//! Crate-wide error type.
//!
//! Every fallible operation in the crate returns [`Result`].  Variants carry
//! enough context to act on the failure: coprimality failures carry the
//! offending gcd, dimension failures carry the sizes involved, and budget
//! failures carry the budget that was exhausted.

use std::fmt;

use crate::polyring::Poly;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The extended gcd of `(0, 0)` was requested.
    BothZero,
    /// A modular inverse was requested for an element that shares a
    /// nontrivial factor with the modulus.  Carries that gcd.
    NotCoprime { gcd: Poly },
    /// A generator fails the prime-spot condition `gcd(g, phi) = 1`.
    /// Carries the nontrivial gcd as a witness.
    NotPrimeSpot { gcd: Poly },
    /// Elements from two different quotient rings were mixed.
    ContextMismatch,
    /// The modulus is not monic with integer coefficients.
    NotMonic,
    /// The modulus has degree below one.
    DegreeTooSmall,
    /// The modulus has a zero constant term, so `x` is a zero divisor.
    ZeroConstantTerm,
    /// The modulus has a repeated complex root.
    NotSquarefree,
    /// Root refinement failed to converge within the iteration cap.
    RootIteration { iterations: usize },
    /// An operation is only defined for the modulus `x^n - 1`.
    UnsupportedModulus,
    /// An operation is only implemented up to a dimension cap.
    UnsupportedDimension { max: usize, got: usize },
    /// Vector or matrix sizes do not line up.
    DimensionMismatch { expected: usize, got: usize },
    /// The columns of a proposed basis are linearly dependent.
    RankDeficient,
    /// A nonzero generator (or at least one in a list) is required.
    ZeroInput,
    /// A full-rank (square, invertible) basis is required.
    NotFullRank,
    /// A vector is not a member of the lattice it was resolved against.
    NotMember,
    /// A claimed sublattice has a column outside the ambient lattice.
    NotSublattice { column: usize },
    /// Two lattices that must share a rank do not.
    RankMismatch,
    /// Exhaustive enumeration exceeded its node budget.
    EnumerationBudget { budget: u64 },
    /// A root-finding bracket could not be established.
    BracketFailure,
    /// Malformed textual or JSON input.
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BothZero => write!(f, "extended gcd of (0, 0) is undefined"),
            Error::NotCoprime { gcd } => {
                write!(f, "element is not invertible: gcd with modulus is {}", gcd)
            }
            Error::NotPrimeSpot { gcd } => {
                write!(f, "generator is not a prime spot: gcd with modulus is {}", gcd)
            }
            Error::ContextMismatch => write!(f, "operands belong to different quotient rings"),
            Error::NotMonic => write!(f, "modulus must be monic with integer coefficients"),
            Error::DegreeTooSmall => write!(f, "modulus must have degree at least one"),
            Error::ZeroConstantTerm => write!(f, "modulus must have a nonzero constant term"),
            Error::NotSquarefree => write!(f, "modulus must be squarefree"),
            Error::RootIteration { iterations } => {
                write!(f, "root refinement did not converge in {} iterations", iterations)
            }
            Error::UnsupportedModulus => {
                write!(f, "operation requires the modulus x^n - 1")
            }
            Error::UnsupportedDimension { max, got } => {
                write!(f, "operation supports dimension at most {}, got {}", max, got)
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            Error::RankDeficient => write!(f, "basis columns are linearly dependent"),
            Error::ZeroInput => write!(f, "at least one nonzero generator is required"),
            Error::NotFullRank => write!(f, "operation requires a full-rank lattice"),
            Error::NotMember => write!(f, "vector is not a lattice member"),
            Error::NotSublattice { column } => {
                write!(f, "column {} is not a member of the ambient lattice", column)
            }
            Error::RankMismatch => write!(f, "lattices do not share a common rank"),
            Error::EnumerationBudget { budget } => {
                write!(f, "enumeration exceeded its budget of {} nodes", budget)
            }
            Error::BracketFailure => write!(f, "failed to bracket the requested root"),
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

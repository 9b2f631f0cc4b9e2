//! Error type shared across the pipeline.

use std::fmt;

/// Everything that can go wrong between parsing a curve and emitting Q(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic must be an odd prime.
    EvenCharacteristic,
    /// p failed a primality check.
    NotPrime(u64),
    /// The defining polynomial is not monic.
    NotMonic,
    /// The defining polynomial has the wrong degree (must be odd, >= 3).
    WrongDegree { expected: String, got: usize },
    /// gcd(P, P') is nonconstant over F_q: the curve is singular.
    NotSquarefree,
    /// Inversion of an element divisible by p.
    NotUnit,
    /// The extension modulus is not irreducible mod p.
    NotIrreducible,
    /// Newton iteration for the Frobenius image of the generator stalled
    /// (the modulus is not separable mod p).
    NewtonNonconvergence,
    /// Requested digit count outside [1, Nw].
    PrecisionOutOfRange { requested: u32, available: u32 },
    /// p^Nw does not fit the fixed-width residue representation.
    CapacityExceeded { p: u64, nw: u32 },
    /// A division needed a larger p-power shift than the guard budget.
    GuardExhausted { shift: u32, guard: u32 },
    /// A numerator coefficient kept a nonzero extension component.
    NotRational { index: usize },
    /// No integer in the Weil window matches the computed residue.
    LiftAmbiguous { index: usize, residue: u64 },
    /// Point enumeration would exceed the configured budget.
    BudgetExceeded { needed: u128, budget: u128 },
    /// A polynomial division hit a non-unit leading coefficient.
    NonUnitLeading,
    /// Malformed textual input.
    Parse { position: String, message: String },
    /// A user-supplied precision override violates the plan inequalities.
    BadOverride(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvenCharacteristic => write!(f, "characteristic must be an odd prime"),
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::NotMonic => write!(f, "defining polynomial must be monic"),
            Error::WrongDegree { expected, got } => {
                write!(f, "wrong degree: expected {}, got {}", expected, got)
            }
            Error::NotSquarefree => write!(f, "defining polynomial has a repeated root over F_q"),
            Error::NotUnit => write!(f, "element is divisible by p and has no inverse"),
            Error::NotIrreducible => write!(f, "extension modulus is not irreducible mod p"),
            Error::NewtonNonconvergence => {
                write!(f, "Newton iteration for the generator image did not converge")
            }
            Error::PrecisionOutOfRange { requested, available } => {
                write!(f, "precision {} outside [1, {}]", requested, available)
            }
            Error::CapacityExceeded { p, nw } => {
                write!(f, "p^Nw = {}^{} exceeds the 62-bit residue capacity", p, nw)
            }
            Error::GuardExhausted { shift, guard } => {
                write!(f, "division needs a p^{} shift but only {} guard digits", shift, guard)
            }
            Error::NotRational { index } => {
                write!(f, "coefficient a_{} has a nonzero extension component", index)
            }
            Error::LiftAmbiguous { index, residue } => write!(
                f,
                "no integer in the Weil window for a_{} matches residue {}",
                index, residue
            ),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {} elements exceeds budget {}", needed, budget)
            }
            Error::NonUnitLeading => write!(f, "division by a non-unit leading coefficient"),
            Error::Parse { position, message } => write!(f, "parse error at {}: {}", position, message),
            Error::BadOverride(msg) => write!(f, "invalid precision override: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

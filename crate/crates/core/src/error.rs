//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

use crate::Int;

/// Errors reported by the library.
///
/// Domain errors (violated preconditions on values) and bound exhaustion
/// are the two broad classes; verification failures of the theorem
/// pipelines get their own variants so callers can map them to distinct
/// exit statuses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// GCD of two zero polynomials is undefined.
    GcdOfZeros,
    /// Resultant requires both polynomials nonzero.
    ResultantOfZero,
    /// `reverse_poly(p, k)` needs `k >= deg p`.
    ReverseDegree { k: usize, degree: usize },
    /// p-adic valuation of zero is infinite.
    ValuationOfZero,
    /// Expected a prime argument.
    NotPrime(u64),
    /// The identically-zero sequence has no positive minimal order.
    ZeroSequence,
    /// Operation needs a recurrence of positive order.
    OrderZero,
    /// `phi_b` input must have constant term 1.
    ConstantTermNotOne,
    /// Subsequence offset must satisfy `c < b`.
    OffsetOutOfRange { offset: u64, step: u64 },
    /// Modulus must be positive (or nonzero where signed).
    ZeroModulus,
    /// A modular scan exceeded the configured state cap.
    BoundExceeded { cap: u64 },
    /// The prime power is a null divisor, violating a precondition.
    NullDivisorPower { prime: u64, exponent: u64 },
    /// The index of a prime could not be bounded below the cap.
    IndexCapExceeded { prime: u64, cap: u64 },
    /// Verification precondition: recurrence is degenerate.
    PreconditionDegenerate { cyclotomic_index: u64 },
    /// Verification precondition: minimal order too small.
    PreconditionOrder { order: usize },
    /// Divisor counts failed to grow strictly across checkpoints.
    GrowthNotStrict { counts: alloc::vec::Vec<u64> },
    /// Generalized-recurrence growth window check failed.
    GrowthUnconfirmed { window: u64 },
    /// Coprimality hypothesis failed at index `n`.
    HypothesisFailed { n: u64, witness: Int },
    /// Free-form invariant violation (indicates a bug, not bad input).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GcdOfZeros => write!(f, "gcd of two zero polynomials is undefined"),
            Error::ResultantOfZero => write!(f, "resultant requires nonzero polynomials"),
            Error::ReverseDegree { k, degree } => {
                write!(f, "reverse length {k} is below polynomial degree {degree}")
            }
            Error::ValuationOfZero => write!(f, "p-adic valuation of zero is infinite"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroSequence => write!(f, "the zero sequence has no positive minimal order"),
            Error::OrderZero => write!(f, "operation requires a recurrence of positive order"),
            Error::ConstantTermNotOne => write!(f, "polynomial must have constant term 1"),
            Error::OffsetOutOfRange { offset, step } => {
                write!(f, "offset {offset} must be smaller than step {step}")
            }
            Error::ZeroModulus => write!(f, "modulus must be nonzero"),
            Error::BoundExceeded { cap } => {
                write!(f, "modular scan exceeded the state cap of {cap}")
            }
            Error::NullDivisorPower { prime, exponent } => {
                write!(f, "{prime}^{exponent} is a null divisor of the sequence")
            }
            Error::IndexCapExceeded { prime, cap } => {
                write!(f, "index of {prime} not bounded below cap {cap}")
            }
            Error::PreconditionDegenerate { cyclotomic_index } => {
                write!(
                    f,
                    "recurrence is degenerate (root ratio is a primitive {cyclotomic_index}-th root of unity)"
                )
            }
            Error::PreconditionOrder { order } => {
                write!(f, "minimal order {order} is too small (order > 1 required)")
            }
            Error::GrowthNotStrict { counts } => {
                write!(f, "divisor counts not strictly increasing: {counts:?}")
            }
            Error::GrowthUnconfirmed { window } => {
                write!(f, "|a_n| not strictly increasing over a window of {window} terms")
            }
            Error::HypothesisFailed { n, witness } => {
                write!(f, "coprimality hypothesis fails at n = {n} (gcd witness {witness})")
            }
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

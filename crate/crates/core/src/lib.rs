//! Exact analysis of prime divisors of integer sequences defined by linear
//! and generalized recurrences.
//!
//! Everything here is exact: terms are arbitrary-precision integers,
//! polynomial arithmetic is over `Z`, and divisor decisions come from
//! modular period scans rather than floating point or factorization of
//! large terms.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line front end live in the companion `recurseq` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod divisors;
pub mod error;
pub mod modular;
pub mod primes;
pub mod recurrence;
pub mod topology;
pub mod transform;

pub use error::Error;

/// Arbitrary-precision signed integer used for all sequence terms and
/// polynomial coefficients.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision nonnegative integer, used for moduli.
pub type Nat = num_bigint::BigUint;

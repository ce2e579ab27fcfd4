//! Exact integer and integer-polynomial arithmetic.
//!
//! Dense polynomials over arbitrary-precision integers, with the primitive
//! GCD, subresultant resultants, coefficient reversal and cyclotomic
//! polynomials needed by the recurrence machinery.

mod arith;
mod cyclotomic;
mod poly;
mod resultant;

pub use arith::{binomial, p_adic_valuation};
pub use cyclotomic::cyclotomic;
pub use poly::{poly_gcd, reverse_poly, IntPoly};
pub use resultant::{resultant, resultant_bivariate_eval};

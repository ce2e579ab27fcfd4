//! Linear and generalized recurrence sequences: exact evaluation,
//! generating functions, minimal-order reduction and degeneracy.

mod degeneracy;
mod linear;
mod nonlinear;
mod source;

pub use degeneracy::{is_degenerate, Degeneracy};
pub use linear::{
    from_polynomial, generating_function, minimal_order, LinearRecurrence, RationalGF,
};
pub use nonlinear::{MultiPoly, NonlinearRecurrence, Sign};
pub use source::SequenceSource;

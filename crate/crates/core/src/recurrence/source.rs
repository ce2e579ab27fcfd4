//! A unifying handle over the sequence kinds the analyses accept.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::IntPoly;
use crate::Int;

use super::linear::{from_polynomial, LinearRecurrence};
use super::nonlinear::NonlinearRecurrence;

/// A sequence of integers given by a linear recurrence, a generalized
/// recurrence, or a polynomial `n -> f(n)`. Every variant supports exact
/// term evaluation and exact evaluation modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSource {
    Linear(LinearRecurrence),
    Nonlinear(NonlinearRecurrence),
    Polynomial(IntPoly),
}

impl SequenceSource {
    /// Streaming exact terms from `a_0`.
    pub fn terms(&self) -> SourceTerms<'_> {
        match self {
            SequenceSource::Linear(rec) => SourceTerms::Linear(rec.terms()),
            SequenceSource::Nonlinear(rec) => SourceTerms::Nonlinear(rec.terms()),
            SequenceSource::Polynomial(f) => SourceTerms::Polynomial { f, n: Int::from(0u32) },
        }
    }

    /// Exact terms `a_0..a_{n_max}` inclusive.
    pub fn evaluate(&self, n_max: u64) -> Vec<Int> {
        self.terms().take(n_max as usize + 1).collect()
    }

    pub fn term(&self, n: u64) -> Int {
        match self {
            SequenceSource::Polynomial(f) => f.eval(&Int::from(n)),
            _ => self.terms().nth(n as usize).unwrap(),
        }
    }

    /// A linear recurrence presenting the same residue stream, used by the
    /// modular scanners. Polynomial sequences go through their
    /// signed-binomial relation; generalized recurrences have none.
    pub(crate) fn modular_linear(&self) -> Option<LinearRecurrence> {
        match self {
            SequenceSource::Linear(rec) => Some(rec.clone()),
            SequenceSource::Polynomial(f) => Some(from_polynomial(f)),
            SequenceSource::Nonlinear(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SequenceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSource::Linear(rec) => write!(f, "{rec}"),
            SequenceSource::Nonlinear(rec) => write!(f, "{rec}"),
            SequenceSource::Polynomial(p) => write!(f, "polynomial{{{p}}}"),
        }
    }
}

impl From<LinearRecurrence> for SequenceSource {
    fn from(rec: LinearRecurrence) -> Self {
        SequenceSource::Linear(rec)
    }
}

impl From<NonlinearRecurrence> for SequenceSource {
    fn from(rec: NonlinearRecurrence) -> Self {
        SequenceSource::Nonlinear(rec)
    }
}

pub enum SourceTerms<'a> {
    Linear(super::linear::Terms<'a>),
    Nonlinear(super::nonlinear::NonlinearTerms<'a>),
    Polynomial { f: &'a IntPoly, n: Int },
}

impl Iterator for SourceTerms<'_> {
    type Item = Int;

    fn next(&mut self) -> Option<Int> {
        match self {
            SourceTerms::Linear(it) => it.next(),
            SourceTerms::Nonlinear(it) => it.next(),
            SourceTerms::Polynomial { f, n } => {
                let v = f.eval(n);
                *n += 1;
                Some(v)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_terms() {
        let src = SequenceSource::Polynomial(IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(src.evaluate(4), [1, 2, 5, 10, 17].map(Int::from));
        assert_eq!(src.term(10), Int::from(101));
    }

    #[test]
    fn polynomial_modular_relation_matches_direct_evaluation() {
        let f = IntPoly::from_i64(&[3, -2, 0, 1]);
        let src = SequenceSource::Polynomial(f);
        let rec = src.modular_linear().unwrap();
        assert_eq!(rec.evaluate(25), src.evaluate(25));
    }
}

//! Generalized recurrences `a_{n+k+1} = ±a_n + f(a_{n+1}, ..., a_{n+k})`.
//!
//! The `±a_n` term makes the state map invertible, which is what forces
//! pure periodicity modulo every positive integer.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
#[cfg(test)]
use num_traits::One;

use crate::error::Error;
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(&self, v: Int) -> Int {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    pub fn from_i8(s: i8) -> Result<Self, Error> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Internal(alloc::format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// Sparse integer polynomial in `arity` variables: a list of
/// (exponent-vector, coefficient) terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: Vec<(Vec<u32>, Int)>,
}

impl MultiPoly {
    pub fn new(arity: usize, terms: Vec<(Vec<u32>, Int)>) -> Result<Self, Error> {
        for (exps, _) in &terms {
            if exps.len() != arity {
                return Err(Error::Internal(alloc::format!(
                    "monomial arity {} does not match polynomial arity {arity}",
                    exps.len()
                )));
            }
        }
        Ok(MultiPoly { arity, terms })
    }

    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Vec<u32>, Int)] {
        &self.terms
    }

    pub fn eval(&self, args: &[Int]) -> Int {
        debug_assert_eq!(args.len(), self.arity);
        let mut acc = Int::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (arg, &e) in args.iter().zip(exps) {
                if e > 0 {
                    term *= arg.pow(e);
                }
            }
            acc += term;
        }
        acc
    }
}

/// Recurrence `a_{n+k+1} = sign * a_n + f(a_{n+1}, ..., a_{n+k})` with
/// `k = f.arity()` and `k + 1` initial terms `a_0..a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonlinearRecurrence {
    sign: Sign,
    f: MultiPoly,
    initial: Vec<Int>,
}

impl NonlinearRecurrence {
    pub fn new(sign: Sign, f: MultiPoly, initial: Vec<Int>) -> Result<Self, Error> {
        if f.arity() == 0 {
            return Err(Error::OrderZero);
        }
        if initial.len() != f.arity() + 1 {
            return Err(Error::Internal(alloc::format!(
                "{} initial terms given, need k + 1 = {}",
                initial.len(),
                f.arity() + 1
            )));
        }
        Ok(NonlinearRecurrence { sign, f, initial })
    }

    pub fn k(&self) -> usize {
        self.f.arity()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn initial(&self) -> &[Int] {
        &self.initial
    }

    pub fn terms(&self) -> NonlinearTerms<'_> {
        NonlinearTerms {
            rec: self,
            window: Vec::with_capacity(self.k() + 1),
            next_index: 0,
        }
    }

    pub fn evaluate(&self, n_max: u64) -> Vec<Int> {
        self.terms().take(n_max as usize + 1).collect()
    }
}

impl fmt::Display for NonlinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        write!(f, "generalized{{k={}, sign={sign}, terms=[", self.k())?;
        for (i, (exps, c)) in self.f.terms().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}*x^{exps:?}")?;
        }
        write!(f, "], initial={:?}}}", self.initial)
    }
}

pub struct NonlinearTerms<'a> {
    rec: &'a NonlinearRecurrence,
    window: Vec<Int>,
    next_index: usize,
}

impl Iterator for NonlinearTerms<'_> {
    type Item = Int;

    fn next(&mut self) -> Option<Int> {
        let width = self.rec.k() + 1;
        let value = if self.next_index < width {
            self.rec.initial[self.next_index].clone()
        } else {
            self.rec.sign.apply(self.window[0].clone()) + self.rec.f.eval(&self.window[1..])
        };
        if self.window.len() == width {
            self.window.remove(0);
        }
        self.window.push(value.clone());
        self.next_index += 1;
        Some(value)
    }
}

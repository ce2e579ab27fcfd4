//! Linear recurrence sequences with constant integer coefficients.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{binomial, poly_gcd, IntPoly};
use crate::error::Error;
use crate::Int;

/// A sequence satisfying `a_{n+k} = r_1 a_{n+k-1} + ... + r_k a_n`, given by
/// the coefficients `r_1..r_k` (with `r_k != 0`) and the initial terms
/// `a_0..a_{k-1}`. Indexing starts at 0 throughout.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    coeffs: Vec<Int>,
    initial: Vec<Int>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<Int>, initial: Vec<Int>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::OrderZero);
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::Internal(alloc::format!(
                "last recurrence coefficient r_{} must be nonzero",
                coeffs.len()
            )));
        }
        if initial.len() != coeffs.len() {
            return Err(Error::Internal(alloc::format!(
                "{} initial terms given for an order-{} relation",
                initial.len(),
                coeffs.len()
            )));
        }
        Ok(LinearRecurrence { coeffs, initial })
    }

    pub fn from_i64(coeffs: &[i64], initial: &[i64]) -> Result<Self, Error> {
        LinearRecurrence::new(
            coeffs.iter().map(|&c| Int::from(c)).collect(),
            initial.iter().map(|&c| Int::from(c)).collect(),
        )
    }

    /// Order of the relation as given (not necessarily minimal).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[Int] {
        &self.initial
    }

    /// The characteristic polynomial `g(x) = 1 - r_1 x - ... - r_k x^k`.
    /// Its reversal is the monic polynomial whose roots are the
    /// characteristic roots.
    pub fn characteristic_poly(&self) -> IntPoly {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(Int::one());
        coeffs.extend(self.coeffs.iter().map(|r| -r));
        IntPoly::new(coeffs)
    }

    /// Inverse of [`characteristic_poly`](Self::characteristic_poly):
    /// requires `g(0) = 1` and `deg g >= 1`.
    pub fn from_characteristic(g: &IntPoly, initial: Vec<Int>) -> Result<Self, Error> {
        if !g.coeff(0).is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let k = g.degree().filter(|&k| k >= 1).ok_or(Error::OrderZero)?;
        let coeffs = (1..=k).map(|i| -g.coeff(i)).collect();
        LinearRecurrence::new(coeffs, initial)
    }

    /// GCD of the recurrence coefficients (the hypothesis of the
    /// finite-index lemma), nonnegative.
    pub fn coefficient_gcd(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Streaming exact terms `a_0, a_1, ...`; single consumer per stream.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            rec: self,
            window: Vec::with_capacity(self.order()),
            next_index: 0,
        }
    }

    pub fn term(&self, n: u64) -> Int {
        self.terms().nth(n as usize).unwrap()
    }

    /// Exact terms `a_0..a_{n_max}` inclusive.
    pub fn evaluate(&self, n_max: u64) -> Vec<Int> {
        self.terms().take(n_max as usize + 1).collect()
    }

    /// Applies the relation to a slice of consecutive terms: checks that
    /// every window satisfies it exactly.
    pub fn annihilates(&self, terms: &[Int]) -> bool {
        let k = self.order();
        terms.windows(k + 1).all(|w| {
            let mut acc = Int::zero();
            for (i, r) in self.coeffs.iter().enumerate() {
                acc += r * &w[k - 1 - i];
            }
            acc == w[k]
        })
    }
}

impl fmt::Debug for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "linear{{coeffs={:?}, initial={:?}}}", self.coeffs, self.initial)
    }
}

/// Iterator over exact terms of a [`LinearRecurrence`].
pub struct Terms<'a> {
    rec: &'a LinearRecurrence,
    window: Vec<Int>,
    next_index: usize,
}

impl Iterator for Terms<'_> {
    type Item = Int;

    fn next(&mut self) -> Option<Int> {
        let k = self.rec.order();
        let value = if self.next_index < k {
            self.rec.initial[self.next_index].clone()
        } else {
            let mut acc = Int::zero();
            for (i, r) in self.rec.coeffs.iter().enumerate() {
                acc += r * &self.window[k - 1 - i];
            }
            acc
        };
        if self.window.len() == k {
            self.window.remove(0);
        }
        self.window.push(value.clone());
        self.next_index += 1;
        Some(value)
    }
}

/// Rational generating function `f(x) / g(x)` with `g(0) = 1` and
/// `deg f < deg g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalGF {
    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denominator
    }

    /// First `n` series coefficients of `f/g`, exact.
    pub fn expand(&self, n: usize) -> Vec<Int> {
        let g = &self.denominator;
        let mut out: Vec<Int> = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = self.numerator.coeff(i);
            for j in 1..=i.min(g.degree().unwrap_or(0)) {
                acc -= g.coeff(j) * &out[i - j];
            }
            out.push(acc);
        }
        out
    }
}

/// The generating function `sum a_n x^n = f(x)/g(x)` of a linear
/// recurrence sequence: `f` is the degree-truncated product of `g` with
/// the initial-term polynomial.
pub fn generating_function(rec: &LinearRecurrence) -> RationalGF {
    let k = rec.order();
    let g = rec.characteristic_poly();
    let head = IntPoly::new(rec.initial().to_vec());
    let f = (&g * &head).truncated(k);
    debug_assert!(f.degree().map_or(true, |d| d < k));
    RationalGF {
        numerator: f,
        denominator: g,
    }
}

/// Reduces a recurrence to its minimal order by cancelling the GCD of the
/// generating function's numerator and denominator.
///
/// The identically-zero sequence has no positive minimal order and is a
/// domain error.
pub fn minimal_order(rec: &LinearRecurrence) -> Result<LinearRecurrence, Error> {
    let gf = generating_function(rec);
    if gf.numerator.is_zero() {
        return Err(Error::ZeroSequence);
    }
    let d = poly_gcd(&gf.numerator, &gf.denominator)?;
    if d.degree() == Some(0) {
        return Ok(rec.clone());
    }
    let mut g = gf
        .denominator
        .div_exact(&d)
        .expect("primitive gcd divides the denominator");
    let c0 = g.coeff(0);
    debug_assert!(c0.is_one() || (-&c0).is_one(), "g(0) = 1 and d(0) | g(0)");
    if c0.is_negative() {
        g = -g;
    }
    let k = g.degree().expect("nonzero sequence keeps a pole");
    debug_assert!(k >= 1);
    LinearRecurrence::from_characteristic(&g, rec.initial()[..k].to_vec())
}

/// The order-(k+1) linear recurrence satisfied by `n -> f(n)` for a
/// polynomial `f` of degree `k`: coefficients are signed binomials and the
/// initial terms are `f(0)..f(k)`.
pub fn from_polynomial(f: &IntPoly) -> LinearRecurrence {
    let k = f.degree().unwrap_or(0) as u64;
    let coeffs: Vec<Int> = (1..=k + 1)
        .map(|j| {
            let c = binomial(k + 1, j);
            if j % 2 == 0 {
                -c
            } else {
                c
            }
        })
        .collect();
    let initial: Vec<Int> = (0..=k).map(|n| f.eval(&Int::from(n))).collect();
    LinearRecurrence::new(coeffs, initial).expect("binomial leading coefficient is ±1")
}

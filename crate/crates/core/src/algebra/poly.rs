//! Dense integer-coefficient polynomials.

use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Int;

/// Polynomial over `Z` with dense ascending coefficients: `coeffs[i]` is
/// the coefficient of `x^i`. The zero polynomial is the empty list; no
/// trailing zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, stripping trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: Int, n: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); n + 1];
        coeffs[n] = c;
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers, ascending.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Int::from(i as u64 + 1))
                .collect(),
        )
    }

    /// GCD of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content. Sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        self.div_scalar_exact(&c)
            .expect("content divides every coefficient")
    }

    pub fn mul_scalar(&self, s: &Int) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiplies by `x^n`.
    pub fn shift_up(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); n];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Truncation to degree `< n` (the first `n` coefficients).
    pub fn truncated(&self, n: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Exact scalar division; `None` if some coefficient is not divisible.
    pub fn div_scalar_exact(&self, s: &Int) -> Option<IntPoly> {
        if s.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(s);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly { coeffs: out })
    }

    /// Exact polynomial division over `Z`; `None` unless `d` divides
    /// `self` exactly with an integer quotient.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let mut rem = self.clone();
        let mut quot = vec![Int::zero(); self.coeffs.len().saturating_sub(dd)];
        let lead = d.leading().unwrap();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                return None;
            }
            let (q, r) = rem.leading().unwrap().div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            rem = rem - d.mul_scalar(&q).shift_up(dr - dd);
            quot[dr - dd] = q;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder: the `R` in `lc(d)^(deg self - deg d + 1) * self = Q*d + R`.
    /// Requires `deg self >= deg d` and `d` nonzero.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let ds = match self.degree() {
            Some(ds) => ds,
            None => return IntPoly::zero(),
        };
        debug_assert!(ds >= dd);
        let lead = d.leading().unwrap().clone();
        let mut e = (ds - dd + 1) as u32;
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            rem = rem.mul_scalar(&lead) - d.mul_scalar(&top).shift_up(dr - dd);
            e -= 1;
        }
        rem.mul_scalar(&lead.pow(e))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Human form, e.g. `1 - 3*x + x^2`; the zero polynomial prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), Int::zero());
        }
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    /// Exact coefficient convolution (schoolbook; operands stay desk-sized).
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Returns `x^k * p(1/x)`: the coefficient list reversed within length
/// `k + 1`. Converts between the constant-term-1 characteristic form and
/// the monic form whose roots are the recurrence's characteristic roots.
pub fn reverse_poly(p: &IntPoly, k: usize) -> Result<IntPoly, Error> {
    if let Some(d) = p.degree() {
        if k < d {
            return Err(Error::ReverseDegree { k, degree: d });
        }
    } else {
        return Ok(IntPoly::zero());
    }
    let mut coeffs = vec![Int::zero(); k + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[k - i] = c.clone();
    }
    Ok(IntPoly::new(coeffs))
}

/// Primitive GCD over `Z` with positive leading coefficient, computed by a
/// primitive pseudo-remainder sequence.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> Result<IntPoly, Error> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    if a.leading().map(Signed::is_negative).unwrap_or(false) {
        a = -a;
    }
    Ok(a)
}

impl IntPoly {
    /// Squarefree part: `self / gcd(self, self')`, primitive. Preserves the
    /// set of roots while dropping multiplicities.
    pub fn squarefree_part(&self) -> Result<IntPoly, Error> {
        if self.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if self.degree() == Some(0) {
            return Ok(IntPoly::one());
        }
        let g = poly_gcd(self, &self.derivative())?;
        let s = self
            .div_exact(&g)
            .ok_or_else(|| Error::Internal("gcd(p, p') must divide p".to_owned()))?;
        Ok(s.primitive_part())
    }
}

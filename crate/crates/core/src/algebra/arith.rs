//! Small integer helpers shared across the crate.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::primes::is_prime_u64;
use crate::Int;

/// Largest `e` with `p^e | n`. The valuation of zero is infinite, hence a
/// domain error.
pub fn p_adic_valuation(p: u64, n: &Int) -> Result<u64, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = Int::from(p);
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Binomial coefficient `C(n, k)`, exact.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

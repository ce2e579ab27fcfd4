//! Cyclotomic polynomials by iterated exact division.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::Int;

use super::poly::IntPoly;

/// The n-th cyclotomic polynomial, obtained by dividing `x^n - 1` by the
/// cyclotomic polynomials of all proper divisors of `n`.
///
/// Panics if `n == 0`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut cache: Vec<IntPoly> = Vec::new();
    for m in 1..=n {
        if n % m != 0 {
            cache.push(IntPoly::zero());
            continue;
        }
        let mut phi = x_pow_minus_one(m);
        for d in 1..m {
            if m % d == 0 {
                phi = phi
                    .div_exact(&cache[(d - 1) as usize])
                    .expect("x^m - 1 is divisible by cyclotomics of divisors");
            }
        }
        cache.push(phi);
    }
    cache.pop().unwrap()
}

fn x_pow_minus_one(m: u64) -> IntPoly {
    let mut coeffs = vec![Int::zero(); m as usize + 1];
    coeffs[0] = Int::from(-1);
    coeffs[m as usize] = Int::one();
    IntPoly::new(coeffs)
}

//! Primality testing, sieving and factorization at desk scale.
//!
//! Trial division handles everything the recurrence machinery normally
//! meets; deterministic Miller-Rabin plus Brent's variant of Pollard rho
//! cover the occasional large cofactor from coefficient scaling.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Int, Nat};

/// Primes up to `bound`, inclusive, by a sieve of Eratosthenes.
pub fn sieve_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-base set is exact over the
/// full u64 range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_nat(base: &Nat, exp: &Nat, m: &Nat) -> Nat {
    base.modpow(exp, m)
}

/// Miller-Rabin for arbitrary-precision integers: deterministic base set
/// below 3.3e24, a fixed 30-base screen above (composites surviving it do
/// not occur at the scales this crate produces).
pub fn is_prime_nat(n: &Nat) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let two = Nat::from(2u32);
    if (n % &two).is_zero() {
        return false;
    }
    let one = Nat::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let bases: &[u64] = &[
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113,
    ];
    'witness: for &a in bases {
        let a = Nat::from(a);
        if &a >= n {
            continue;
        }
        let mut x = pow_mod_nat(&a, &d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's totient by trial factorization; intended for small `n`.
pub fn euler_phi_u64(n: u64) -> u64 {
    let mut n = n;
    let mut phi = 1u64;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            n /= d;
            phi *= d - 1;
            while n % d == 0 {
                n /= d;
                phi *= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

fn pollard_rho_u64(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        // Brent's cycle detection with batched gcds
        let mut x = 2u64;
        let mut y = 2u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut xs = 0u64;
        let m = 128u64;
        let mut r = 1u64;
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                xs = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            // backtrack one step at a time
            g = 1;
            let mut ys = xs;
            while g == 1 {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
            }
        }
        if g != n && g != 1 {
            return g;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<(Nat, u64)>) {
    let mut n = n;
    let push = |p: u64, e: u64, out: &mut Vec<(Nat, u64)>| {
        out.push((Nat::from(p), e));
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e, out);
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while d.saturating_mul(d) <= n && d < 1_000_000 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            push(d, e, out);
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        push(n, 1, out);
        return;
    }
    // composite with no factor below 1e6: split recursively
    let g = pollard_rho_u64(n);
    let mut parts = Vec::new();
    factor_u64_into(g, &mut parts);
    factor_u64_into(n / g, &mut parts);
    merge_factors(parts, out);
}

fn merge_factors(parts: Vec<(Nat, u64)>, out: &mut Vec<(Nat, u64)>) {
    for (p, e) in parts {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    }
}

fn pollard_rho_nat(n: &Nat) -> Nat {
    let one = Nat::one();
    let mut c = Nat::one();
    loop {
        let mut x = Nat::from(2u32);
        let mut y = x.clone();
        let mut g = Nat::one();
        let f = |v: &Nat| (v * v + &c) % n;
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x >= y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            g = diff.gcd(n);
        }
        if !g.is_one() && &g != n {
            return g;
        }
        c += &one;
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
///
/// Trial division up to 1e6, then Miller-Rabin and Pollard rho on what
/// remains. `factor(1) = []`.
pub fn factor(n: &Int) -> Vec<(Nat, u64)> {
    let mut mag = n.magnitude().clone();
    assert!(!mag.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    if let Some(small) = mag.to_u64() {
        factor_u64_into(small, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        return out;
    }
    // strip small primes first so the big cofactor is odd and rough
    for p in sieve_primes(1_000_000) {
        let pn = Nat::from(p);
        let mut e = 0;
        loop {
            let (q, r) = mag.div_rem(&pn);
            if !r.is_zero() {
                break;
            }
            mag = q;
            e += 1;
        }
        if e > 0 {
            out.push((pn, e));
        }
        if let Some(small) = mag.to_u64() {
            factor_u64_into(small, &mut out);
            out.sort_by(|a, b| a.0.cmp(&b.0));
            return out;
        }
    }
    let mut stack = vec![mag];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_nat(&m) {
            merge_factors(vec![(m, 1)], &mut out);
            continue;
        }
        let g = pollard_rho_nat(&m);
        stack.push(&m / &g);
        stack.push(g);
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(sieve_primes(1).is_empty());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let primes = sieve_primes(2000);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), primes.binary_search(&n).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn miller_rabin_large() {
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(18_446_744_073_709_551_555));
        assert!(is_prime_nat(&(Nat::from(2u32).pow(89) - Nat::one()))); // Mersenne
    }

    #[test]
    fn factor_round_trip() {
        for n in [2u64, 12, 97, 1024, 600_851_475_143, 10_403 /* 101*103 */] {
            let fs = factor(&Int::from(n));
            let mut prod = Nat::one();
            for (p, e) in &fs {
                assert!(is_prime_nat(p));
                prod *= p.pow(*e as u32);
            }
            assert_eq!(prod, Nat::from(n));
        }
    }

    #[test]
    fn factor_negative_uses_magnitude() {
        assert_eq!(factor(&Int::from(-12)), vec![(Nat::from(2u32), 2), (Nat::from(3u32), 1)]);
    }

    #[test]
    fn factor_big_semiprime() {
        // 1e6-rough semiprime forces the rho path
        let p = Nat::from(1_000_003u64);
        let q = Nat::from(1_000_033u64);
        let n = Int::from(&p * &q);
        assert_eq!(factor(&n), vec![(p, 1), (q, 1)]);
    }
}

//! Executable congruence-class algebra for the profinite-flavored
//! topology on `Z` whose basic open sets are the classes `Con(a, b)`,
//! plus the variant that admits only moduli coprime to a fixed `m`.
//!
//! Continuity of `n -> a_n` is carried by its computable witness: the
//! period certificate modulo the target modulus.

use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::modular::{period_mod_capped, PeriodCertificate, DEFAULT_STATE_CAP};
use crate::primes::is_prime_u64;
use crate::recurrence::SequenceSource;
use crate::{Int, Nat};

/// The congruence class `Con(a, b) = { x in Z : x ≡ a (mod b) }`, stored
/// in canonical form `0 <= a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceClass {
    residue: Int,
    modulus: Int,
}

impl CongruenceClass {
    pub fn new(a: Int, b: Int) -> Result<Self, Error> {
        if !b.is_positive() {
            return Err(Error::ZeroModulus);
        }
        Ok(CongruenceClass {
            residue: a.mod_floor(&b),
            modulus: b,
        })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self, Error> {
        CongruenceClass::new(Int::from(a), Int::from(b))
    }

    pub fn residue(&self) -> &Int {
        &self.residue
    }

    pub fn modulus(&self) -> &Int {
        &self.modulus
    }

    /// Exact membership test; the class contains negative integers too.
    pub fn member(&self, x: &Int) -> bool {
        x.mod_floor(&self.modulus) == self.residue
    }

    /// Intersection of two classes: a single class on the lcm of the
    /// moduli when the residues are compatible, empty otherwise.
    pub fn intersect(&self, other: &CongruenceClass) -> Option<CongruenceClass> {
        let egcd = self.modulus.extended_gcd(&other.modulus);
        let g = &egcd.gcd;
        let diff = &other.residue - &self.residue;
        let (q, r) = diff.div_rem(g);
        if !r.is_zero() {
            return None;
        }
        let lcm = (&self.modulus / g) * &other.modulus;
        // x = a1 + b1 * q * inv(b1/g) taken modulo lcm
        let x = &self.residue + &self.modulus * q * egcd.x;
        Some(CongruenceClass {
            residue: x.mod_floor(&lcm),
            modulus: lcm,
        })
    }
}

impl fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Con({}, {})", self.residue, self.modulus)
    }
}

/// Is `Con(a, b)` a basic open set of the variant topology attached to
/// `m`? Requires `gcd(b, |m|) = 1`; `m = 0` is a domain error.
pub fn fm_basis_valid(class: &CongruenceClass, m: &Int) -> Result<bool, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok(class.modulus.gcd(m).is_one())
}

/// The period certificate of the sequence modulo `b`: on the periodic
/// tail, the preimage of any class `Con(r, b)` under `n -> a_n` is a
/// union of index classes, which is the computable content of continuity.
pub fn continuity_certificate(
    src: &SequenceSource,
    b: &Nat,
) -> Result<PeriodCertificate, Error> {
    continuity_certificate_capped(src, b, DEFAULT_STATE_CAP)
}

pub fn continuity_certificate_capped(
    src: &SequenceSource,
    b: &Nat,
    cap: u64,
) -> Result<PeriodCertificate, Error> {
    period_mod_capped(src, b, cap)
}

/// An integer outside `{1, -1}` avoiding `Con(0, p)` for every given
/// prime: the product of the set plus one. Witnesses that no finite set
/// of primes can cover `Z \ {1, -1}` by their zero classes.
pub fn euclid_witness(primes: &[u64]) -> Result<Int, Error> {
    let mut product = Int::one();
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        product *= Int::from(p);
    }
    Ok(product + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn con(a: i64, b: i64) -> CongruenceClass {
        CongruenceClass::from_i64(a, b).unwrap()
    }

    #[test]
    fn membership_includes_negatives() {
        let odd = con(1, 2);
        assert!(odd.member(&Int::from(7)));
        assert!(odd.member(&Int::from(-3)));
        assert!(!odd.member(&Int::from(4)));
    }

    #[test]
    fn canonicalization() {
        assert_eq!(con(-1, 5), con(4, 5));
        assert_eq!(con(12, 5), con(2, 5));
        assert!(CongruenceClass::from_i64(1, 0).is_err());
        assert!(CongruenceClass::from_i64(1, -2).is_err());
    }

    #[test]
    fn crt_intersection() {
        assert_eq!(con(1, 2).intersect(&con(2, 3)), Some(con(5, 6)));
    }

    #[test]
    fn parity_conflict_is_empty() {
        assert_eq!(con(0, 2).intersect(&con(1, 4)), None);
    }

    #[test]
    fn self_intersection_is_identity() {
        let c = con(3, 7);
        assert_eq!(c.intersect(&c), Some(c.clone()));
    }

    #[test]
    fn variant_basis_validity() {
        assert!(fm_basis_valid(&con(1, 3), &Int::from(2)).unwrap());
        assert!(!fm_basis_valid(&con(0, 2), &Int::from(2)).unwrap());
        assert!(fm_basis_valid(&con(0, 2), &Int::from(1)).unwrap());
        assert!(fm_basis_valid(&con(0, 2), &Int::from(-3)).unwrap());
        assert!(fm_basis_valid(&con(5, 9), &Int::zero()).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(euclid_witness(&[2, 3]).unwrap(), Int::from(7));
        assert_eq!(euclid_witness(&[]).unwrap(), Int::from(2));
        assert_eq!(euclid_witness(&[2]).unwrap(), Int::from(3));
        assert!(euclid_witness(&[6]).is_err());
    }

    #[test]
    fn witness_avoids_zero_classes() {
        let primes = [2u64, 3, 5, 11];
        let w = euclid_witness(&primes).unwrap();
        for p in primes {
            assert!(!con(0, p as i64).member(&w));
        }
    }

    proptest! {
        // CRT result agrees with brute-force membership
        #[test]
        fn intersection_matches_brute_force(
            a1 in -40i64..40, b1 in 1i64..=30,
            a2 in -40i64..40, b2 in 1i64..=30,
        ) {
            let c1 = con(a1, b1);
            let c2 = con(a2, b2);
            let meet = c1.intersect(&c2);
            for x in -300i64..=300 {
                let xi = Int::from(x);
                let both = c1.member(&xi) && c2.member(&xi);
                match &meet {
                    Some(c) => prop_assert_eq!(both, c.member(&xi), "x = {}", x),
                    None => prop_assert!(!both, "x = {} in empty intersection", x),
                }
            }
        }

        // triple intersections stay single classes or empty
        #[test]
        fn basis_closed_under_finite_intersection(
            a1 in 0i64..12, b1 in 1i64..=12,
            a2 in 0i64..12, b2 in 1i64..=12,
            a3 in 0i64..12, b3 in 1i64..=12,
        ) {
            let step = con(a1, b1).intersect(&con(a2, b2));
            let Some(step) = step else { return Ok(()) };
            if let Some(c) = step.intersect(&con(a3, b3)) {
                // spot-check a handful of members
                for k in 0..5 {
                    let x = c.residue() + c.modulus() * Int::from(k);
                    prop_assert!(con(a1, b1).member(&x));
                    prop_assert!(con(a2, b2).member(&x));
                    prop_assert!(con(a3, b3).member(&x));
                }
            }
        }

        // the witness is coprime to every input prime
        #[test]
        fn witness_coprime(primes in prop::collection::btree_set(prop::sample::select(alloc::vec![2u64,3,5,7,11,13,17,19,23]), 0..6)) {
            let list: alloc::vec::Vec<u64> = primes.into_iter().collect();
            let w = euclid_witness(&list).unwrap();
            for p in &list {
                prop_assert!(w.gcd(&Int::from(*p)).is_one());
            }
            prop_assert!(w != Int::one() && w != Int::from(-1));
        }
    }
}

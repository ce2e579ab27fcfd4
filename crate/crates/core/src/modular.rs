//! Residue streams and eventual periodicity of sequences modulo `m`:
//! period certificates, null divisors, prime indices and per-class growth.
//!
//! Period detection runs Brent's cycle-finding on the state-vector orbit,
//! so memory stays constant no matter how long the scan; the state cap
//! bounds time instead.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::primes::{is_prime_u64, mul_mod};
use crate::recurrence::{NonlinearRecurrence, LinearRecurrence, SequenceSource, Sign};
use crate::{Int, Nat};

/// Default cap on `preperiod + period` for a single modular scan.
/// Override per call (the CLI exposes `RECURSEQ_STATE_CAP`).
pub const DEFAULT_STATE_CAP: u64 = 100_000_000;

/// Witness of eventual periodicity modulo `m`: the state vector at
/// `n = preperiod` equals the one at `n = preperiod + period`, both
/// minimal. `preperiod` is zero whenever the state map is invertible
/// modulo `m` (in particular when `gcd(r_k, m) = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodCertificate {
    pub modulus: Nat,
    pub preperiod: u64,
    pub period: u64,
    /// Number of distinct state vectors on the orbit (`preperiod + period`).
    pub cycle_residue_states: u64,
}

pub(crate) trait ResidueRing {
    type Elem: Clone + PartialEq;
    fn reduce(&self, x: &Int) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.reduce(&Int::one());
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) struct SmallRing(pub u64);

impl ResidueRing for SmallRing {
    type Elem = u64;

    fn reduce(&self, x: &Int) -> u64 {
        x.mod_floor(&Int::from(self.0))
            .to_u64()
            .expect("residue fits the small modulus")
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        // a, b < m <= 2^64 - 1: go through u128 to dodge overflow
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - *a
        }
    }
}

pub(crate) struct BigRing(pub Nat);

impl ResidueRing for BigRing {
    type Elem = Nat;

    fn reduce(&self, x: &Int) -> Nat {
        x.mod_floor(&Int::from(self.0.clone()))
            .magnitude()
            .clone()
    }

    fn add(&self, a: &Nat, b: &Nat) -> Nat {
        (a + b) % &self.0
    }

    fn mul(&self, a: &Nat, b: &Nat) -> Nat {
        (a * b) % &self.0
    }

    fn neg(&self, a: &Nat) -> Nat {
        if a.is_zero() {
            Nat::zero()
        } else {
            &self.0 - a
        }
    }
}

/// Residue-level state machine for one sequence modulo one ring.
/// `state()[0]` is the current term `a_n`.
pub(crate) enum Stepper<R: ResidueRing> {
    Linear {
        coeffs: Vec<R::Elem>,
        state: Vec<R::Elem>,
    },
    Nonlinear {
        negate: bool,
        terms: Vec<(Vec<u32>, R::Elem)>,
        state: Vec<R::Elem>,
    },
}

impl<R: ResidueRing> Clone for Stepper<R> {
    fn clone(&self) -> Self {
        match self {
            Stepper::Linear { coeffs, state } => Stepper::Linear {
                coeffs: coeffs.clone(),
                state: state.clone(),
            },
            Stepper::Nonlinear { negate, terms, state } => Stepper::Nonlinear {
                negate: *negate,
                terms: terms.clone(),
                state: state.clone(),
            },
        }
    }
}

impl<R: ResidueRing> Stepper<R> {
    pub(crate) fn new(src: &SequenceSource, ring: &R) -> Self {
        match src {
            SequenceSource::Nonlinear(rec) => Stepper::nonlinear(rec, ring),
            _ => {
                let rec = src
                    .modular_linear()
                    .expect("linear and polynomial sources have a linear presentation");
                Stepper::linear(&rec, ring)
            }
        }
    }

    fn linear(rec: &LinearRecurrence, ring: &R) -> Self {
        Stepper::Linear {
            coeffs: rec.coeffs().iter().map(|c| ring.reduce(c)).collect(),
            state: rec.initial().iter().map(|c| ring.reduce(c)).collect(),
        }
    }

    fn nonlinear(rec: &NonlinearRecurrence, ring: &R) -> Self {
        Stepper::Nonlinear {
            negate: rec.sign() == Sign::Minus,
            terms: rec
                .f()
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), ring.reduce(c)))
                .collect(),
            state: rec.initial().iter().map(|c| ring.reduce(c)).collect(),
        }
    }

    pub(crate) fn state(&self) -> &[R::Elem] {
        match self {
            Stepper::Linear { state, .. } | Stepper::Nonlinear { state, .. } => state,
        }
    }

    pub(crate) fn current(&self) -> &R::Elem {
        &self.state()[0]
    }

    pub(crate) fn advance(&mut self, ring: &R) {
        match self {
            Stepper::Linear { coeffs, state } => {
                let k = coeffs.len();
                let mut next = ring.reduce(&Int::zero());
                for (i, r) in coeffs.iter().enumerate() {
                    next = ring.add(&next, &ring.mul(r, &state[k - 1 - i]));
                }
                state.remove(0);
                state.push(next);
            }
            Stepper::Nonlinear { negate, terms, state } => {
                let mut next = ring.reduce(&Int::zero());
                for (exps, c) in terms.iter() {
                    let mut term = c.clone();
                    for (arg, &e) in state[1..].iter().zip(exps.iter()) {
                        if e > 0 {
                            term = ring.mul(&term, &ring.pow(arg, e));
                        }
                    }
                    next = ring.add(&next, &term);
                }
                let head = if *negate {
                    ring.neg(&state[0])
                } else {
                    state[0].clone()
                };
                next = ring.add(&next, &head);
                state.remove(0);
                state.push(next);
            }
        }
    }
}

fn brent<R: ResidueRing>(ring: &R, start: &Stepper<R>, cap: u64) -> Result<(u64, u64), Error> {
    let mut power: u64 = 1;
    let mut lam: u64 = 1;
    let mut tortoise = start.clone();
    let mut hare = start.clone();
    hare.advance(ring);
    let mut steps: u64 = 1;
    let limit = cap.saturating_mul(3).saturating_add(16);
    while tortoise.state() != hare.state() {
        if power == lam {
            tortoise = hare.clone();
            power = power.saturating_mul(2);
            lam = 0;
        }
        hare.advance(ring);
        steps += 1;
        if steps > limit {
            return Err(Error::BoundExceeded { cap });
        }
        lam += 1;
    }
    // lam is now the minimal cycle length; find the minimal preperiod
    let mut tortoise = start.clone();
    let mut hare = start.clone();
    for _ in 0..lam {
        hare.advance(ring);
    }
    let mut mu: u64 = 0;
    while tortoise.state() != hare.state() {
        tortoise.advance(ring);
        hare.advance(ring);
        mu += 1;
        if mu > cap {
            return Err(Error::BoundExceeded { cap });
        }
    }
    if mu + lam > cap {
        return Err(Error::BoundExceeded { cap });
    }
    Ok((mu, lam))
}

fn certificate<R: ResidueRing>(
    src: &SequenceSource,
    ring: &R,
    modulus: Nat,
    cap: u64,
) -> Result<PeriodCertificate, Error> {
    let start = Stepper::new(src, ring);
    let (mu, lam) = brent(ring, &start, cap)?;
    if matches!(src, SequenceSource::Nonlinear(_)) && mu != 0 {
        // the ±a_n term makes the map invertible; a preperiod here is a bug
        return Err(Error::Internal(alloc::format!(
            "generalized recurrence produced preperiod {mu} modulo {modulus}"
        )));
    }
    Ok(PeriodCertificate {
        modulus,
        preperiod: mu,
        period: lam,
        cycle_residue_states: mu + lam,
    })
}

/// Minimal preperiod and period of the sequence modulo `m`.
pub fn period_mod(src: &SequenceSource, m: &Nat) -> Result<PeriodCertificate, Error> {
    period_mod_capped(src, m, DEFAULT_STATE_CAP)
}

pub fn period_mod_capped(
    src: &SequenceSource,
    m: &Nat,
    cap: u64,
) -> Result<PeriodCertificate, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    match m.to_u64() {
        Some(small) => certificate(src, &SmallRing(small), m.clone(), cap),
        None => certificate(src, &BigRing(m.clone()), m.clone(), cap),
    }
}

/// Calls `visit(n, a_n mod m)` for `n = 0..len`; residues are reported as
/// `Nat` regardless of the internal representation.
pub(crate) fn for_each_residue<F>(
    src: &SequenceSource,
    m: &Nat,
    len: u64,
    mut visit: F,
) -> Result<(), Error>
where
    F: FnMut(u64, Nat),
{
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    match m.to_u64() {
        Some(small) => {
            let ring = SmallRing(small);
            let mut st = Stepper::new(src, &ring);
            for n in 0..len {
                visit(n, Nat::from(*st.current()));
                st.advance(&ring);
            }
        }
        None => {
            let ring = BigRing(m.clone());
            let mut st = Stepper::new(src, &ring);
            for n in 0..len {
                visit(n, st.current().clone());
                st.advance(&ring);
            }
        }
    }
    Ok(())
}

/// Fast path used by the per-prime scans: `visit(n, a_n mod m)` with `u64`
/// residues until it returns `false` or `n = len` is reached.
pub(crate) fn scan_residues_u64<F>(src: &SequenceSource, m: u64, len: u64, mut visit: F)
where
    F: FnMut(u64, u64) -> bool,
{
    let ring = SmallRing(m);
    let mut st = Stepper::new(src, &ring);
    for n in 0..len {
        if !visit(n, *st.current()) {
            return;
        }
        st.advance(&ring);
    }
}

/// Is every sufficiently late term divisible by `m`? Decided exactly from
/// the cycle portion of the period certificate.
pub fn is_null_divisor(src: &SequenceSource, m: &Nat) -> Result<bool, Error> {
    is_null_divisor_capped(src, m, DEFAULT_STATE_CAP)
}

pub fn is_null_divisor_capped(src: &SequenceSource, m: &Nat, cap: u64) -> Result<bool, Error> {
    if m.is_one() {
        return Ok(true);
    }
    let cert = period_mod_capped(src, m, cap)?;
    let mut all_zero = true;
    for_each_residue(src, m, cert.preperiod + cert.period, |n, r| {
        if n >= cert.preperiod && !r.is_zero() {
            all_zero = false;
        }
    })?;
    Ok(all_zero)
}

/// Outcome of the prime-index search: the largest `j <= cap` with `p^j` a
/// null divisor, or a cap report carrying the coefficient GCD (the
/// finite-index hypothesis) when available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeIndex {
    Bounded(u64),
    CapExceeded {
        cap: u64,
        /// `GCD(r_1..r_k)` for recurrence-backed sources; the index is
        /// guaranteed finite when this is 1.
        coefficient_gcd: Option<Int>,
    },
}

/// Largest `j <= j_cap` such that `p^j` divides all sufficiently late
/// terms (`j = 0` when `p` itself is not a null divisor).
pub fn prime_index(src: &SequenceSource, p: u64, j_cap: u64) -> Result<PrimeIndex, Error> {
    prime_index_capped(src, p, j_cap, DEFAULT_STATE_CAP)
}

pub fn prime_index_capped(
    src: &SequenceSource,
    p: u64,
    j_cap: u64,
    state_cap: u64,
) -> Result<PrimeIndex, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let base = Nat::from(p);
    let mut j = 0;
    while j < j_cap {
        let m = base.pow(j as u32 + 1);
        if is_null_divisor_capped(src, &m, state_cap)? {
            j += 1;
        } else {
            return Ok(PrimeIndex::Bounded(j));
        }
    }
    let coefficient_gcd = src.modular_linear().map(|rec| rec.coefficient_gcd());
    Ok(PrimeIndex::CapExceeded {
        cap: j_cap,
        coefficient_gcd,
    })
}

/// Per-class maxima of `|a_n|` over `n <= n_max` with `n ≡ class (mod b)`:
/// the desk-scale check that a sequence is unbounded on every congruence
/// class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMax {
    pub class: u64,
    pub max_abs: Nat,
    /// First index attaining the maximum; `None` when the class has no
    /// index at or below `n_max`.
    pub at_index: Option<u64>,
}

pub fn unbounded_on_classes(
    rec: &LinearRecurrence,
    b: u64,
    n_max: u64,
) -> Result<Vec<ClassMax>, Error> {
    if b == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut out: Vec<ClassMax> = (0..b)
        .map(|class| ClassMax {
            class,
            max_abs: Nat::zero(),
            at_index: None,
        })
        .collect();
    for (n, term) in rec.terms().take(n_max as usize + 1).enumerate() {
        let slot = &mut out[n % b as usize];
        let mag = term.magnitude();
        if slot.at_index.is_none() || *mag > slot.max_abs {
            slot.max_abs = mag.clone();
            slot.at_index = Some(n as u64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{MultiPoly, NonlinearRecurrence};
    use proptest::prelude::*;

    fn fib() -> SequenceSource {
        SequenceSource::Linear(LinearRecurrence::from_i64(&[1, 1], &[0, 1]).unwrap())
    }

    fn nat(m: u64) -> Nat {
        Nat::from(m)
    }

    #[test]
    fn pisano_period_mod_two() {
        let cert = period_mod(&fib(), &nat(2)).unwrap();
        assert_eq!((cert.preperiod, cert.period), (0, 3));
        assert_eq!(cert.cycle_residue_states, 3);
    }

    #[test]
    fn modulus_one_is_trivially_periodic() {
        let cert = period_mod(&fib(), &nat(1)).unwrap();
        assert_eq!((cert.preperiod, cert.period), (0, 1));
    }

    #[test]
    fn doubling_mod_four_has_preperiod() {
        let rec = SequenceSource::Linear(LinearRecurrence::from_i64(&[2], &[1]).unwrap());
        let cert = period_mod(&rec, &nat(4)).unwrap();
        assert_eq!((cert.preperiod, cert.period), (2, 1));
    }

    #[test]
    fn null_divisor_examples() {
        let doubling = SequenceSource::Linear(LinearRecurrence::from_i64(&[2], &[1]).unwrap());
        assert!(is_null_divisor(&doubling, &nat(4)).unwrap());
        assert!(!is_null_divisor(&fib(), &nat(2)).unwrap());
        assert!(is_null_divisor(&fib(), &nat(1)).unwrap());
    }

    #[test]
    fn prime_index_of_constant_one_is_zero() {
        let one = SequenceSource::Linear(LinearRecurrence::from_i64(&[1], &[1]).unwrap());
        for p in [2, 3, 5, 97] {
            assert_eq!(prime_index(&one, p, 64).unwrap(), PrimeIndex::Bounded(0));
        }
    }

    #[test]
    fn prime_index_fibonacci_two_is_zero() {
        assert_eq!(prime_index(&fib(), 2, 64).unwrap(), PrimeIndex::Bounded(0));
    }

    #[test]
    fn prime_index_cap_reports_gcd_hypothesis() {
        // a_n = 2^(n+2): every power of two is a null divisor
        let rec = SequenceSource::Linear(LinearRecurrence::from_i64(&[2], &[4]).unwrap());
        match prime_index(&rec, 2, 64).unwrap() {
            PrimeIndex::CapExceeded { cap, coefficient_gcd } => {
                assert_eq!(cap, 64);
                assert_eq!(coefficient_gcd, Some(Int::from(2)));
            }
            other => panic!("expected cap exceeded, got {other:?}"),
        }
    }

    #[test]
    fn prime_index_rejects_composite() {
        assert_eq!(prime_index(&fib(), 4, 8), Err(Error::NotPrime(4)));
    }

    #[test]
    fn nonlinear_scan_is_purely_periodic() {
        let f = MultiPoly::new(1, vec![(vec![2], Int::one())]).unwrap();
        let rec = NonlinearRecurrence::new(Sign::Plus, f, vec![Int::one(), Int::one()]).unwrap();
        let src = SequenceSource::Nonlinear(rec);
        for m in [2u64, 3, 5, 7, 12] {
            let cert = period_mod(&src, &nat(m)).unwrap();
            assert_eq!(cert.preperiod, 0, "m = {m}");
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        let src = fib();
        assert_eq!(
            period_mod_capped(&src, &nat(514_229), 10),
            Err(Error::BoundExceeded { cap: 10 })
        );
    }

    #[test]
    fn unbounded_on_classes_fibonacci() {
        let rec = LinearRecurrence::from_i64(&[1, 1], &[0, 1]).unwrap();
        let maxima = unbounded_on_classes(&rec, 2, 20).unwrap();
        let f19: Nat = nat(4181);
        assert!(maxima.iter().all(|c| c.max_abs >= f19));
    }

    #[test]
    fn unbounded_on_classes_degenerate_shows_zero_class() {
        let rec = LinearRecurrence::from_i64(&[0, 1], &[0, 1]).unwrap();
        let maxima = unbounded_on_classes(&rec, 2, 30).unwrap();
        assert_eq!(maxima[0].max_abs, Nat::zero());
        assert_eq!(maxima[1].max_abs, Nat::one());
    }

    #[test]
    fn residues_match_exact_terms() {
        let src = fib();
        let exact = src.evaluate(40);
        for m in [2u64, 3, 7, 10, 97] {
            let mut got = Vec::new();
            for_each_residue(&src, &nat(m), 41, |_, r| got.push(r)).unwrap();
            for (n, r) in got.iter().enumerate() {
                assert_eq!(
                    Int::from(r.clone()),
                    exact[n].mod_floor(&Int::from(m)),
                    "m={m} n={n}"
                );
            }
        }
    }

    proptest! {
        // periodicity holds over [σ, σ+3π] and the certificate is exact
        #[test]
        fn certificate_periodicity(
            coeffs in prop::collection::vec(-6i64..=6, 1..=3),
            initial in prop::collection::vec(-6i64..=6, 3),
            m in 2u64..=50,
        ) {
            prop_assume!(*coeffs.last().unwrap() != 0);
            let k = coeffs.len();
            let rec = LinearRecurrence::from_i64(&coeffs, &initial[..k]).unwrap();
            let src = SequenceSource::Linear(rec.clone());
            let cert = period_mod(&src, &nat(m)).unwrap();
            let len = cert.preperiod + 3 * cert.period + 1;
            let mi = Int::from(m);
            let terms: Vec<Int> = rec.terms().take(len as usize).map(|t| t.mod_floor(&mi)).collect();
            for n in cert.preperiod..(cert.preperiod + 2 * cert.period) {
                prop_assert_eq!(&terms[n as usize], &terms[(n + cert.period) as usize]);
            }
            // minimality of the period on the tail
            for smaller in 1..cert.period {
                if cert.period % smaller != 0 { continue; }
                let mut works = true;
                for n in cert.preperiod..(cert.preperiod + cert.period) {
                    if terms[n as usize] != terms[(n + smaller) as usize] {
                        works = false;
                        break;
                    }
                }
                prop_assert!(!works, "period {} admits smaller period {}", cert.period, smaller);
            }
        }

        // pure periodicity when gcd(r_k, m) = 1
        #[test]
        fn pure_when_leading_coprime(
            coeffs in prop::collection::vec(-6i64..=6, 1..=3),
            initial in prop::collection::vec(-6i64..=6, 3),
            m in 2u64..=40,
        ) {
            prop_assume!(*coeffs.last().unwrap() != 0);
            prop_assume!(num_integer::gcd(coeffs.last().unwrap().unsigned_abs(), m) == 1);
            let k = coeffs.len();
            let rec = LinearRecurrence::from_i64(&coeffs, &initial[..k]).unwrap();
            let cert = period_mod(&SequenceSource::Linear(rec), &nat(m)).unwrap();
            prop_assert_eq!(cert.preperiod, 0);
        }

        // residues mod m2 are the reduction of residues mod m1 when m2 | m1
        #[test]
        fn divisor_compatibility(
            coeffs in prop::collection::vec(-5i64..=5, 1..=2),
            initial in prop::collection::vec(-5i64..=5, 2),
            m2 in 2u64..=10,
            mult in 1u64..=5,
        ) {
            prop_assume!(*coeffs.last().unwrap() != 0);
            let m1 = m2 * mult;
            let k = coeffs.len();
            let rec = LinearRecurrence::from_i64(&coeffs, &initial[..k]).unwrap();
            let src = SequenceSource::Linear(rec);
            let mut big = Vec::new();
            let mut small = Vec::new();
            for_each_residue(&src, &nat(m1), 60, |_, r| big.push(r)).unwrap();
            for_each_residue(&src, &nat(m2), 60, |_, r| small.push(r)).unwrap();
            for n in 0..60usize {
                prop_assert_eq!(&big[n] % m2, small[n].clone());
            }
        }

        // null-divisor monotonicity across prime powers
        #[test]
        fn null_divisor_monotone(
            coeffs in prop::collection::vec(-4i64..=4, 1..=2),
            initial in prop::collection::vec(-4i64..=4, 2),
            p in prop::sample::select(alloc::vec![2u64, 3, 5]),
        ) {
            prop_assume!(*coeffs.last().unwrap() != 0);
            let k = coeffs.len();
            let rec = LinearRecurrence::from_i64(&coeffs, &initial[..k]).unwrap();
            let src = SequenceSource::Linear(rec);
            let mut previous = true;
            for j in 1..=4u32 {
                let now = is_null_divisor(&src, &Nat::from(p).pow(j)).unwrap();
                prop_assert!(previous || !now, "p^{} null but p^{} not", j, j - 1);
                previous = now;
            }
        }
    }
}

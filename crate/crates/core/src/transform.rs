//! Subsequence transforms: the characteristic polynomial of
//! `{a_{c+bn}}`, coefficient scaling with its base-case verification, and
//! the construction that strips one prime from a sequence.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{resultant_bivariate_eval, reverse_poly, IntPoly};
use crate::error::Error;
use crate::modular::{for_each_residue, period_mod_capped, prime_index_capped, PrimeIndex};
use crate::primes::{factor, is_prime_u64};
use crate::recurrence::{minimal_order, LinearRecurrence, SequenceSource};
use crate::{Int, Nat};

/// Maps `prod (1 - psi_i x)` to `prod (1 - psi_i^b x)`: the characteristic
/// polynomial of every arithmetic-progression subsequence with step `b`.
///
/// Computed as a resultant over the integers; the roots `psi_i` are never
/// materialized. Requires `g(0) = 1`.
pub fn phi_b(g: &IntPoly, b: u64) -> Result<IntPoly, Error> {
    if !g.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let k = g.degree().unwrap_or(0);
    if k == 0 || b == 1 {
        return Ok(g.clone());
    }
    let monic = reverse_poly(g, k)?;
    // H(x) = Res_y(G(y), x - y^b) is monic of degree k with roots psi_i^b
    let h_monic = resultant_bivariate_eval(
        &monic,
        |x0| {
            let mut coeffs = vec![Int::zero(); b as usize + 1];
            coeffs[0] = x0.clone();
            coeffs[b as usize] = Int::from(-1);
            IntPoly::new(coeffs)
        },
        k,
    )?;
    debug_assert_eq!(h_monic.degree(), Some(k));
    debug_assert!(h_monic.leading().unwrap().is_one());
    let h = reverse_poly(&h_monic, k)?;
    debug_assert!(h.coeff(0).is_one());
    Ok(h)
}

/// The recurrence satisfied by the subsequence `{a_{c+bn}}`, together with
/// the minimal order actually attained by that subsequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsequenceRecurrence {
    pub recurrence: LinearRecurrence,
    /// Minimal order of the subsequence (0 for the zero sequence). For a
    /// non-degenerate minimal base of order k this equals k.
    pub minimal_order: usize,
}

impl SubsequenceRecurrence {
    /// True when the subsequence satisfies a shorter relation than the
    /// transform predicts, which can only happen for degenerate bases.
    pub fn minimality_lost(&self) -> bool {
        self.minimal_order < self.recurrence.order()
    }
}

/// Relation and initial terms for `{a_{c+bn}}` with `0 <= c < b`. The
/// returned relation annihilates the subsequence unconditionally; its
/// order is minimal exactly when the base is non-degenerate and minimal.
pub fn subsequence_recurrence(
    rec: &LinearRecurrence,
    c: u64,
    b: u64,
) -> Result<SubsequenceRecurrence, Error> {
    if b == 0 || c >= b {
        return Err(Error::OffsetOutOfRange { offset: c, step: b });
    }
    let g = rec.characteristic_poly();
    let h = phi_b(&g, b)?;
    let k = h.degree().expect("phi_b preserves the degree");
    let needed = c + b * (k as u64 - 1);
    let terms = rec.evaluate(needed);
    let initial: Vec<Int> = (0..k as u64).map(|i| terms[(c + b * i) as usize].clone()).collect();
    let recurrence = LinearRecurrence::from_characteristic(&h, initial)?;
    let minimal = match minimal_order(&recurrence) {
        Ok(min) => min.order(),
        Err(Error::ZeroSequence) => 0,
        Err(e) => return Err(e),
    };
    Ok(SubsequenceRecurrence {
        recurrence,
        minimal_order: minimal,
    })
}

/// How an extracted factor applies to the terms of a subsequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorExtraction {
    /// Every represented term is divided by the same constant.
    Constant(Nat),
    /// Term `n` is divided by `t^n`.
    Geometric(Nat),
}

impl DivisorExtraction {
    pub fn is_identity(&self) -> bool {
        match self {
            DivisorExtraction::Constant(e) | DivisorExtraction::Geometric(e) => e.is_one(),
        }
    }
}

/// The subsequence `{a_{c+bn} / divisor(n)}` of a base recurrence.
///
/// Construction guarantees the divisor divides every represented term;
/// `term` asserts it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsequenceSpec {
    pub base: LinearRecurrence,
    pub offset: u64,
    pub step: u64,
    pub divisor: DivisorExtraction,
}

impl SubsequenceSpec {
    /// Exact term `a_{offset + step*n} / divisor(n)`.
    pub fn term(&self, n: u64) -> Int {
        let raw = self.base.term(self.offset + self.step * n);
        let d = match &self.divisor {
            DivisorExtraction::Constant(e) => e.clone(),
            DivisorExtraction::Geometric(t) => t.pow(n as u32),
        };
        let (q, r) = raw.div_rem(&Int::from(d));
        debug_assert!(r.is_zero(), "extracted divisor must divide the term");
        q
    }

    /// Exact terms for `n = 0..=n_max`.
    pub fn terms(&self, n_max: u64) -> Vec<Int> {
        (0..=n_max).map(|n| self.term(n)).collect()
    }
}

/// Whether `t^n | a_{sn}` failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingFailure {
    pub n: u64,
    pub term: Int,
    pub required: Nat,
}

/// Outcome of the coefficient-scaling construction: the coefficients
/// `m_i` of the step-`s` subsequence relation, the largest `t` with
/// `t^i | m_i`, and the scaled coefficients `m_i / t^i` with their
/// coprimality. `base_case_ok` is filled in by [`verify_scaling`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingReport {
    pub s: u64,
    pub t: Nat,
    /// `m_1..m_k`, the coefficients of the transformed relation.
    pub coefficients: Vec<Int>,
    /// `m_i / t^i`; `None` when the supplied `t` fails `t^i | m_i`.
    pub scaled_coefficients: Option<Vec<Int>>,
    /// GCD of the scaled coefficients is 1.
    pub coprime: Option<bool>,
    /// 1-based positions with `m_i = 0`, skipped by the `t` extraction.
    pub zero_coefficients: Vec<usize>,
    pub base_case_ok: Option<bool>,
    pub failure_witness: Option<ScalingFailure>,
    /// Quotient sequence `a_{sn} / t^n` when the check passed.
    pub quotient: Option<SubsequenceSpec>,
}

fn valuation_nat(n: &Int, p: &Nat) -> u64 {
    debug_assert!(!n.is_zero());
    let p = Int::from(p.clone());
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        rest = q;
        e += 1;
    }
}

fn scaling_coefficients(rec: &LinearRecurrence, s: u64) -> Result<Vec<Int>, Error> {
    let g = rec.characteristic_poly();
    let h = phi_b(&g, s)?;
    let k = rec.order();
    Ok((1..=k).map(|i| -h.coeff(i)).collect())
}

/// Finds the maximal `t` with `t^i | m_i` for the step-`s` relation and
/// reports the scaled coefficients and their coprimality.
pub fn scaling_candidate(rec: &LinearRecurrence, s: u64) -> Result<ScalingReport, Error> {
    if s == 0 {
        return Err(Error::ZeroModulus);
    }
    let coefficients = scaling_coefficients(rec, s)?;
    let zero_coefficients: Vec<usize> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_zero())
        .map(|(i, _)| i + 1)
        .collect();

    // t's primes all divide the first nonzero m_i; exponents come from
    // per-prime minima of floor(v_p(m_i) / i)
    let first_nonzero = coefficients
        .iter()
        .find(|m| !m.is_zero())
        .expect("m_k is nonzero because r_k is");
    let mut t = Nat::one();
    for (p, _) in factor(first_nonzero) {
        let mut exp = u64::MAX;
        for (i, m) in coefficients.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            exp = exp.min(valuation_nat(m, &p) / (i as u64 + 1));
            if exp == 0 {
                break;
            }
        }
        if exp > 0 {
            t *= p.pow(exp as u32);
        }
    }

    let t_int = Int::from(t.clone());
    let mut scaled = Vec::with_capacity(coefficients.len());
    for (i, m) in coefficients.iter().enumerate() {
        let (q, r) = m.div_rem(&t_int.pow(i as u32 + 1));
        debug_assert!(r.is_zero(), "t was built so that t^i divides m_i");
        scaled.push(q);
    }
    let mut gcd = Int::zero();
    for c in &scaled {
        gcd = gcd.gcd(c);
    }
    let coprime = gcd.is_one();
    Ok(ScalingReport {
        s,
        t,
        coefficients,
        scaled_coefficients: Some(scaled),
        coprime: Some(coprime),
        zero_coefficients,
        base_case_ok: None,
        failure_witness: None,
        quotient: None,
    })
}

/// Checks `t^n | a_{sn}` for `n <= n_max`. Failure is data, not an error:
/// the report carries the smallest failing index and the term.
pub fn verify_scaling(
    rec: &LinearRecurrence,
    s: u64,
    t: &Nat,
    n_max: u64,
) -> Result<ScalingReport, Error> {
    if s == 0 || t.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let coefficients = scaling_coefficients(rec, s)?;
    let zero_coefficients: Vec<usize> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_zero())
        .map(|(i, _)| i + 1)
        .collect();
    let t_int = Int::from(t.clone());
    let scaled: Option<Vec<Int>> = coefficients
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let (q, r) = m.div_rem(&t_int.pow(i as u32 + 1));
            r.is_zero().then_some(q)
        })
        .collect();
    let coprime = scaled.as_ref().map(|sc| {
        let mut gcd = Int::zero();
        for c in sc {
            gcd = gcd.gcd(c);
        }
        gcd.is_one()
    });

    let mut report = ScalingReport {
        s,
        t: t.clone(),
        coefficients,
        scaled_coefficients: scaled,
        coprime,
        zero_coefficients,
        base_case_ok: None,
        failure_witness: None,
        quotient: None,
    };

    let mut power = Int::one();
    let mut terms = rec.terms();
    let mut index = 0u64;
    for n in 0..=n_max {
        // advance the exact stream to a_{sn}
        let target = s * n;
        let mut term = None;
        while index <= target {
            term = terms.next();
            index += 1;
        }
        let term = term.expect("term stream is infinite");
        if n > 0 {
            power *= &t_int;
        }
        if !(&term % &power).is_zero() {
            report.base_case_ok = Some(false);
            report.failure_witness = Some(ScalingFailure {
                n,
                term,
                required: power.magnitude().clone(),
            });
            return Ok(report);
        }
    }
    report.base_case_ok = Some(true);
    report.quotient = Some(SubsequenceSpec {
        base: rec.clone(),
        offset: 0,
        step: s,
        divisor: DivisorExtraction::Geometric(t.clone()),
    });
    Ok(report)
}

/// Strips one prime: finds a residue class of indices whose terms are
/// nonzero and constant modulo `p^l` (with `l` exceeding the index of `p`
/// by `l_margin`), divides out the fixed power `p^r`, and returns the
/// resulting subsequence whose terms are coprime to `p`.
pub fn strip_prime(
    rec: &LinearRecurrence,
    p: u64,
    l_margin: u64,
    scan_bound: u64,
) -> Result<SubsequenceSpec, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if l_margin == 0 {
        return Err(Error::Internal("l_margin must be positive".into()));
    }
    let src = SequenceSource::Linear(rec.clone());
    let index = match prime_index_capped(&src, p, 64, scan_bound)? {
        PrimeIndex::Bounded(j) => j,
        PrimeIndex::CapExceeded { cap, .. } => {
            return Err(Error::IndexCapExceeded { prime: p, cap })
        }
    };
    let l = index + l_margin;
    let modulus = Nat::from(p).pow(l as u32);
    let cert = period_mod_capped(&src, &modulus, scan_bound)?;
    let sigma = cert.preperiod;
    let period = cert.period;

    // residues through one period past the preperiod, plus one more period
    // so preperiod offsets can be checked against their tail value
    let table_len = sigma + 2 * period;
    if table_len > scan_bound {
        return Err(Error::BoundExceeded { cap: scan_bound });
    }
    let mut residues: Vec<Nat> = Vec::with_capacity(table_len as usize);
    for_each_residue(&src, &modulus, table_len, |_, r| residues.push(r))?;

    let tail_value = |offset: u64| -> &Nat {
        // first index at or past the preperiod in offset's class
        let idx = if offset >= sigma {
            offset
        } else {
            offset + (sigma - offset).div_ceil(period) * period
        };
        &residues[idx as usize]
    };

    for offset in 0..sigma + period {
        let v = tail_value(offset);
        if v.is_zero() {
            continue;
        }
        let constant = (0..)
            .map(|j| offset + j * period)
            .take_while(|&i| i < sigma)
            .all(|i| &residues[i as usize] == v);
        if constant {
            let r = valuation_nat(&Int::from(v.clone()), &Nat::from(p));
            return Ok(SubsequenceSpec {
                base: rec.clone(),
                offset,
                step: period,
                divisor: DivisorExtraction::Constant(Nat::from(p).pow(r as u32)),
            });
        }
    }
    // the cycle of a non-null divisor always contains a nonzero residue
    Err(Error::NullDivisorPower { prime: p, exponent: l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::is_degenerate;
    use proptest::prelude::*;

    fn fib() -> LinearRecurrence {
        LinearRecurrence::from_i64(&[1, 1], &[0, 1]).unwrap()
    }

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn phi_one_is_identity() {
        let g = p(&[1, -1, -1]);
        assert_eq!(phi_b(&g, 1).unwrap(), g);
    }

    #[test]
    fn phi_two_fibonacci() {
        assert_eq!(phi_b(&p(&[1, -1, -1]), 2).unwrap(), p(&[1, -3, 1]));
    }

    #[test]
    fn phi_b_order_one_powers_the_root() {
        // g = 1 - 3x, psi = 3: phi_4 g = 1 - 81x
        assert_eq!(phi_b(&p(&[1, -3]), 4).unwrap(), p(&[1, -81]));
    }

    #[test]
    fn phi_b_requires_unit_constant_term() {
        assert_eq!(phi_b(&p(&[2, 1]), 2), Err(Error::ConstantTermNotOne));
    }

    #[test]
    fn subsequence_even_fibonacci() {
        let sub = subsequence_recurrence(&fib(), 0, 2).unwrap();
        assert_eq!(sub.recurrence.coeffs(), &[3, -1].map(Int::from));
        assert_eq!(sub.recurrence.evaluate(4), [0, 1, 3, 8, 21].map(Int::from));
        assert!(!sub.minimality_lost());
    }

    #[test]
    fn subsequence_step_one_is_identity() {
        let sub = subsequence_recurrence(&fib(), 0, 1).unwrap();
        assert_eq!(sub.recurrence, fib());
    }

    #[test]
    fn subsequence_offset_must_be_below_step() {
        assert!(subsequence_recurrence(&fib(), 2, 2).is_err());
    }

    #[test]
    fn degenerate_base_loses_minimality() {
        let rec = LinearRecurrence::from_i64(&[0, 1], &[0, 1]).unwrap();
        let sub = subsequence_recurrence(&rec, 0, 2).unwrap();
        // phi_2 g = (1 - x)^2 annihilates the all-zero subsequence
        assert_eq!(sub.recurrence.coeffs(), &[2, -1].map(Int::from));
        assert_eq!(sub.minimal_order, 0);
        assert!(sub.minimality_lost());
        assert!(sub.recurrence.evaluate(10).iter().all(Zero::is_zero));
    }

    #[test]
    fn scaling_candidate_small() {
        // g = 1 - 2x - 4x^2, s = 1: v_2(2) = 1, v_2(4) = 2 -> t = 2
        let rec = LinearRecurrence::from_i64(&[2, 4], &[0, 1]).unwrap();
        let report = scaling_candidate(&rec, 1).unwrap();
        assert_eq!(report.t, Nat::from(2u32));
        assert_eq!(report.scaled_coefficients, Some(alloc::vec![Int::one(), Int::one()]));
        assert_eq!(report.coprime, Some(true));
    }

    #[test]
    fn scaling_candidate_step_two() {
        let rec = LinearRecurrence::from_i64(&[2, 4], &[0, 1]).unwrap();
        let report = scaling_candidate(&rec, 2).unwrap();
        assert_eq!(report.coefficients, [12, -16].map(Int::from));
        assert_eq!(report.t, Nat::from(4u32));
        assert_eq!(
            report.scaled_coefficients,
            Some(alloc::vec![Int::from(3), Int::from(-1)])
        );
        assert_eq!(report.coprime, Some(true));
    }

    #[test]
    fn scaling_candidate_fibonacci_is_trivial() {
        let report = scaling_candidate(&fib(), 1).unwrap();
        assert_eq!(report.t, Nat::one());
        assert_eq!(report.scaled_coefficients, Some(alloc::vec![Int::one(), Int::one()]));
    }

    #[test]
    fn verify_scaling_fails_on_base_case() {
        let rec = LinearRecurrence::from_i64(&[2, 4], &[0, 1]).unwrap();
        let report = verify_scaling(&rec, 1, &Nat::from(2u32), 20).unwrap();
        assert_eq!(report.base_case_ok, Some(false));
        let witness = report.failure_witness.unwrap();
        assert_eq!(witness.n, 1);
        assert_eq!(witness.term, Int::one());
        assert_eq!(witness.required, Nat::from(2u32));
    }

    #[test]
    fn verify_scaling_passes_with_even_start() {
        let rec = LinearRecurrence::from_i64(&[2, 4], &[0, 2]).unwrap();
        let report = verify_scaling(&rec, 1, &Nat::from(2u32), 20).unwrap();
        assert_eq!(report.base_case_ok, Some(true));
        let quotient = report.quotient.unwrap();
        // a_n / 2^n is an integer sequence; spot-check the first few
        for n in 0..=20 {
            let q = quotient.term(n);
            assert_eq!(
                q * Int::from(2).pow(n as u32),
                rec.term(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn verify_scaling_t_one_is_vacuous() {
        let report = verify_scaling(&fib(), 3, &Nat::one(), 10).unwrap();
        assert_eq!(report.base_case_ok, Some(true));
    }

    #[test]
    fn strip_prime_all_odd_sequence() {
        let rec = LinearRecurrence::from_i64(&[1, 2], &[1, 1]).unwrap();
        let spec = strip_prime(&rec, 2, 1, 100_000).unwrap();
        assert_eq!((spec.offset, spec.step), (0, 1));
        assert!(spec.divisor.is_identity());
    }

    #[test]
    fn strip_prime_fibonacci_two() {
        let spec = strip_prime(&fib(), 2, 1, 100_000).unwrap();
        assert_eq!(spec.step, 3);
        assert_eq!(spec.offset, 1);
        assert!(spec.divisor.is_identity());
        // terms F_{1+3n} are odd
        for n in 0..20 {
            assert!(spec.term(n).is_odd(), "n = {n}");
        }
    }

    #[test]
    fn strip_prime_untouched_prime_is_identity() {
        // terms 1, 1, 1, ... and p = 7
        let rec = LinearRecurrence::from_i64(&[1], &[1]).unwrap();
        let spec = strip_prime(&rec, 7, 1, 1000).unwrap();
        assert_eq!((spec.offset, spec.step), (0, 1));
        assert!(spec.divisor.is_identity());
    }

    #[test]
    fn strip_prime_divides_out_fixed_power() {
        // all terms divisible by exactly 4 = 2^2: 4 * fibonacci shifted
        let rec = LinearRecurrence::from_i64(&[1, 1], &[4, 4]).unwrap();
        let spec = strip_prime(&rec, 2, 1, 100_000).unwrap();
        assert_eq!(spec.divisor, DivisorExtraction::Constant(Nat::from(4u32)));
        for n in 0..12 {
            assert!(spec.term(n).is_odd(), "n = {n}");
        }
    }

    fn arb_recurrence(max_k: usize, max_abs: i64) -> impl Strategy<Value = LinearRecurrence> {
        (1..=max_k).prop_flat_map(move |k| {
            (
                prop::collection::vec(-max_abs..=max_abs, k),
                prop::collection::vec(-max_abs..=max_abs, k),
            )
                .prop_filter_map("leading coefficient nonzero", |(c, i)| {
                    if c.last() == Some(&0) {
                        None
                    } else {
                        LinearRecurrence::from_i64(&c, &i).ok()
                    }
                })
        })
    }

    proptest! {
        // phi_a(phi_b(g)) = phi_{ab}(g)
        #[test]
        fn phi_composes(rec in arb_recurrence(3, 5), a in 1u64..=4, b in 1u64..=4) {
            let g = rec.characteristic_poly();
            let lhs = phi_b(&phi_b(&g, b)?, a)?;
            let rhs = phi_b(&g, a * b)?;
            prop_assert_eq!(lhs, rhs);
        }

        // the transformed relation annihilates the actual subsequence
        #[test]
        fn subsequence_relation_annihilates(rec in arb_recurrence(3, 5), b in 1u64..=5, c_seed in 0u64..5) {
            let c = c_seed % b;
            let sub = subsequence_recurrence(&rec, c, b)?;
            let terms = rec.evaluate(c + b * 60);
            let picked: Vec<Int> = (0..=60u64).map(|n| terms[(c + b * n) as usize].clone()).collect();
            prop_assert!(sub.recurrence.annihilates(&picked));
        }

        // for non-degenerate minimal bases the subsequence keeps order k
        #[test]
        fn subsequence_preserves_order_nondegenerate(rec in arb_recurrence(3, 4), b in 1u64..=4, c_seed in 0u64..4) {
            let min = match minimal_order(&rec) { Ok(m) => m, Err(_) => return Ok(()) };
            prop_assume!(min.order() >= 1);
            prop_assume!(!is_degenerate(&min)?.is_degenerate());
            let c = c_seed % b;
            let sub = subsequence_recurrence(&min, c, b)?;
            prop_assert_eq!(sub.minimal_order, min.order());
            prop_assert!(!sub.minimality_lost());
        }

        // t extraction is idempotent: recomputing t from m_i / t^i gives 1
        #[test]
        fn scaling_idempotent(rec in arb_recurrence(3, 6), s in 1u64..=3) {
            let report = scaling_candidate(&rec, s)?;
            let scaled = report.scaled_coefficients.clone().unwrap();
            // rebuild a recurrence whose step-1 coefficients are the scaled m_i
            let initial: Vec<Int> = (0..scaled.len()).map(|i| Int::from(i as i64 + 1)).collect();
            let rebuilt = LinearRecurrence::new(scaled, initial).unwrap();
            let again = scaling_candidate(&rebuilt, 1)?;
            prop_assert_eq!(again.t, Nat::one());
        }
    }
}

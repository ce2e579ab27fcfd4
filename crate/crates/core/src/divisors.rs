//! Exact prime-divisor decisions, enumeration reports, and the theorem
//! verifiers built on them.
//!
//! A prime divides some term iff a zero residue shows up within one
//! preperiod plus one full period of the sequence modulo p, so every
//! verdict is a finite exact scan; terms are never factored (they grow
//! exponentially) except in small-scale audits.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::IntPoly;
use crate::error::Error;
use crate::modular::{period_mod_capped, scan_residues_u64, DEFAULT_STATE_CAP};
use crate::primes::{factor, sieve_primes};
use crate::recurrence::{
    is_degenerate, minimal_order, Degeneracy, LinearRecurrence, NonlinearRecurrence,
    SequenceSource,
};
use crate::transform::{scaling_candidate, strip_prime};
use crate::{Int, Nat};

/// Tuning knobs for the divisor scans.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Cap on `preperiod + period` per modular scan.
    pub state_cap: u64,
    /// How far to look for exact zero terms (they make every prime a
    /// divisor, so they are reported separately).
    pub zero_scan: u64,
    /// Give up confirming a zero candidate once terms exceed this many
    /// bits; unconfirmed candidates are treated as nonzero.
    pub zero_term_bit_cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            state_cap: DEFAULT_STATE_CAP,
            zero_scan: 10_000,
            zero_term_bit_cap: 1 << 20,
        }
    }
}

/// Indices of exact zero terms within a scan window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTerms {
    pub window: u64,
    pub indices: Vec<u64>,
}

impl ZeroTerms {
    pub fn contains(&self, n: u64) -> bool {
        self.indices.binary_search(&n).is_ok()
    }

    pub fn any(&self) -> bool {
        !self.indices.is_empty()
    }
}

// Fixed 61- and 64-bit prime moduli for the candidate sweep. A zero term
// is zero modulo both; false positives are then discarded exactly.
const ZERO_PROBE_A: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
const ZERO_PROBE_B: u64 = 18_446_744_073_709_551_557;

/// Finds the exact zero terms among `a_0..a_{window-1}`: two residue
/// sweeps propose candidates, exact evaluation confirms them.
pub fn scan_zero_terms(src: &SequenceSource, opts: &ScanOptions) -> ZeroTerms {
    let window = opts.zero_scan;
    let mut candidates: Vec<u64> = Vec::new();
    scan_residues_u64(src, ZERO_PROBE_A, window, |n, r| {
        if r == 0 {
            candidates.push(n);
        }
        true
    });
    if !candidates.is_empty() {
        let mut second: Vec<u64> = Vec::new();
        scan_residues_u64(src, ZERO_PROBE_B, window, |n, r| {
            if r == 0 {
                second.push(n);
            }
            true
        });
        candidates.retain(|n| second.binary_search(n).is_ok());
    }
    let mut confirmed = Vec::new();
    if let Some(&last) = candidates.last() {
        let mut terms = src.terms();
        let mut next_candidate = candidates.iter().copied().peekable();
        for n in 0..=last {
            let term = match terms.next() {
                Some(t) => t,
                None => break,
            };
            if term.bits() > opts.zero_term_bit_cap {
                break; // terms this large are not zero
            }
            if next_candidate.peek() == Some(&n) {
                next_candidate.next();
                if term.is_zero() {
                    confirmed.push(n);
                }
            }
        }
    }
    ZeroTerms {
        window,
        indices: confirmed,
    }
}

/// Verdict of the per-prime decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorVerdict {
    Divides {
        /// Minimal `n` with `p | a_n` and `a_n != 0`; falls back to the
        /// first zero term when the prime divides nothing else.
        first_index: u64,
        /// The witness term is an exact zero.
        zero_term: bool,
    },
    DoesNotDivide,
}

/// Decides whether `p` divides some term, with the minimal witness index.
pub fn is_prime_divisor(
    src: &SequenceSource,
    p: u64,
    opts: &ScanOptions,
) -> Result<DivisorVerdict, Error> {
    if !crate::primes::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let zeros = scan_zero_terms(src, opts);
    is_prime_divisor_with_zeros(src, p, &zeros, opts)
}

/// Same as [`is_prime_divisor`] but reuses a precomputed zero-term scan;
/// the enumeration loop calls this once per prime.
pub fn is_prime_divisor_with_zeros(
    src: &SequenceSource,
    p: u64,
    zeros: &ZeroTerms,
    opts: &ScanOptions,
) -> Result<DivisorVerdict, Error> {
    let cert = period_mod_capped(src, &Nat::from(p), opts.state_cap)?;
    let horizon = cert.preperiod + cert.period;
    let mut hits: Vec<u64> = Vec::new();
    scan_residues_u64(src, p, horizon, |n, r| {
        if r == 0 {
            hits.push(n);
        }
        true
    });
    if hits.is_empty() {
        return Ok(DivisorVerdict::DoesNotDivide);
    }
    if let Some(&n) = hits.iter().find(|&&n| !zeros.contains(n)) {
        return Ok(DivisorVerdict::Divides {
            first_index: n,
            zero_term: false,
        });
    }
    // every in-horizon hit is an exact zero term; later occurrences of the
    // recurring hit classes are nonzero once past the zero window
    let mut best: Option<u64> = None;
    for &n in &hits {
        if n < cert.preperiod {
            continue; // does not recur
        }
        let mut candidate = n + cert.period;
        while zeros.contains(candidate) {
            candidate += cert.period;
        }
        if candidate < zeros.window {
            best = Some(best.map_or(candidate, |b| b.min(candidate)));
        }
    }
    match best {
        Some(n) => Ok(DivisorVerdict::Divides {
            first_index: n,
            zero_term: false,
        }),
        // the prime only ever divides zero terms (or the whole window is
        // zero); report the first zero witness
        None => Ok(DivisorVerdict::Divides {
            first_index: hits[0],
            zero_term: true,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeHit {
    pub prime: u64,
    pub first_index: u64,
    pub zero_term: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub bound: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeScanError {
    pub prime: u64,
    pub reason: Error,
}

/// Enumerated prime divisors with first-hit indices, growth checkpoints
/// and per-prime scan failures (never silently dropped).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorReport {
    pub source: String,
    pub prime_bound: u64,
    pub divisors: Vec<PrimeHit>,
    pub non_divisors: Vec<u64>,
    pub errors: Vec<PrimeScanError>,
    pub checkpoints: Vec<Checkpoint>,
    /// Confirmed zero terms in the scan window (divisible by everything).
    pub zero_terms: Vec<u64>,
    pub zero_scan_window: u64,
    /// Set for constant polynomials, whose divisor set is finite.
    pub finite: bool,
    /// Whether checkpoint counts grew strictly; `None` when not asserted.
    pub growth_strict: Option<bool>,
    /// Pipeline traces (scaling search, prime stripping) when requested.
    pub trace: Vec<String>,
}

impl DivisorReport {
    pub fn has_zero_term(&self) -> bool {
        !self.zero_terms.is_empty()
    }

    pub fn divisor_primes(&self) -> Vec<u64> {
        self.divisors.iter().map(|h| h.prime).collect()
    }
}

/// Applies the per-prime decision to every prime up to `prime_bound` and
/// assembles the report. Checkpoint counts are filled for `checkpoints`.
pub fn enumerate_prime_divisors(
    src: &SequenceSource,
    prime_bound: u64,
    checkpoints: &[u64],
    opts: &ScanOptions,
) -> Result<DivisorReport, Error> {
    let zeros = scan_zero_terms(src, opts);
    let primes = sieve_primes(prime_bound);
    let per_prime: Vec<(u64, Result<DivisorVerdict, Error>)> = primes
        .iter()
        .map(|&p| (p, is_prime_divisor_with_zeros(src, p, &zeros, opts)))
        .collect();
    Ok(assemble_report(
        src.describe(),
        prime_bound,
        per_prime,
        checkpoints,
        &zeros,
    ))
}

/// Merges per-prime verdicts into a report; the only synchronization
/// point, so parallel drivers can fan out the scans and call this once.
pub fn assemble_report(
    source: String,
    prime_bound: u64,
    per_prime: Vec<(u64, Result<DivisorVerdict, Error>)>,
    checkpoints: &[u64],
    zeros: &ZeroTerms,
) -> DivisorReport {
    let mut divisors = Vec::new();
    let mut non_divisors = Vec::new();
    let mut errors = Vec::new();
    for (p, verdict) in per_prime {
        match verdict {
            Ok(DivisorVerdict::Divides {
                first_index,
                zero_term,
            }) => divisors.push(PrimeHit {
                prime: p,
                first_index,
                zero_term,
            }),
            Ok(DivisorVerdict::DoesNotDivide) => non_divisors.push(p),
            Err(reason) => errors.push(PrimeScanError { prime: p, reason }),
        }
    }
    divisors.sort_by_key(|h| h.prime);
    non_divisors.sort_unstable();
    let checkpoints = checkpoint_counts(&divisors, prime_bound, checkpoints);
    DivisorReport {
        source,
        prime_bound,
        divisors,
        non_divisors,
        errors,
        checkpoints,
        zero_terms: zeros.indices.clone(),
        zero_scan_window: zeros.window,
        finite: false,
        growth_strict: None,
        trace: Vec::new(),
    }
}

fn checkpoint_counts(divisors: &[PrimeHit], prime_bound: u64, bounds: &[u64]) -> Vec<Checkpoint> {
    let mut bounds: Vec<u64> = bounds.iter().copied().filter(|&b| b <= prime_bound).collect();
    bounds.sort_unstable();
    bounds.dedup();
    bounds
        .into_iter()
        .map(|bound| Checkpoint {
            bound,
            count: divisors.iter().filter(|h| h.prime <= bound).count() as u64,
        })
        .collect()
}

fn strictly_increasing(checkpoints: &[Checkpoint]) -> bool {
    checkpoints.windows(2).all(|w| w[0].count < w[1].count)
}

/// Divisor profile of a polynomial sequence `n -> f(n)`: constant
/// polynomials get their finite divisor set; nonconstant ones get the full
/// enumeration with a strict-growth assertion across checkpoints.
pub fn schur_profile(
    f: &IntPoly,
    prime_bound: u64,
    checkpoints: &[u64],
    opts: &ScanOptions,
) -> Result<DivisorReport, Error> {
    let src = SequenceSource::Polynomial(f.clone());
    if f.degree().unwrap_or(0) == 0 {
        // finite by inspection: the primes dividing the constant
        let c = f.coeff(0);
        let primes = sieve_primes(prime_bound);
        let mut divisors = Vec::new();
        let mut non_divisors = Vec::new();
        let zero = c.is_zero();
        for p in primes {
            let divides = zero || factor_has_prime(&c, p);
            if divides {
                divisors.push(PrimeHit {
                    prime: p,
                    first_index: 0,
                    zero_term: zero,
                });
            } else {
                non_divisors.push(p);
            }
        }
        let checkpoints = checkpoint_counts(&divisors, prime_bound, checkpoints);
        return Ok(DivisorReport {
            source: src.describe(),
            prime_bound,
            divisors,
            non_divisors,
            errors: Vec::new(),
            checkpoints,
            zero_terms: if zero { alloc::vec![0] } else { Vec::new() },
            zero_scan_window: opts.zero_scan,
            finite: true,
            growth_strict: None,
            trace: Vec::new(),
        });
    }
    let mut report = enumerate_prime_divisors(&src, prime_bound, checkpoints, opts)?;
    report.growth_strict = Some(strictly_increasing(&report.checkpoints));
    Ok(report)
}

fn factor_has_prime(c: &Int, p: u64) -> bool {
    (c % Int::from(p)).is_zero()
}

/// Options for the theorem verifiers.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub scan: ScanOptions,
    /// Emit the scaling-search and prime-stripping trace into the report.
    pub trace: bool,
}

/// Verifier for the main theorem on linear recurrences: checks the
/// hypotheses exactly (minimal order above 1, non-degenerate), enumerates
/// prime divisors, and asserts strict growth across checkpoints.
pub fn verify_infinitude(
    rec: &LinearRecurrence,
    prime_bound: u64,
    checkpoints: &[u64],
    opts: &VerifyOptions,
) -> Result<DivisorReport, Error> {
    let min = minimal_order(rec)?;
    if min.order() <= 1 {
        return Err(Error::PreconditionOrder { order: min.order() });
    }
    match is_degenerate(&min)? {
        Degeneracy::Degenerate { cyclotomic_index } => {
            return Err(Error::PreconditionDegenerate { cyclotomic_index })
        }
        Degeneracy::NonDegenerate => {}
    }
    let src = SequenceSource::Linear(min.clone());
    let mut report = enumerate_prime_divisors(&src, prime_bound, checkpoints, &opts.scan)?;
    report.growth_strict = Some(strictly_increasing(&report.checkpoints));
    if opts.trace {
        report.trace = pipeline_trace(&min, &opts.scan);
    }
    Ok(report)
}

/// The reduction steps of the infinitude proof, run at desk scale for
/// inspection: coefficient-scaling candidates for small s, then one
/// stripping step per prime dividing r_k.
fn pipeline_trace(min: &LinearRecurrence, opts: &ScanOptions) -> Vec<String> {
    let mut lines = Vec::new();
    for s in 1..=4u64 {
        match scaling_candidate(min, s) {
            Ok(rep) => lines.push(alloc::format!(
                "scaling s={s}: t={}, scaled={:?}, coprime={}",
                rep.t,
                rep.scaled_coefficients
                    .as_ref()
                    .map(|v| v.iter().map(|m| m.to_string()).collect::<Vec<_>>())
                    .unwrap_or_default(),
                rep.coprime.map(|b| b.to_string()).unwrap_or_default(),
            )),
            Err(e) => lines.push(alloc::format!("scaling s={s}: {e}")),
        }
    }
    let r_k = min.coeffs().last().expect("order is positive").clone();
    for (p, _) in factor(&r_k) {
        let Some(p) = p.to_u64() else {
            lines.push(alloc::format!("strip p={p}: prime exceeds u64, skipped"));
            continue;
        };
        match strip_prime(min, p, 1, opts.state_cap) {
            Ok(spec) => lines.push(alloc::format!(
                "strip p={p}: offset={}, step={}, divisor={:?}",
                spec.offset,
                spec.step,
                spec.divisor,
            )),
            Err(e) => lines.push(alloc::format!("strip p={p}: {e}")),
        }
    }
    lines
}

/// Verifier for generalized recurrences `a_{n+k+1} = ±a_n + f(...)`: the
/// divergence hypothesis is undecidable in general, so a strict-growth
/// window check stands in for it (reported, not proven).
pub fn verify_generalized(
    rec: &NonlinearRecurrence,
    prime_bound: u64,
    checkpoints: &[u64],
    growth_window: u64,
    opts: &ScanOptions,
) -> Result<DivisorReport, Error> {
    let start = rec.k() as u64 + 1;
    let mut prev: Option<Nat> = None;
    let mut terms = rec.terms().skip(start as usize);
    for _ in 0..=growth_window {
        let term = terms.next().expect("term stream is infinite");
        let mag = term.magnitude().clone();
        if let Some(p) = &prev {
            if mag <= *p {
                return Err(Error::GrowthUnconfirmed {
                    window: growth_window,
                });
            }
        }
        if mag.bits() > (1u64 << 20) {
            break; // far past any bounded orbit
        }
        prev = Some(mag);
    }
    let src = SequenceSource::Nonlinear(rec.clone());
    let mut report = enumerate_prime_divisors(&src, prime_bound, checkpoints, opts)?;
    report.growth_strict = Some(strictly_increasing(&report.checkpoints));
    Ok(report)
}

/// Divisor enumeration restricted to primes coprime to `m`, after
/// confirming the hypothesis `gcd(a_n, m) = 1` over a full period.
pub fn coprime_prime_divisors(
    src: &SequenceSource,
    m: &Nat,
    prime_bound: u64,
    checkpoints: &[u64],
    opts: &ScanOptions,
) -> Result<DivisorReport, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if !m.is_one() {
        let cert = period_mod_capped(src, m, opts.state_cap)?;
        let horizon = cert.preperiod + cert.period;
        let mut failure: Option<(u64, Nat)> = None;
        crate::modular::for_each_residue(src, m, horizon, |n, r| {
            if failure.is_none() {
                let g = r.gcd(m);
                if !g.is_one() {
                    failure = Some((n, g));
                }
            }
        })?;
        if let Some((n, g)) = failure {
            return Err(Error::HypothesisFailed {
                n,
                witness: Int::from(g),
            });
        }
    }
    let mut report = enumerate_prime_divisors(src, prime_bound, checkpoints, opts)?;
    // primes dividing m cannot divide any term; they are non-divisors by
    // the hypothesis just checked
    debug_assert!(report
        .divisors
        .iter()
        .all(|h| !(m % Nat::from(h.prime)).is_zero()));
    report.growth_strict = Some(strictly_increasing(&report.checkpoints));
    Ok(report)
}

//! Exact degeneracy test: does the characteristic polynomial have two
//! distinct roots whose ratio is a root of unity?
//!
//! The verdict never touches floating point. The ratios of distinct roots
//! are captured as the roots of an integer "ratio polynomial" built from
//! resultants, and roots of unity are detected by cyclotomic GCD probes.

use crate::algebra::{cyclotomic, poly_gcd, resultant_bivariate_eval, reverse_poly, IntPoly};
use crate::error::Error;
use crate::primes::euler_phi_u64;

use super::linear::LinearRecurrence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// Some ratio of distinct characteristic roots is a primitive
    /// `cyclotomic_index`-th root of unity.
    Degenerate { cyclotomic_index: u64 },
    NonDegenerate,
}

impl Degeneracy {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Degeneracy::Degenerate { .. })
    }
}

/// `Res_y(s(y), s(x*y))`: a polynomial whose roots are the ratios `a/b`
/// over all ordered root pairs of `s`, diagonal included.
fn pairwise_ratio_resultant(s: &IntPoly) -> Result<IntPoly, Error> {
    let d = s.degree().ok_or(Error::ResultantOfZero)?;
    resultant_bivariate_eval(
        s,
        |x0| {
            IntPoly::new(
                s.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * x0.pow(i as u32))
                    .collect(),
            )
        },
        d * d,
    )
}

/// Decides degeneracy of a recurrence, assumed to be at minimal order
/// (reduce with [`minimal_order`](super::minimal_order) first).
///
/// Order 1 has no pair of distinct roots and is never degenerate. A
/// repeated root alone does not make the sequence degenerate: ratios are
/// taken over the squarefree part of the characteristic polynomial.
pub fn is_degenerate(rec: &LinearRecurrence) -> Result<Degeneracy, Error> {
    let k = rec.order();
    if k <= 1 {
        return Ok(Degeneracy::NonDegenerate);
    }
    let g = rec.characteristic_poly();
    let monic = reverse_poly(&g, k)?;
    let s = monic.squarefree_part()?;
    let d = match s.degree() {
        Some(d) if d >= 2 => d,
        _ => return Ok(Degeneracy::NonDegenerate),
    };

    // remove the (x - 1)^d contributed by the diagonal pairs
    let x_minus_one = IntPoly::from_i64(&[-1, 1]);
    let mut ratio = pairwise_ratio_resultant(&s)?;
    for _ in 0..d {
        ratio = ratio
            .div_exact(&x_minus_one)
            .ok_or_else(|| Error::Internal("diagonal pairs contribute (x-1)^deg".into()))?;
    }
    let deg_q = ratio.degree().unwrap_or(0) as u64;
    debug_assert_eq!(deg_q, (d * (d - 1)) as u64);

    // any root of unity among the ratios has Euler phi at most deg_q,
    // which bounds its index by 2 * deg_q^2
    for n in 1..=2 * deg_q * deg_q + 1 {
        if euler_phi_u64(n) > deg_q {
            continue;
        }
        let probe = poly_gcd(&ratio, &cyclotomic(n))?;
        if probe.degree().unwrap_or(0) > 0 {
            return Ok(Degeneracy::Degenerate { cyclotomic_index: n });
        }
    }
    Ok(Degeneracy::NonDegenerate)
}

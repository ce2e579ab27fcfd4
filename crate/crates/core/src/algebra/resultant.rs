//! Resultants over `Z` via the subresultant pseudo-remainder sequence,
//! which keeps intermediate coefficients polynomial-size.

use alloc::borrow::ToOwned;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::Int;

use super::poly::IntPoly;

fn exact_div(n: Int, d: &Int) -> Int {
    debug_assert!(!d.is_zero());
    let (q, r) = num_integer::Integer::div_rem(&n, d);
    debug_assert!(r.is_zero(), "division in subresultant sequence must be exact");
    q
}

/// `Res_x(p, q)`, exact.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<Int, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ResultantOfZero);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut negate = false;
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            negate = !negate;
        }
        core::mem::swap(&mut a, &mut b);
    }
    // Res(ca*A, cb*B) = ca^deg(B) * cb^deg(A) * Res(A, B)
    let ca = a.content();
    let cb = b.content();
    let scale = ca.pow(b.degree().unwrap() as u32) * cb.pow(a.degree().unwrap() as u32);
    let mut a = a.div_scalar_exact(&ca).unwrap();
    let mut b = b.div_scalar_exact(&cb).unwrap();

    let mut g = Int::one();
    let mut h = Int::one();
    while b.degree().unwrap() > 0 {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = &g * h.pow(delta);
        b = r
            .div_scalar_exact(&denom)
            .ok_or_else(|| Error::Internal("subresultant divisor must be exact".to_owned()))?;
        if b.is_zero() {
            return Ok(Int::zero());
        }
        g = a.leading().unwrap().clone();
        if delta > 0 {
            h = exact_div(g.pow(delta), &h.pow(delta - 1));
        }
    }
    // b is a nonzero constant now
    let da = a.degree().unwrap();
    let res = if da == 0 {
        Int::one()
    } else {
        exact_div(b.leading().unwrap().pow(da as u32), &h.pow(da as u32 - 1))
    };
    let res = scale * res;
    Ok(if negate { -res } else { res })
}

/// `Res_y(a(y), b_x(y))` as a polynomial in `x`, computed by evaluating the
/// specialized univariate resultant at `deg_bound + 1` points and
/// interpolating exactly.
///
/// `specialize(x0)` must return `b` with `x = x0` substituted, and its
/// `y`-degree must not drop at any of the sample points; points are drawn
/// from `1, -1, 2, -2, ...` (never zero), so callers whose leading
/// coefficient is a monomial in `x` are safe.
pub fn resultant_bivariate_eval<F>(
    a: &IntPoly,
    specialize: F,
    deg_bound: usize,
) -> Result<IntPoly, Error>
where
    F: Fn(&Int) -> IntPoly,
{
    let mut points = Vec::with_capacity(deg_bound + 1);
    let mut values = Vec::with_capacity(deg_bound + 1);
    let mut next = 1i64;
    while points.len() <= deg_bound {
        let x0 = Int::from(next);
        let b0 = specialize(&x0);
        values.push(resultant(a, &b0)?);
        points.push(x0);
        next = if next > 0 { -next } else { -next + 1 };
    }
    Ok(interpolate(&points, &values))
}

/// Lagrange interpolation through integer points with an integer result.
fn interpolate(points: &[Int], values: &[Int]) -> IntPoly {
    use num_rational::BigRational;
    let mut acc: Vec<BigRational> = alloc::vec![BigRational::zero(); points.len()];
    for (j, (xj, vj)) in points.iter().zip(values).enumerate() {
        if vj.is_zero() {
            continue;
        }
        // basis polynomial prod_{i != j} (x - x_i) / (x_j - x_i)
        let mut num = alloc::vec![Int::one()];
        let mut den = Int::one();
        for (i, xi) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = alloc::vec![Int::zero(); num.len() + 1];
            for (d, c) in num.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * xi;
            }
            num = next;
            den *= xj - xi;
        }
        let w = BigRational::new(vj.clone(), den);
        for (d, c) in num.iter().enumerate() {
            acc[d] += BigRational::from(c.clone()) * &w;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|r| {
            debug_assert!(r.is_integer(), "interpolated resultant must be integral");
            r.to_integer()
        })
        .collect();
    IntPoly::new(coeffs)
}

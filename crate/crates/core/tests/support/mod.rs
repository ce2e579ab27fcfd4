//! Shared oracles for the integration and acceptance suites. Everything
//! here is deliberately independent of the library's computation paths:
//! linear fits go through rational Gaussian elimination, roots through a
//! Durand-Kerner iteration.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: &BigInt) -> Rat {
    Rat::from(n.clone())
}

/// Solves `A x = b` exactly; returns any solution, or `None` when the
/// system is inconsistent.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for j in col..=cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=cols {
                    m[r][j] = &m[r][j] - &f * &m[rank][j];
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // inconsistent iff a zero row has nonzero rhs
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}

/// Minimal linear relation fitted to a window of terms: the smallest `L`
/// such that `a_{n+L} = c_1 a_{n+L-1} + ... + c_L a_n` holds across the
/// window, found by exact linear solves. Returns `(L, [c_1..c_L])`;
/// `L = 0` means the window is identically zero.
pub fn fit_min_relation(terms: &[BigInt], max_order: usize) -> Option<(usize, Vec<Rat>)> {
    if terms.iter().all(Zero::is_zero) {
        return Some((0, Vec::new()));
    }
    'orders: for l in 1..=max_order {
        if terms.len() < 2 * l {
            break;
        }
        let rows = terms.len() - l;
        let a: Vec<Vec<Rat>> = (0..rows)
            .map(|n| (0..l).map(|i| rat(&terms[n + l - 1 - i])).collect())
            .collect();
        let b: Vec<Rat> = (0..rows).map(|n| rat(&terms[n + l])).collect();
        let Some(c) = solve_rational(&a, &b) else {
            continue 'orders;
        };
        // confirm on every window
        for n in 0..rows {
            let mut acc = Rat::zero();
            for i in 0..l {
                acc += &c[i] * rat(&terms[n + l - 1 - i]);
            }
            if acc != rat(&terms[n + l]) {
                continue 'orders;
            }
        }
        return Some((l, c));
    }
    None
}

/// All roots of an integer polynomial, ascending coefficients, by
/// Durand-Kerner iteration on the monic normalization.
pub fn roots_f64(coeffs: &[BigInt]) -> Vec<Complex64> {
    let float: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap()).collect();
    let deg = float.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = float[deg];
    let monic: Vec<f64> = float.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|j| seed.powu(j as u32 + 1)).collect();
    for _ in 0..600 {
        let mut delta: f64 = 0.0;
        for j in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for i in 0..deg {
                if i != j {
                    denom *= z[j] - z[i];
                }
            }
            let step = eval(z[j]) / denom;
            z[j] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// Numeric degeneracy oracle: some ratio of two roots satisfies
/// `|ratio^n - 1| < tol` for an `n` up to `max_order`. Intended for
/// squarefree characteristic polynomials.
pub fn ratio_near_root_of_unity(roots: &[Complex64], max_order: u32, tol: f64) -> bool {
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            let ratio = a / b;
            let mut power = Complex64::new(1.0, 0.0);
            for _ in 1..=max_order {
                power *= ratio;
                if (power - Complex64::new(1.0, 0.0)).norm() < tol {
                    return true;
                }
            }
        }
    }
    false
}

/// Asserts the fitted relation has integer coefficients and returns them.
pub fn assert_integer_relation(c: &[Rat]) -> Vec<BigInt> {
    c.iter()
        .map(|r| {
            assert!(r.is_integer(), "fitted coefficient {r} is not an integer");
            r.to_integer()
        })
        .collect()
}

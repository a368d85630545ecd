//! Exact dense linear algebra at desk scale: fraction-free rank over the
//! integers and small rational solves. No tolerances anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rat;

/// Rank of an integer matrix by fraction-free (Bareiss) Gaussian
/// elimination. Every division is exact by construction.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Clears denominators of a rational row, returning integers with the same
/// span (each row is scaled by the positive lcm of its denominators).
pub(crate) fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        let d = x.denom();
        let g = gcd(&lcm, d);
        lcm = &lcm / &g * d;
    }
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Solves `A·x = b` over the rationals by Gauss–Jordan elimination.
///
/// Returns the solution when the system is consistent and has full column
/// rank (unique solution), `None` otherwise.
#[allow(clippy::needless_range_loop)] // elimination reads best indexed
pub(crate) fn solve_unique(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    debug_assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_rows = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for x in aug[r][c..].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                for j in c..=cols {
                    let delta = &factor * &aug[r][j];
                    aug[i][j] -= delta;
                }
            }
        }
        pivot_rows.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: no zero row equals a nonzero rhs
    for row in aug.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    if pivot_rows.len() < cols {
        return None; // underdetermined
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &c) in pivot_rows.iter().enumerate() {
        x[c] = aug[row][cols].clone();
    }
    Some(x)
}

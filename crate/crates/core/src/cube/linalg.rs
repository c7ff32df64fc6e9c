//! Exact ranks of sparse integer matrices given by columns.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Sparse column: `(row, value)` with strictly increasing rows, no zeros.
pub type SparseColumn = Vec<(u32, i64)>;

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn distinct_nonzero(columns: &[SparseColumn]) -> Vec<&SparseColumn> {
    let mut seen = HashSet::new();
    columns.iter().filter(|c| !c.is_empty() && seen.insert(c.as_slice())).collect()
}

/// Rank over `Q`.
///
/// Columns are reduced one at a time against an integer echelon basis kept
/// primitive (content 1). Arithmetic is `i128` with overflow checks; on
/// overflow the computation restarts with big integers.
pub fn rank_rational(nrows: usize, columns: &[SparseColumn]) -> usize {
    let cols = distinct_nonzero(columns);
    rank_i128(nrows, &cols).unwrap_or_else(|| rank_bigint(nrows, &cols))
}

fn dense_i128(nrows: usize, c: &SparseColumn) -> Vec<i128> {
    let mut v = vec![0i128; nrows];
    for &(r, x) in c {
        v[r as usize] = x as i128;
    }
    v
}

fn rank_i128(nrows: usize, cols: &[&SparseColumn]) -> Option<usize> {
    // basis[p] = vector with pivot p (zeros before p).
    let mut basis: Vec<Option<Vec<i128>>> = vec![None; nrows];
    let mut rank = 0;
    for c in cols {
        let mut x = dense_i128(nrows, c);
        let mut p = 0;
        loop {
            while p < nrows && x[p] == 0 {
                p += 1;
            }
            if p == nrows {
                break;
            }
            let Some(b) = &basis[p] else {
                let g = x[p..].iter().fold(0, |g, &v| gcd_i128(g, v));
                for v in &mut x[p..] {
                    *v /= g;
                }
                basis[p] = Some(x);
                rank += 1;
                break;
            };
            let g = gcd_i128(b[p], x[p]);
            let (mb, mx) = (x[p] / g, b[p] / g);
            let mut content = 0i128;
            for i in p..nrows {
                let v = x[i].checked_mul(mx)?.checked_sub(b[i].checked_mul(mb)?)?;
                x[i] = v;
                content = gcd_i128(content, v);
            }
            if content > 1 {
                for v in &mut x[p..] {
                    *v /= content;
                }
            }
        }
        if rank == nrows {
            break;
        }
    }
    Some(rank)
}

fn rank_bigint(nrows: usize, cols: &[&SparseColumn]) -> usize {
    let mut basis: Vec<Option<Vec<BigInt>>> = vec![None; nrows];
    let mut rank = 0;
    for c in cols {
        let mut x = vec![BigInt::zero(); nrows];
        for &(r, v) in c.iter() {
            x[r as usize] = BigInt::from(v);
        }
        let mut p = 0;
        loop {
            while p < nrows && x[p].is_zero() {
                p += 1;
            }
            if p == nrows {
                break;
            }
            let Some(b) = &basis[p] else {
                basis[p] = Some(x);
                rank += 1;
                break;
            };
            let g = gcd_big(&b[p], &x[p]);
            let mb = &x[p] / &g;
            let mx = &b[p] / &g;
            let mut content = BigInt::zero();
            for i in p..nrows {
                x[i] = &x[i] * &mx - &b[i] * &mb;
                content = gcd_big(&content, &x[i]);
            }
            if content > BigInt::from(1) {
                for v in &mut x[p..] {
                    *v /= &content;
                }
            }
        }
        if rank == nrows {
            break;
        }
    }
    rank
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Rank over `Z/q`, `q` prime.
pub fn rank_mod(nrows: usize, columns: &[SparseColumn], q: u64) -> usize {
    let cols = distinct_nonzero(columns);
    let q128 = q as u128;
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; nrows];
    let mut rank = 0;
    for c in cols {
        let mut x = vec![0u64; nrows];
        for &(r, v) in c.iter() {
            x[r as usize] = v.rem_euclid(q as i64) as u64;
        }
        let mut p = 0;
        loop {
            while p < nrows && x[p] == 0 {
                p += 1;
            }
            if p == nrows {
                break;
            }
            let Some(b) = &basis[p] else {
                let inv = crate::algebra::pow_mod(x[p], q - 2, q);
                for v in &mut x[p..] {
                    *v = (*v as u128 * inv as u128 % q128) as u64;
                }
                basis[p] = Some(x);
                rank += 1;
                break;
            };
            // b[p] == 1
            let f = x[p] as u128;
            for i in p..nrows {
                x[i] = ((x[i] as u128 + (q128 - f) * b[i] as u128) % q128) as u64;
            }
        }
        if rank == nrows {
            break;
        }
    }
    rank
}

//! Exact convex-hull membership by a phase-one simplex over rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Whether `q` is a convex combination of the points in `s`.
///
/// Solves `Σ λ_p p = q, Σ λ_p = 1, λ >= 0` with Bland's rule.
pub fn hull_membership(q: &[i64], s: &[Vec<i64>]) -> Result<bool> {
    let d = q.len();
    if s.is_empty() {
        return Err(Error::Parse("hull of an empty point set".into()));
    }
    if let Some(p) = s.iter().find(|p| p.len() != d) {
        return Err(Error::Dimension(p.len(), d));
    }
    if s.iter().any(|p| p.as_slice() == q) {
        return Ok(true);
    }
    for c in 0..d {
        let lo = s.iter().map(|p| p[c]).min().expect("nonempty");
        let hi = s.iter().map(|p| p[c]).max().expect("nonempty");
        if q[c] < lo || q[c] > hi {
            return Ok(false);
        }
    }
    Ok(phase_one(q, s))
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn phase_one(q: &[i64], s: &[Vec<i64>]) -> bool {
    let rows = q.len() + 1;
    let m = s.len();
    let cols = m + rows;
    // tableau rows: [A | I | rhs]
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let (coef, rhs): (Vec<i64>, i64) = if r < q.len() {
            (s.iter().map(|p| p[r]).collect(), q[r])
        } else {
            (vec![1; m], 1)
        };
        let sign = if rhs < 0 { -1 } else { 1 };
        let mut row: Vec<BigRational> = coef.iter().map(|&c| rat(sign * c)).collect();
        row.extend((0..rows).map(|k| rat(i64::from(k == r))));
        row.push(rat(sign * rhs));
        t.push(row);
    }
    let mut basis: Vec<usize> = (m..cols).collect();
    // objective: minimize the sum of artificials; reduced costs c_j - c_B B^-1 A_j
    loop {
        let reduced = |j: usize| -> BigRational {
            let cj = if j >= m { rat(1) } else { rat(0) };
            let mut z = BigRational::zero();
            for (r, &b) in basis.iter().enumerate() {
                if b >= m {
                    z += &t[r][j];
                }
            }
            cj - z
        };
        let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && reduced(j).is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let pivot = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = enter;
    }
    basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= m)
        .all(|(r, _)| t[r][cols].is_zero())
}

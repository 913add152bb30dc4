//! Exact simplex method over the rationals.
//!
//! Solves `maximize cᵀx subject to Ax ≤ b, x ≥ 0` for `b ≥ 0`, so the origin
//! is a feasible starting vertex. Bland's rule guarantees termination.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
}

/// Maximizes `cᵀx` over `{x ≥ 0 : Ax ≤ b}` with `b ≥ 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpOutcome, Error> {
    let m = a.len();
    let nv = c.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: b.len() });
    }
    if let Some(row) = a.iter().find(|r| r.len() != nv) {
        return Err(Error::DimensionMismatch { expected: nv, found: row.len() });
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::Internal("right-hand side must be non-negative".into()));
    }

    // tableau columns: nv decision variables, m slacks, rhs
    let width = nv + m + 1;
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            let mut r = vec![Rational::zero(); width];
            r[..nv].clone_from_slice(row);
            r[nv + i] = Rational::from_integer(1.into());
            r[width - 1] = bi.clone();
            r
        })
        .collect();
    // objective row holds reduced costs c_j − z_j
    let mut obj = vec![Rational::zero(); width];
    obj[..nv].clone_from_slice(c);
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    while let Some(enter) = (0..nv + m).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }

    let mut x = vec![Rational::zero(); nv];
    for (i, &v) in basis.iter().enumerate() {
        if v < nv {
            x[v] = t[i][width - 1].clone();
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    Ok(LpOutcome::Optimal { x, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36
        let a = rows(&[&[1, 0], &[0, 2], &[3, 2]]);
        let b = [int(4), int(12), int(18)];
        let c = [int(3), int(5)];
        assert_eq!(
            maximize(&a, &b, &c).unwrap(),
            LpOutcome::Optimal {
                x: vec![int(2), int(6)],
                value: int(36)
            }
        );
    }

    #[test]
    fn fractional_optimum() {
        // max x + y, 2x + y ≤ 1, x + 3y ≤ 1 → (2/5, 1/5)
        let a = rows(&[&[2, 1], &[1, 3]]);
        let out = maximize(&a, &[int(1), int(1)], &[int(1), int(1)]).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![ratio(2, 5), ratio(1, 5)],
                value: ratio(3, 5)
            }
        );
    }

    #[test]
    fn unbounded_and_degenerate() {
        let a = rows(&[&[1, -1]]);
        assert_eq!(maximize(&a, &[int(0)], &[int(0), int(1)]).unwrap(), LpOutcome::Unbounded);
        // all-zero right-hand side: only the origin is feasible along x
        let a = rows(&[&[1, -1], &[-1, 1], &[1, 1]]);
        let out = maximize(&a, &[int(0), int(0), int(2)], &[int(1), int(0)]).unwrap();
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if value == int(1)));
    }

    #[test]
    fn rejects_negative_rhs() {
        assert!(maximize(&rows(&[&[1]]), &[int(-1)], &[int(1)]).is_err());
    }
}

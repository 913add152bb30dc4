//! Linear subspaces of `n × n` rational matrices held in canonical form.
//!
//! A subspace is stored as the unique reduced row-echelon basis of its
//! row-major vectorization, so two subspaces are equal exactly when their
//! basis lists are equal. The pivot of a basis element is its first non-zero
//! coordinate; that coordinate is `1` there and `0` in every other basis
//! element, which makes the coordinates of a member readable off the pivots.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::{kernel, RationalMatrix};
use crate::rational::Rational;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    n: usize,
    basis: Vec<RationalMatrix>,
    pivots: Vec<usize>,
}

impl MatrixSubspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The span of `generators`, canonicalized.
    pub fn span<'a>(
        n: usize,
        generators: impl IntoIterator<Item = &'a RationalMatrix>,
    ) -> Result<Self, Error> {
        let mut s = Self::zero(n);
        for g in generators {
            s.insert(g.clone())?;
        }
        Ok(s)
    }

    pub fn span_owned(n: usize, generators: impl IntoIterator<Item = RationalMatrix>) -> Result<Self, Error> {
        let mut s = Self::zero(n);
        for g in generators {
            s.insert(g)?;
        }
        Ok(s)
    }

    /// All of `Mat_n`.
    pub fn full_matrix_space(n: usize) -> Self {
        let basis: Vec<_> = (0..n * n)
            .map(|k| RationalMatrix::from_fn(n, |i, j| unit(i * n + j == k)))
            .collect();
        Self {
            n,
            basis,
            pivots: (0..n * n).collect(),
        }
    }

    /// `{X ∈ Mat_n : c · vec(X) = 0 for every constraint c}`.
    pub fn solution_space(n: usize, constraints: Vec<Vec<Rational>>) -> Result<Self, Error> {
        if let Some(c) = constraints.iter().find(|c| c.len() != n * n) {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: c.len(),
            });
        }
        let null = kernel(constraints, n * n);
        Self::span_owned(
            n,
            null.into_iter().map(|v| RationalMatrix::from_vectorized(n, v).expect("length checked")),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// Pivot coordinates (row-major indices) of the canonical basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_n(&self, n: usize) -> Result<(), Error> {
        if self.n == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            })
        }
    }

    /// `m` minus its component along the basis, read off at the pivots.
    /// Zero exactly when `m` lies in the subspace.
    pub fn residual(&self, m: &RationalMatrix) -> Result<RationalMatrix, Error> {
        self.check_n(m.n())?;
        let mut v = m.entries().to_vec();
        self.reduce(&mut v);
        Ok(RationalMatrix::from_vectorized(self.n, v).expect("same length"))
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b.entries()).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    pub fn contains(&self, m: &RationalMatrix) -> Result<bool, Error> {
        Ok(self.residual(m)?.is_zero())
    }

    /// Coordinates of `m` in the canonical basis, or `None` if `m` is not a member.
    pub fn coordinates(&self, m: &RationalMatrix) -> Result<Option<Vec<Rational>>, Error> {
        if !self.contains(m)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| m.entries()[p].clone()).collect()))
    }

    /// Adds one generator, keeping the basis in reduced row-echelon form.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, m: RationalMatrix) -> Result<bool, Error> {
        self.check_n(m.n())?;
        let mut v = m.into_vectorized();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            *x *= &inv;
        }
        for b in self.basis.iter_mut() {
            let f = b.entries()[p].clone();
            if f.is_zero() {
                continue;
            }
            let mut e = core::mem::replace(b, RationalMatrix::zeros(0)).into_vectorized();
            for (x, y) in e.iter_mut().zip(&v).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            *b = RationalMatrix::from_vectorized(self.n, e).expect("same length");
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis
            .insert(at, RationalMatrix::from_vectorized(self.n, v).expect("same length"));
        Ok(true)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, Error> {
        other.check_n(self.n)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.check_n(other.n)?;
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone())?;
        }
        Ok(s)
    }

    /// Intersection via the kernel of `[B | −C]`, where `B`, `C` hold the two
    /// bases as columns.
    pub fn intersection(&self, other: &Self) -> Result<Self, Error> {
        self.check_n(other.n)?;
        let (p, q) = (self.dim(), other.dim());
        let rows: Vec<Vec<Rational>> = (0..self.n * self.n)
            .map(|k| {
                self.basis
                    .iter()
                    .map(|b| b.entries()[k].clone())
                    .chain(other.basis.iter().map(|c| -c.entries()[k].clone()))
                    .collect()
            })
            .collect();
        let null = kernel(rows, p + q);
        let mut out = Self::zero(self.n);
        for x in null {
            out.insert(self.combine(&x[..p]))?;
        }
        Ok(out)
    }

    /// `Σ coeffs[k] · basis[k]`.
    pub fn combine(&self, coeffs: &[Rational]) -> RationalMatrix {
        let mut v = vec![Rational::zero(); self.n * self.n];
        for (b, c) in self.basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b.entries()) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        RationalMatrix::from_vectorized(self.n, v).expect("same length")
    }

    /// `{X ∈ within : ⟨X, B⟩ = 0 for all B in self}` under [`offdiag_inner`].
    pub fn orthogonal_complement_within(&self, within: &Self) -> Result<Self, Error> {
        if !self.is_subspace_of(within)? {
            return Err(Error::NotContained);
        }
        let gram: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| within.basis.iter().map(|u| offdiag_inner(b, u).expect("same n")).collect())
            .collect();
        let null = kernel(gram, within.dim());
        Self::span_owned(self.n, null.iter().map(|y| within.combine(y)))
    }

    /// Every basis element has zero row sums.
    pub fn is_zero_row_sum(&self) -> bool {
        self.basis.iter().all(RationalMatrix::has_zero_row_sums)
    }

    /// Positions `(i, j)`, `i ≠ j`, where some member is non-zero.
    pub fn offdiag_support(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.basis.iter().any(|b| !b.get(i, j).is_zero()))
            .collect()
    }
}

fn unit(b: bool) -> Rational {
    if b {
        num_traits::One::one()
    } else {
        Rational::zero()
    }
}

/// The zero row sum matrices `𝓛ₙ`.
pub fn zero_row_sum_space(n: usize) -> MatrixSubspace {
    MatrixSubspace::solution_space(n, row_sum_constraints(n)).expect("well-formed constraints")
}

/// One constraint per row: the row sum vanishes.
pub fn row_sum_constraints(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n * n).map(|k| unit(k / n == i)).collect())
        .collect()
}

/// One constraint per column: the column sum vanishes.
pub fn col_sum_constraints(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|j| (0..n * n).map(|k| unit(k % n == j)).collect())
        .collect()
}

/// Sum over `i ≠ j` of `a_ij · b_ij`; invariant under simultaneous row and
/// column permutations and positive definite on `𝓛ₙ`.
pub fn offdiag_inner(a: &RationalMatrix, b: &RationalMatrix) -> Result<Rational, Error> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(a.offdiag()
        .zip(b.offdiag())
        .map(|((_, _, x), (_, _, y))| x * y)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn canonical_basis_is_independent_of_generating_set() {
        let a = m(&[&[-1, 1], &[0, 0]]);
        let b = m(&[&[0, 0], &[1, -1]]);
        let s1 = MatrixSubspace::span(2, [&a, &b]).unwrap();
        let s2 = MatrixSubspace::span_owned(2, [&a + &b, &a - &b.scale(&int(3)), a.clone()]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn elementary_pair_spans_all_zero_row_sum_2x2() {
        let l12 = m(&[&[-1, 1], &[0, 0]]);
        let l21 = m(&[&[0, 0], &[1, -1]]);
        let s = MatrixSubspace::span(2, [&l12, &l21]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, zero_row_sum_space(2));
    }

    #[test]
    fn contains_scalar_multiples() {
        let j = m(&[&[-2, 1, 1], &[1, -2, 1], &[1, 1, -2]]).scale(&ratio(1, 3));
        let s = MatrixSubspace::span(3, [&j]).unwrap();
        assert!(s.contains(&j.scale(&int(3))).unwrap());
        assert!(!s.contains(&m(&[&[-1, 1, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap());
        assert!(s.contains(&m(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn coordinates_reconstruct_members() {
        let s = zero_row_sum_space(3);
        let q = m(&[&[-3, 1, 2], &[1, -3, 2], &[1, 1, -2]]);
        let c = s.coordinates(&q).unwrap().unwrap();
        assert_eq!(s.combine(&c), q);
        assert!(s.coordinates(&RationalMatrix::identity(3)).unwrap().is_none());
    }

    #[test]
    fn sum_and_intersection_are_idempotent() {
        let s = zero_row_sum_space(3);
        assert_eq!(s.sum(&s).unwrap(), s);
        assert_eq!(s.intersection(&s).unwrap(), s);
    }

    #[test]
    fn complement_of_whole_space_is_zero() {
        let s = zero_row_sum_space(3);
        assert_eq!(s.orthogonal_complement_within(&s).unwrap().dim(), 0);
        let small = MatrixSubspace::span(3, [&m(&[&[-1, 1, 0], &[0, 0, 0], &[0, 0, 0]])]).unwrap();
        assert_eq!(small.orthogonal_complement_within(&s).unwrap().dim(), 5);
        assert_eq!(s.orthogonal_complement_within(&small), Err(Error::NotContained));
    }

    #[test]
    fn inner_product_with_zero_vanishes() {
        let q = m(&[&[-3, 1, 2], &[1, -3, 2], &[1, 1, -2]]);
        assert!(offdiag_inner(&q, &RationalMatrix::zeros(3)).unwrap().is_zero());
        assert_eq!(offdiag_inner(&q, &q).unwrap(), int(1 + 4 + 1 + 4 + 1 + 1));
    }
}

//! Dense square matrices over the rationals and row reduction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};
use crate::Error;

/// A dense `n × n` matrix of exact rationals, stored row-major.
///
/// The row-major entry list doubles as the vectorized coordinates used by
/// [`MatrixSubspace`](crate::subspace::MatrixSubspace): entry `(i, j)` sits at
/// index `i * n + j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// Convenience constructor from small integer rows (tests and fixtures).
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
                .collect(),
        )
    }

    /// Rebuilds a matrix from its row-major vectorization.
    pub fn from_vectorized(n: usize, coords: Vec<Rational>) -> Result<Self, Error> {
        if coords.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: coords.len(),
            });
        }
        Ok(Self { n, entries: coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    /// Row-major view of the entries; this is the vectorized coordinate form.
    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_vectorized(self) -> Vec<Rational> {
        self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn has_zero_row_sums(&self) -> bool {
        self.row_sums().iter().all(Zero::is_zero)
    }

    /// Zero row sums and non-negative off-diagonal entries, decided exactly.
    pub fn is_rate_matrix(&self) -> bool {
        self.has_zero_row_sums() && self.offdiag().all(|(_, _, x)| !x.is_negative())
    }

    /// Entries in `[0, 1]` and unit row sums, decided exactly.
    pub fn is_markov_matrix(&self) -> bool {
        let one = Rational::one();
        self.entries.iter().all(|x| !x.is_negative() && *x <= one)
            && self.row_sums().iter().all(|s| *s == one)
    }

    /// Iterates `(i, j, entry)` over the off-diagonal positions in row-major order.
    pub fn offdiag(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(move |(k, _)| k / n != k % n)
            .map(move |(k, x)| (k / n, k % n, x))
    }

    fn check_same_n(&self, other: &Self) -> Result<(), Error> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_n(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The Jordan product `AB + BA`.
    pub fn jordan(&self, other: &Self) -> Result<Self, Error> {
        Ok(&self.try_mul(other)? + &other.try_mul(self)?)
    }

    /// The Lie bracket `AB − BA`.
    pub fn bracket(&self, other: &Self) -> Result<Self, Error> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(x))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! entrywise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &RationalMatrix {
            type Output = RationalMatrix;
            fn $method(self, rhs: &RationalMatrix) -> RationalMatrix {
                assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
                RationalMatrix {
                    n: self.n,
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }
        impl $trait for RationalMatrix {
            type Output = RationalMatrix;
            fn $method(self, rhs: RationalMatrix) -> RationalMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

entrywise!(Add, add, +);
entrywise!(Sub, sub, -);

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl Mul for RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: RationalMatrix) -> RationalMatrix {
        &self * &rhs
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        -&self
    }
}

/// Reduced row-echelon form of a (not necessarily square) rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination over ℚ. `cols` is needed for the empty-row case.
pub fn rref(mut rows: Vec<Vec<Rational>>, cols: usize) -> Rref {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        rank: pivots.len(),
        rows,
        pivots,
    }
}

/// Basis of the right null space `{x : A x = 0}` of a `rows × cols` system.
pub fn kernel(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let reduced = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &p) in reduced.pivots.iter().enumerate() {
                v[p] = -reduced.rows[r][free].clone();
            }
            v
        })
        .collect()
}

//! Floating-point matrix exponentials of rate matrices, validity predicates,
//! empirical stability checks, detailed balance and stationary distributions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::matrix::{kernel, RationalMatrix};
use crate::rational::{to_f64, Rational};
use crate::subspace::MatrixSubspace;
use crate::Error;

/// Dense row-major `n × n` matrix of finite doubles.
#[derive(Clone, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(x) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("entry {x}")));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        Self {
            n: m.n(),
            entries: m.entries().iter().map(to_f64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }

    /// `max |aᵢⱼ − bᵢⱼ|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_rate_matrix(&self, tol: f64) -> bool {
        self.is_finite()
            && (0..self.n).all(|i| {
                let sum: f64 = (0..self.n).map(|j| self.get(i, j)).sum();
                sum.abs() <= tol && (0..self.n).all(|j| i == j || self.get(i, j) >= -tol)
            })
    }

    pub fn is_markov_matrix(&self, tol: f64) -> bool {
        self.is_finite()
            && (0..self.n).all(|i| {
                let sum: f64 = (0..self.n).map(|j| self.get(i, j)).sum();
                (sum - 1.0).abs() <= tol && (0..self.n).all(|j| (-tol..=1.0 + tol).contains(&self.get(i, j)))
            })
    }
}

impl fmt::Debug for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n.max(1))).finish()
    }
}

impl Add for &FloatMatrix {
    type Output = FloatMatrix;
    fn add(self, rhs: &FloatMatrix) -> FloatMatrix {
        FloatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FloatMatrix {
    type Output = FloatMatrix;
    fn sub(self, rhs: &FloatMatrix) -> FloatMatrix {
        FloatMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FloatMatrix {
    type Output = FloatMatrix;
    fn mul(self, rhs: &FloatMatrix) -> FloatMatrix {
        let n = self.n;
        let mut out = FloatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Parameters of `e^{Qt} = e^{−λt} Σ (λt)ᵏ/k! Rᵏ`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformizationDecomposition {
    pub lambda: f64,
    /// `I + Q/λ`.
    pub r: FloatMatrix,
    pub terms_used: usize,
    /// Upper bound on the Poisson mass of the omitted terms.
    pub truncation_bound: f64,
}

/// Safety factor on `λ` so that `I + Q/λ` keeps a non-negative diagonal.
const LAMBDA_SAFETY: f64 = 1.0 + 1e-12;
/// Hard cap on series length; longer series need `t` split by the caller.
const MAX_TERMS: usize = 1_000_000;

fn ln_poisson(k: usize, mean: f64) -> f64 {
    let k = k as f64;
    -mean + k * libm::log(mean) - libm::lgamma(k + 1.0)
}

/// Poisson weights `e^{−m} mᵏ/k!` for `k = 0..=K`, where `K` is the smallest
/// index whose certified tail bound is at most `tol`, together with that bound.
fn poisson_weights(mean: f64, tol: f64) -> Result<(Vec<f64>, f64), Error> {
    if mean == 0.0 {
        return Ok((vec![1.0], 0.0));
    }
    let mut weights = Vec::new();
    let mut k = 0usize;
    loop {
        let w = libm::exp(ln_poisson(k, mean));
        if !w.is_finite() {
            return Err(Error::NonFinite(format!("Poisson weight at k = {k} for mean {mean}")));
        }
        weights.push(w);
        // for k + 2 > mean the tail Σ_{j>k} w_j is dominated by a geometric
        // series with ratio mean/(k+2)
        if (k + 2) as f64 > mean {
            let next = libm::exp(ln_poisson(k + 1, mean));
            let bound = next / (1.0 - mean / (k + 2) as f64);
            if bound <= tol {
                return Ok((weights, bound));
            }
        }
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::NonFinite(format!(
                "uniformization needs more than {MAX_TERMS} terms for λt = {mean}; split t"
            )));
        }
    }
}

/// `e^{Qt}` by uniformization with a certified truncation bound.
pub fn expm_uniformization(q: &FloatMatrix, t: f64, tol: f64) -> Result<(FloatMatrix, UniformizationDecomposition), Error> {
    if !q.is_rate_matrix(1e-9) {
        return Err(Error::NotRateMatrix);
    }
    if !(t.is_finite() && t >= 0.0 && tol.is_finite() && tol > 0.0) {
        return Err(Error::NonFinite(format!("t = {t}, tol = {tol}")));
    }
    let n = q.n();
    let max_diag = (0..n).map(|i| q.get(i, i).abs()).fold(0.0, f64::max);
    let lambda = if max_diag == 0.0 { 1.0 } else { max_diag * LAMBDA_SAFETY };
    let r = &FloatMatrix::identity(n) + &q.scale(1.0 / lambda);
    if max_diag == 0.0 {
        // a rate matrix with zero diagonal is zero
        let decomposition = UniformizationDecomposition {
            lambda,
            r,
            terms_used: 1,
            truncation_bound: 0.0,
        };
        return Ok((FloatMatrix::identity(n), decomposition));
    }
    let (weights, bound) = poisson_weights(lambda * t, tol)?;

    // Neumaier-compensated accumulation of Σ w_k R^k
    let mut sum = FloatMatrix::zeros(n);
    let mut comp = FloatMatrix::zeros(n);
    let mut power = FloatMatrix::identity(n);
    for (k, &w) in weights.iter().enumerate() {
        if k > 0 {
            power = &power * &r;
        }
        for (idx, &p) in power.entries.iter().enumerate() {
            let term = w * p;
            let s = sum.entries[idx];
            let total = s + term;
            comp.entries[idx] += if s.abs() >= term.abs() {
                (s - total) + term
            } else {
                (term - total) + s
            };
            sum.entries[idx] = total;
        }
    }
    let m = &sum + &comp;
    if !m.is_finite() {
        return Err(Error::NonFinite(String::from("exponential overflowed")));
    }
    Ok((
        m,
        UniformizationDecomposition {
            lambda,
            r,
            terms_used: weights.len(),
            truncation_bound: bound,
        },
    ))
}

/// `e^{Qt}` by scaling and squaring around a degree-18 Taylor polynomial.
/// Independent of the uniformization path and used as its oracle.
pub fn expm_reference(q: &FloatMatrix, t: f64) -> FloatMatrix {
    let n = q.n();
    let a = q.scale(t);
    let norm = a.norm_inf();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = libm::ceil(libm::log2(norm / 0.5)) as u32;
    }
    let scaled = a.scale(libm::pow(2.0, -(squarings as f64)));
    // Horner: I + A(I + A/2(I + A/3(...)))
    let identity = FloatMatrix::identity(n);
    let mut acc = identity.clone();
    for k in (1..=18).rev() {
        acc = &identity + &(&scaled * &acc).scale(1.0 / k as f64);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

/// One time point of an empirical stability run.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityObservation {
    pub t: f64,
    /// Max-abs distance from `e^{Qt} − I` to its least-squares projection onto the model span.
    pub residual: f64,
    /// Smallest off-diagonal entry of `e^{Qt} − I`.
    pub min_offdiag: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalStability {
    pub observations: Vec<StabilityObservation>,
    pub stable: bool,
}

/// Solves the symmetric positive definite system `G x = b` by Gaussian
/// elimination with partial pivoting.
fn solve_dense(mut g: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, Error> {
    let d = b.len();
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&x, &y| g[x][col].abs().total_cmp(&g[y][col].abs()))
            .expect("non-empty range");
        if g[pivot][col].abs() < 1e-300 {
            return Err(Error::Internal(String::from("singular Gram matrix")));
        }
        g.swap(col, pivot);
        b.swap(col, pivot);
        let (head, tail) = g.split_at_mut(col + 1);
        let pivot_row = &head[col];
        for (offset, row) in tail.iter_mut().enumerate() {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= f * p;
                }
                b[col + 1 + offset] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; d];
    for row in (0..d).rev() {
        let s: f64 = (row + 1..d).map(|k| g[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / g[row][row];
    }
    Ok(x)
}

/// Least-squares projection of `x` onto the span of `basis` (normal equations).
pub fn project(basis: &[FloatMatrix], x: &FloatMatrix) -> Result<FloatMatrix, Error> {
    let n = x.n();
    if basis.is_empty() {
        return Ok(FloatMatrix::zeros(n));
    }
    let dot = |a: &FloatMatrix, b: &FloatMatrix| a.entries.iter().zip(&b.entries).map(|(p, q)| p * q).sum::<f64>();
    let gram = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs = basis.iter().map(|a| dot(a, x)).collect();
    let coeffs = solve_dense(gram, rhs)?;
    Ok(basis
        .iter()
        .zip(coeffs)
        .fold(FloatMatrix::zeros(n), |acc, (b, c)| &acc + &b.scale(c)))
}

/// Tests numerically whether `e^{Qt} − I` stays a rate matrix of `S`.
pub fn empirical_stability(
    s: &MatrixSubspace,
    q: &RationalMatrix,
    t_grid: &[f64],
    tol: f64,
) -> Result<EmpiricalStability, Error> {
    if !s.contains(q)? {
        return Err(Error::Internal(String::from("Q is not in the model span")));
    }
    if !q.is_rate_matrix() {
        return Err(Error::NotRateMatrix);
    }
    let n = s.n();
    let basis: Vec<FloatMatrix> = s.basis().iter().map(FloatMatrix::from_rational).collect();
    let qf = FloatMatrix::from_rational(q);
    let identity = FloatMatrix::identity(n);
    let mut observations = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let (m, _) = expm_uniformization(&qf, t, 1e-14)?;
        let x = &m - &identity;
        let residual = (&x - &project(&basis, &x)?).max_abs();
        let min_offdiag = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| x.get(i, j))
            .fold(f64::INFINITY, f64::min);
        observations.push(StabilityObservation {
            t,
            residual,
            min_offdiag: if n > 1 { min_offdiag } else { 0.0 },
        });
    }
    let stable = observations.iter().all(|o| o.residual <= tol && o.min_offdiag >= -tol);
    Ok(EmpiricalStability { observations, stable })
}

/// Exact detailed balance `D(π)Q = QᵀD(π)`.
pub fn detailed_balance(q: &RationalMatrix, pi: &[Rational]) -> Result<bool, Error> {
    let n = q.n();
    if pi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    Ok((0..n).all(|i| (0..n).all(|j| &pi[i] * q.get(i, j) == &pi[j] * q.get(j, i))))
}

/// Detailed balance for a float matrix within `tol`.
pub fn detailed_balance_float(q: &FloatMatrix, pi: &[f64], tol: f64) -> Result<bool, Error> {
    let n = q.n();
    if pi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    Ok((0..n).all(|i| (0..n).all(|j| (pi[i] * q.get(i, j) - pi[j] * q.get(j, i)).abs() <= tol)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stationary {
    /// The normalized left null vector; entries are non-negative but may be zero.
    Unique(Vec<Rational>),
    /// The left null space has this dimension.
    NonUnique { dimension: usize },
}

impl fmt::Display for Stationary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stationary::Unique(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Stationary::NonUnique { dimension } => write!(f, "non-unique, null space dimension {dimension}"),
        }
    }
}

/// Exact stationary distribution of a rate matrix.
pub fn stationary_distribution(q: &RationalMatrix) -> Result<Stationary, Error> {
    if !q.is_rate_matrix() {
        return Err(Error::NotRateMatrix);
    }
    let n = q.n();
    let qt = q.transpose();
    let rows: Vec<Vec<Rational>> = qt.rows().map(<[Rational]>::to_vec).collect();
    let null = kernel(rows, n);
    if null.len() != 1 {
        return Ok(Stationary::NonUnique { dimension: null.len() });
    }
    let v = &null[0];
    let total: Rational = v.iter().sum();
    if total.is_zero() {
        return Err(Error::Internal(String::from("stationary vector sums to zero")));
    }
    let out: Vec<Rational> = v.iter().map(|x| x / &total).collect();
    if out.iter().any(|x| x.is_negative()) {
        return Err(Error::Internal(String::from("stationary vector has a negative entry")));
    }
    Ok(Stationary::Unique(out))
}

/// Random float rate matrix with off-diagonals uniform on `[0, scale)`;
/// each entry is zeroed with probability `sparsity`.
pub fn random_rate_matrix<R: Rng + ?Sized>(n: usize, scale: f64, sparsity: f64, rng: &mut R) -> FloatMatrix {
    let mut q = FloatMatrix::zeros(n);
    for i in 0..n {
        let mut total = 0.0;
        for j in 0..n {
            if i != j && rng.gen::<f64>() >= sparsity {
                let x = rng.gen::<f64>() * scale;
                q.set(i, j, x);
                total += x;
            }
        }
        q.set(i, i, -total);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::j_matrix;
    use crate::rational::{int, ratio};
    use rand::SeedableRng;

    #[test]
    fn zero_generator_gives_identity() {
        for n in 1..5 {
            let (m, d) = expm_uniformization(&FloatMatrix::zeros(n), 3.0, 1e-12).unwrap();
            assert_eq!(m, FloatMatrix::identity(n));
            assert_eq!(d.lambda, 1.0);
            assert_eq!(expm_reference(&FloatMatrix::zeros(n), 2.0), FloatMatrix::identity(n));
        }
    }

    #[test]
    fn two_state_closed_form() {
        let (a, b, t) = (0.7, 2.3, 1.9);
        let q = FloatMatrix::from_rows(vec![vec![-a, a], vec![b, -b]]).unwrap();
        let e = libm::exp(-(a + b) * t);
        let s = a + b;
        let exact = FloatMatrix::from_rows(vec![
            vec![(b + a * e) / s, (a - a * e) / s],
            vec![(b - b * e) / s, (a + b * e) / s],
        ])
        .unwrap();
        assert!(expm_reference(&q, t).max_abs_diff(&exact) < 1e-12);
        let (m, d) = expm_uniformization(&q, t, 1e-13).unwrap();
        assert!(m.max_abs_diff(&exact) < 1e-12);
        assert!(d.truncation_bound <= 1e-13);
        assert!(d.r.is_markov_matrix(1e-12));
    }

    #[test]
    fn j_exponential_closed_form() {
        let j = FloatMatrix::from_rational(&j_matrix(4));
        let t = 0.8;
        let closed = &FloatMatrix::identity(4) + &j.scale(1.0 - libm::exp(-t));
        let (m, _) = expm_uniformization(&j, t, 1e-14).unwrap();
        assert!(m.max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn rejects_non_rate_input() {
        let q = FloatMatrix::from_rows(vec![vec![1.0, -1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(expm_uniformization(&q, 1.0, 1e-10).unwrap_err(), Error::NotRateMatrix);
    }

    #[test]
    fn huge_lambda_t_is_refused() {
        let q = FloatMatrix::from_rows(vec![vec![-1e7, 1e7], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(expm_uniformization(&q, 1.0, 1e-10), Err(Error::NonFinite(_))));
    }

    #[test]
    fn random_agreement_small_batch() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..=8);
            let q = random_rate_matrix(n, 3.0, 0.3, &mut rng);
            let t = rng.gen::<f64>() * 2.0;
            let (m, _) = expm_uniformization(&q, t, 1e-12).unwrap();
            assert!(m.max_abs_diff(&expm_reference(&q, t)) < 1e-11);
            assert!(m.is_markov_matrix(1e-10));
        }
    }

    #[test]
    fn stationary_and_balance() {
        let j = j_matrix(3);
        assert_eq!(stationary_distribution(&j).unwrap(), Stationary::Unique(vec![ratio(1, 3); 3]));
        let sym = RationalMatrix::from_i64(&[&[-3, 1, 2], &[1, -2, 1], &[2, 1, -3]]).unwrap();
        assert!(detailed_balance(&sym, &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]).unwrap());
        assert_eq!(
            stationary_distribution(&RationalMatrix::zeros(3)).unwrap(),
            Stationary::NonUnique { dimension: 3 }
        );
        let absorbing = RationalMatrix::from_i64(&[&[-1, 1], &[0, 0]]).unwrap();
        assert_eq!(stationary_distribution(&absorbing).unwrap(), Stationary::Unique(vec![int(0), int(1)]));
    }
}

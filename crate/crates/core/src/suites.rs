//! Named bundles of exact identity checks.
//!
//! Every check records whether it passed and a short detail string; failing
//! checks carry the offending matrices so the failure can be re-verified.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{jordan_closed, matrix_algebra_closed};
use crate::catalog::{
    column_generator, elementary, gtr_subspace, hky_basis, j_matrix, permutation_generator, row_generator,
    sample_distributions, tn_basis, DistributionVector,
};
use crate::matrix::RationalMatrix;
use crate::perm::{all_permutations, Permutation};
use crate::rational::{format_rational, int, ratio, Rational};
use crate::subspace::{zero_row_sum_space, MatrixSubspace};
use crate::uniformization::{detailed_balance, expm_uniformization, stationary_distribution, FloatMatrix, Stationary};
use crate::Error;

pub const SUITE_NAMES: [&str; 8] = [
    "rate-algebra",
    "elementary-jordan",
    "prods1",
    "tn-products",
    "hky-refute",
    "gtr-witness",
    "four-cycles",
    "j-identities",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Runs a suite; `samples` random distribution vectors are drawn from `seed`
/// where a suite needs them.
pub fn run_suite(name: &str, seed: u64, samples: usize) -> Result<SuiteReport, Error> {
    let checks = match name {
        "rate-algebra" => rate_algebra()?,
        "elementary-jordan" => elementary_jordan()?,
        "prods1" => prods1()?,
        "tn-products" => tn_products(seed, samples)?,
        "hky-refute" => hky_refute(seed, samples)?,
        "gtr-witness" => gtr_witness()?,
        "four-cycles" => four_cycles()?,
        "j-identities" => j_identities()?,
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    };
    Ok(SuiteReport {
        suite: String::from(name),
        checks,
    })
}

fn l(i: usize, j: usize, n: usize) -> RationalMatrix {
    elementary(i, j, n).expect("in range")
}

fn delta(a: usize, b: usize) -> Rational {
    int((a == b) as i64)
}

/// `B = 𝟙αᵀ` with `α = eᵢ − e_{n−1}`: constant columns, zero row sums.
fn constant_column(i: usize, n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, c| {
        if c == i {
            int(1)
        } else if c == n - 1 {
            int(-1)
        } else {
            Rational::zero()
        }
    })
}

/// Linear constraints on `vec(X)` expressing `Q X = 0` (or `X Q = 0` when
/// `left` is false) for one fixed `Q`.
fn product_constraints(q: &RationalMatrix, x_on_right: bool) -> Vec<Vec<Rational>> {
    let n = q.n();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut c = vec![Rational::zero(); n * n];
            for k in 0..n {
                if x_on_right {
                    // (QX)_ab = Σ_k Q_ak X_kb
                    c[k * n + b] += q.get(a, k);
                } else {
                    // (XQ)_ab = Σ_k X_ak Q_kb
                    c[a * n + k] += q.get(k, b);
                }
            }
            rows.push(c);
        }
    }
    rows
}

fn rate_algebra() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 2..=5 {
        let ln = zero_row_sum_space(n);
        out.push(check(
            format!("n={n}: zero row sum matrices form a matrix algebra"),
            matrix_algebra_closed(&ln)?.closed,
            "all basis products stay in the space",
        ));

        let bs: Vec<RationalMatrix> = (0..n - 1).map(|i| constant_column(i, n)).collect();
        let annihilated = ln.basis().iter().all(|q| bs.iter().all(|b| (q * b).is_zero()));
        out.push(check(
            format!("n={n}: QB = 0 for constant-column B"),
            annihilated,
            format!("{} basis Q x {} B", ln.dim(), bs.len()),
        ));

        let j = j_matrix(n);
        let right_identity = ln.basis().iter().all(|q| bs.iter().all(|b| &(q * &(&b.clone() - &j)) == q));
        out.push(check(format!("n={n}: Q(-J + B) = Q"), right_identity, "every basis Q, every B"));

        // right annihilator {X ∈ 𝓛ₙ : QX = 0 ∀Q} is exactly the B family
        let mut constraints = crate::subspace::row_sum_constraints(n);
        for q in ln.basis() {
            constraints.extend(product_constraints(q, true));
        }
        let right_ann = MatrixSubspace::solution_space(n, constraints)?;
        let b_span = MatrixSubspace::span(n, &bs)?;
        out.push(check(
            format!("n={n}: right annihilator equals the constant-column family"),
            right_ann == b_span,
            format!("dimension {}", right_ann.dim()),
        ));

        let mut constraints = crate::subspace::row_sum_constraints(n);
        for q in ln.basis() {
            constraints.extend(product_constraints(q, false));
        }
        let left_ann = MatrixSubspace::solution_space(n, constraints)?;
        out.push(check(
            format!("n={n}: no non-zero left annihilator"),
            left_ann.dim() == 0,
            format!("dimension {}", left_ann.dim()),
        ));

        // LB = 0 for every L in a basis, so LB = B is impossible for B ≠ 0
        let no_left_identity = ln.basis().iter().all(|q| bs.iter().all(|b| (q * b).is_zero() && !b.is_zero()));
        out.push(check(
            format!("n={n}: no left identity (LB = 0 != B for every basis L)"),
            no_left_identity,
            "",
        ));
    }
    Ok(out)
}

fn elementary_jordan() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 1..=5 {
        // literal statement with L_ij read as +1 at (j, i), −1 at (j, j)
        let lt = |a: usize, b: usize| l(b, a, n);
        let mut literal_fail = None;
        let mut row_fail = None;
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        count += 1;
                        let lhs = lt(i, j).jordan(&lt(k, m))?;
                        let rhs = &(&(&lt(i, j) + &lt(k, m)).scale(&-delta(j, m))
                            + &(&lt(i, m) - &lt(k, m)).scale(&delta(j, k)))
                            + &(&lt(k, j) - &lt(i, j)).scale(&delta(i, m));
                        if lhs != rhs && literal_fail.is_none() {
                            literal_fail = Some((i, j, k, m, lhs, rhs));
                        }
                        // the same identity restated for the row convention
                        let lhs = l(i, j, n).jordan(&l(k, m, n))?;
                        let rhs = &(&(&l(i, j, n) + &l(k, m, n)).scale(&-delta(i, k))
                            + &(&l(k, j, n) - &l(k, m, n)).scale(&delta(i, m)))
                            + &(&l(i, m, n) - &l(i, j, n)).scale(&delta(j, k));
                        if lhs != rhs && row_fail.is_none() {
                            row_fail = Some((i, j, k, m, lhs, rhs));
                        }
                    }
                }
            }
        }
        let describe = |f: &Option<(usize, usize, usize, usize, RationalMatrix, RationalMatrix)>| match f {
            None => format!("{count} index tuples"),
            Some((i, j, k, m, lhs, rhs)) => format!("tuple ({i},{j},{k},{m}): lhs {lhs} != rhs {rhs}"),
        };
        out.push(check(
            format!("n={n}: L_ij (.) L_kl, column convention"),
            literal_fail.is_none(),
            describe(&literal_fail),
        ));
        out.push(check(
            format!("n={n}: L_ij (.) L_kl, row convention"),
            row_fail.is_none(),
            describe(&row_fail),
        ));
    }
    Ok(out)
}

fn prods1() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 3..=6 {
        let nn = int(n as i64);
        let r: Vec<_> = (0..n).map(|i| column_generator(i, n)).collect();
        let c: Vec<_> = (0..n).map(|i| row_generator(i, n)).collect();
        let j = j_matrix(n);
        let mut fails: [Option<String>; 4] = Default::default();
        for a in 0..n {
            for b in 0..n {
                let mut record = |slot: usize, ok: bool| {
                    if !ok && fails[slot].is_none() {
                        fails[slot] = Some(format!("i={}, j={}", a + 1, b + 1));
                    }
                };
                record(0, r[a].jordan(&r[b])? == -(&r[a] + &r[b]));
                let expected = &(&j - &r[b]).scale(&(&nn * delta(a, b))) - &c[b].scale(&int(2));
                record(1, r[a].jordan(&c[b])? == expected);
                if a == b {
                    record(2, c[a].jordan(&c[a])? == c[a].scale(&int(-2 * (n as i64 - 1))));
                } else {
                    let expected = &(&c[a] + &c[b]) - &(&l(a, b, n) + &l(b, a, n)).scale(&nn);
                    record(3, c[a].jordan(&c[b])? == expected);
                }
            }
        }
        let names = [
            "R_i (.) R_j = -(R_i + R_j)",
            "R_i (.) C_j = n d_ij (J - R_j) - 2 C_j",
            "C_i (.) C_i = -2(n-1) C_i",
            "C_i (.) C_j = C_i + C_j - n(L_ij + L_ji)",
        ];
        for (name, fail) in names.iter().zip(fails) {
            out.push(check(
                format!("n={n}: {name}"),
                fail.is_none(),
                fail.map_or_else(|| String::from("all index pairs"), |f| format!("fails at {f}")),
            ));
        }
    }
    Ok(out)
}

fn show(pi: &DistributionVector) -> String {
    let parts: Vec<String> = pi.values().iter().map(format_rational).collect();
    format!("pi=({})", parts.join(","))
}

fn tn_products(seed: u64, samples: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let fixed = DistributionVector::new(vec![ratio(1, 8), ratio(1, 4), ratio(1, 4), ratio(3, 8)])?;
    let mut pis = vec![fixed];
    pis.extend(sample_distributions(4, samples, seed));
    for pi in &pis {
        let p = pi.values();
        let s12 = &p[0] + &p[1];
        let s34 = &p[2] + &p[3];
        let [a, b, c] = tn_basis(pi)?;
        let tag = show(pi);
        let eq = |x: &RationalMatrix, y: &RationalMatrix| x == y;
        out.push(check(format!("{tag}: A^2 = -(p1+p2)A"), eq(&(&a * &a), &a.scale(&-s12.clone())), ""));
        out.push(check(format!("{tag}: B^2 = -(p3+p4)B"), eq(&(&b * &b), &b.scale(&-s34.clone())), ""));
        out.push(check(
            format!("{tag}: AB = BA = 0"),
            (&a * &b).is_zero() && (&b * &a).is_zero(),
            "",
        ));
        let ac = a.scale(&-s34.clone());
        out.push(check(
            format!("{tag}: AC = CA = -(p3+p4)A"),
            eq(&(&a * &c), &ac) && eq(&(&c * &a), &ac),
            "",
        ));
        let bc = &b * &c;
        let symmetric_form = b.scale(&-s12.clone());
        let swapped_form = b.scale(&(&p[1] - &p[0]));
        out.push(check(
            format!("{tag}: BC = CB = -(p1+p2)B"),
            eq(&bc, &symmetric_form) && eq(&(&c * &b), &symmetric_form),
            format!("sign-swapped variant (-p1+p2)B matches: {}", eq(&bc, &swapped_form)),
        ));
        let c2 = &(&(&a.scale(&s34) + &b.scale(&s12)) - &c);
        out.push(check(
            format!("{tag}: C^2 = (p3+p4)A + (p1+p2)B - C"),
            eq(&(&c * &c), c2),
            format!("C (.) C = 2 C^2 holds: {}", eq(&c.jordan(&c)?, &c2.scale(&int(2)))),
        ));
        let span = MatrixSubspace::span(4, [&a, &b, &c])?;
        out.push(check(format!("{tag}: span(A, B, C) is a Jordan algebra"), jordan_closed(&span)?.closed, ""));
    }
    Ok(out)
}

/// Distribution with `π₁ + π₂ = π₃ + π₄ = 1/2`.
pub fn hky_degenerate_pi() -> DistributionVector {
    DistributionVector::new(vec![ratio(1, 8), ratio(3, 8), ratio(1, 4), ratio(1, 4)]).expect("valid")
}

fn hky_refute(seed: u64, samples: usize) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let fixed = DistributionVector::new(vec![ratio(1, 8), ratio(1, 4), ratio(1, 4), ratio(3, 8)])?;
    let mut pis = vec![fixed];
    pis.extend(sample_distributions(4, samples, seed));
    for pi in &pis {
        let [a, b] = hky_basis(pi)?;
        let span = MatrixSubspace::span(4, [&a, &b])?;
        let balanced = &pi.values()[0] + &pi.values()[1] == ratio(1, 2);
        let escapes = !span.contains(&(&a * &a))?;
        let verdict = jordan_closed(&span)?;
        out.push(check(
            format!("{}: A^2 outside span(A, B)", show(pi)),
            escapes != balanced,
            format!("p1+p2 = 1/2: {balanced}; Jordan closed: {}", verdict.closed),
        ));
    }
    let pi = hky_degenerate_pi();
    let [a, b] = hky_basis(&pi)?;
    let span = MatrixSubspace::span(4, [&a, &b])?;
    out.push(check(
        format!("{}: A^2 inside span(A, B) when p1+p2 = p3+p4", show(&pi)),
        span.contains(&(&a * &a))? && jordan_closed(&span)?.closed,
        "",
    ));
    Ok(out)
}

/// The two reversible generators whose sum has no reversible distribution.
pub fn gtr_witness_matrices() -> (RationalMatrix, DistributionVector, RationalMatrix, DistributionVector) {
    let q = RationalMatrix::from_i64(&[&[-3, 1, 2], &[1, -3, 2], &[1, 1, -2]]).expect("square");
    let pi = DistributionVector::new(vec![ratio(1, 4), ratio(1, 4), ratio(1, 2)]).expect("valid");
    let q2 = RationalMatrix::from_i64(&[&[-1, 0, 1], &[0, 0, 0], &[1, 0, -1]]).expect("square");
    (q, pi, q2, DistributionVector::uniform(3))
}

fn embed(q: &RationalMatrix, n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |i, j| {
        if i < q.n() && j < q.n() {
            q.get(i, j).clone()
        } else {
            Rational::zero()
        }
    })
}

fn gtr_witness() -> Result<Vec<Check>, Error> {
    let (q, pi, q2, pi2) = gtr_witness_matrices();
    let mut out = vec![
        check(
            "Q in GTR_pi, pi = (1/4,1/4,1/2)",
            gtr_subspace(&pi)?.contains(&q)? && q.is_rate_matrix() && detailed_balance(&q, pi.values())?,
            "",
        ),
        check(
            "Q' in GTR_pi', pi' uniform",
            gtr_subspace(&pi2)?.contains(&q2)? && q2.is_rate_matrix(),
            "",
        ),
    ];
    let sum = &q + &q2;
    let expected = vec![ratio(7, 24), ratio(6, 24), ratio(11, 24)];
    let stationary = stationary_distribution(&sum)?;
    out.push(check(
        "stationary distribution of Q + Q' is (7,6,11)/24",
        stationary == Stationary::Unique(expected.clone()),
        format!("{stationary}"),
    ));
    out.push(check(
        "detailed balance fails for Q + Q'",
        !detailed_balance(&sum, &expected)?,
        format!("Q + Q' = {sum}"),
    ));
    for n in 4..=5 {
        let r = embed(&sum, n);
        let st = stationary_distribution(&r)?;
        out.push(check(
            format!("n={n}: embedded sum has a non-unique stationary distribution"),
            matches!(st, Stationary::NonUnique { .. }),
            format!("{st}"),
        ));
        let mut pi_r = expected.clone();
        pi_r.extend((3..n).map(|_| Rational::zero()));
        out.push(check(
            format!("n={n}: detailed balance fails for the embedded sum"),
            !detailed_balance(&r, &pi_r)?,
            "",
        ));
    }
    Ok(out)
}

fn four_cycles() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 4..=5 {
        let mut count = 0;
        let mut failure = None;
        for sigma in all_permutations(n) {
            let cycles = sigma.cycles();
            let [c] = cycles.as_slice() else { continue };
            if c.len() != 4 {
                continue;
            }
            count += 1;
            let (i, j, k, m) = (c[0], c[1], c[2], c[3]);
            let cube = sigma.then(&sigma).then(&sigma);
            let q = &permutation_generator(&sigma) - &permutation_generator(&cube);
            let mut images: Vec<usize> = (0..n).collect();
            images.swap(i, k);
            images.swap(j, m);
            let double = permutation_generator(&Permutation::from_images(images)?);
            if q.jordan(&q)? != double.scale(&int(4)) && failure.is_none() {
                failure = Some(format!("sigma = {sigma}"));
            }
        }
        out.push(check(
            format!("n={n}: Q (.) Q = 4 L_(ik)(jl) for Q = L_s - L_s^3, s = (ijkl)"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{count} four-cycles")),
        ));
    }
    // two antisymmetric 4×4 rate-matrix directions whose product is symmetric
    // with a non-constant diagonal
    let x = RationalMatrix::from_i64(&[&[0, 0, -1, 1], &[0, 0, 1, -1], &[1, -1, 0, 0], &[-1, 1, 0, 0]])?;
    let y = RationalMatrix::from_i64(&[&[0, -1, 0, 1], &[1, 0, -1, 0], &[0, 1, 0, -1], &[-1, 0, 1, 0]])?;
    let expected = RationalMatrix::from_i64(&[&[-2, 0, 0, 2], &[0, 2, -2, 0], &[0, -2, 2, 0], &[2, 0, 0, -2]])?;
    out.push(check(
        "antisymmetric 4x4 Jordan product example",
        x.jordan(&y)? == expected,
        format!("{}", x.jordan(&y)?),
    ));
    Ok(out)
}

fn j_identities() -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let j = j_matrix(n);
        out.push(check(format!("n={n}: J^2 = -J"), &j * &j == -&j, ""));
        let jf = FloatMatrix::from_rational(&j);
        let mut worst: f64 = 0.0;
        for &t in &[0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let (m, _) = expm_uniformization(&jf, t, 1e-15)?;
            let closed = &FloatMatrix::identity(n) + &jf.scale(1.0 - libm::exp(-t));
            worst = worst.max(m.max_abs_diff(&closed));
        }
        out.push(check(
            format!("n={n}: e^(Jt) = I + (1 - e^(-t)) J within 1e-12"),
            worst <= 1e-12,
            format!("max deviation {worst:e}"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for name in SUITE_NAMES {
            let report = run_suite(name, 1, 3).unwrap();
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "{name}: {failed:#?}");
        }
        assert!(run_suite("nope", 0, 1).is_err());
    }
}

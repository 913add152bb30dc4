//! Generator matrices and model families.
//!
//! Indices are zero-based throughout the API. Nucleotide models use the state
//! order A, G, C, T.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::matrix::RationalMatrix;
use crate::perm::{all_permutations, PermGroup, Permutation};
use crate::rational::{int, ratio, Rational};
use crate::subspace::{col_sum_constraints, row_sum_constraints, MatrixSubspace};
use crate::Error;

/// `L_ij`: `+1` at `(i, j)`, `−1` at `(i, i)`; the zero matrix when `i == j`.
pub fn elementary(i: usize, j: usize, n: usize) -> Result<RationalMatrix, Error> {
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    let mut m = RationalMatrix::zeros(n);
    if i != j {
        m.set(i, j, int(1));
        m.set(i, i, int(-1));
    }
    Ok(m)
}

fn l(i: usize, j: usize, n: usize) -> RationalMatrix {
    elementary(i, j, n).expect("indices in range")
}

/// `H = (1/n) 𝟙𝟙ᵀ`.
pub fn h_matrix(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, _| ratio(1, n as i64))
}

/// `J = H − Iₙ`: off-diagonals `1/n`, diagonal `−(n−1)/n`.
pub fn j_matrix(n: usize) -> RationalMatrix {
    &h_matrix(n) - &RationalMatrix::identity(n)
}

/// `R_i`: ones on the off-diagonal entries of column `i`.
pub fn column_generator(i: usize, n: usize) -> RationalMatrix {
    (0..n).filter(|&k| k != i).fold(RationalMatrix::zeros(n), |acc, k| &acc + &l(k, i, n))
}

/// `C_i`: ones on the off-diagonal entries of row `i`.
pub fn row_generator(i: usize, n: usize) -> RationalMatrix {
    (0..n).filter(|&k| k != i).fold(RationalMatrix::zeros(n), |acc, k| &acc + &l(i, k, n))
}

/// `L_σ = K_σ − Iₙ`.
pub fn permutation_generator(sigma: &Permutation) -> RationalMatrix {
    &sigma.matrix() - &RationalMatrix::identity(sigma.n())
}

/// Strictly positive rational vector summing to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistributionVector(Vec<Rational>);

impl DistributionVector {
    pub fn new(values: Vec<Rational>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::InvalidDistribution(String::from("empty vector")));
        }
        if let Some(x) = values.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidDistribution(format!("entry {x} is not strictly positive")));
        }
        let total: Rational = values.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("entries sum to {total}, not 1")));
        }
        Ok(Self(values))
    }

    /// Rescales positive weights to sum to one.
    pub fn normalized(weights: Vec<Rational>) -> Result<Self, Error> {
        let total: Rational = weights.iter().sum();
        if !total.is_positive() {
            return Err(Error::InvalidDistribution(String::from("weights do not have a positive sum")));
        }
        Self::new(weights.into_iter().map(|w| w / &total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![ratio(1, n as i64); n])
    }

    /// Independent weights `p/q` with `p, q` uniform on `1..=10⁴`, normalized.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let weights = (0..n)
            .map(|_| {
                let p: i64 = rng.gen_range(1..=10_000);
                let q: i64 = rng.gen_range(1..=10_000);
                ratio(p, q)
            })
            .collect();
        Self::normalized(weights).expect("positive weights")
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// `D(π)`.
    pub fn diag(&self) -> RationalMatrix {
        let n = self.n();
        RationalMatrix::from_fn(n, |i, j| if i == j { self.0[i].clone() } else { Rational::zero() })
    }

    /// The row vector `π K_σ`, whose entry `σ(i)` is `π_i`.
    pub fn permuted(&self, sigma: &Permutation) -> Self {
        let mut out = vec![Rational::zero(); self.n()];
        for (i, x) in self.0.iter().enumerate() {
            out[sigma.apply(i)] = x.clone();
        }
        Self(out)
    }
}

/// `L̂_ij = π_j L_ij + π_i L_ji`, the reversible elementary generator.
pub fn reversible_elementary(pi: &DistributionVector, i: usize, j: usize) -> RationalMatrix {
    let n = pi.n();
    &l(i, j, n).scale(pi.get(j)) + &l(j, i, n).scale(pi.get(i))
}

/// Orbits of `G` on unordered pairs `{i, j}`, `i < j`, each sorted, ordered by
/// their least pair.
pub fn pair_orbits(group: &PermGroup) -> Vec<Vec<(usize, usize)>> {
    let n = group.n();
    let mut assigned = vec![vec![false; n]; n];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if assigned[i][j] {
                continue;
            }
            let mut orbit: Vec<(usize, usize)> = group
                .elements()
                .iter()
                .map(|g| {
                    let (a, b) = (g.apply(i), g.apply(j));
                    (a.min(b), a.max(b))
                })
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &(a, b) in &orbit {
                assigned[a][b] = true;
            }
            out.push(orbit);
        }
    }
    out
}

/// A named equivariant time-reversible model on four states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedTrModel {
    pub subgroup: &'static str,
    pub generators: &'static str,
    pub model: &'static str,
}

const fn named(subgroup: &'static str, generators: &'static str, model: &'static str) -> NamedTrModel {
    NamedTrModel {
        subgroup,
        generators,
        model,
    }
}

/// One subgroup of `S₄` per conjugacy class with the usual name of its
/// equivariant time-reversible model.
pub const NAMED_TR_MODELS_4: [NamedTrModel; 11] = [
    named("Trivial", "e", "GTR"),
    named("S2", "(12)", "TIM3"),
    named("S2", "(12)(34)", "TIM"),
    named("C4", "(1234)", "M12"),
    named("V4", "(12)(34),(13)(24),(14)(23)", "K81u"),
    named("V4", "(12),(34),(12)(34)", "TN93"),
    named("D4", "(1324),(12)", "HKY"),
    named("A3", "(132),(123)", "M24"),
    named("S3", "(12),(123)", "M24"),
    named("A4", "(123),(12)(34)", "F81"),
    named("S4", "(1234),(12)", "F81"),
];

/// `k` generic distribution vectors drawn from a seeded ChaCha8 stream.
pub fn sample_distributions(n: usize, k: usize, seed: u64) -> Vec<DistributionVector> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| DistributionVector::random(n, &mut rng)).collect()
}

/// A model family together with its number of states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub family: Family,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `span(J)`.
    Ci,
    /// `span(R_i)`.
    Ei,
    /// `span(L_ij + L_ji)`.
    Symm,
    /// `span(L_σ − L_{σ⁻¹})`.
    Anti,
    /// Zero row and column sums.
    Ds,
    /// All of `𝓛ₙ`.
    Gm,
    /// `span(L_σ : σ ∈ G)`.
    GroupBased(PermGroup),
    EiPlusSymm,
    EiPlusGroupBased(PermGroup),
    Gtr(DistributionVector),
    /// Tamura–Nei: `G = ⟨(12),(34)⟩` on four states.
    Tn(DistributionVector),
    /// HKY: `G = D₄ = ⟨(1324),(12)⟩` on four states.
    Hky(DistributionVector),
    EquivariantTr(DistributionVector, PermGroup),
    /// Fixed points of `G` in `𝓛ₙ`.
    Equivariant(PermGroup),
    Custom(Vec<RationalMatrix>),
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Ci => "CI",
            Family::Ei => "EI",
            Family::Symm => "Symm",
            Family::Anti => "Anti",
            Family::Ds => "DS",
            Family::Gm => "GM",
            Family::GroupBased(_) => "GroupBased",
            Family::EiPlusSymm => "EI+Symm",
            Family::EiPlusGroupBased(_) => "EI+GroupBased",
            Family::Gtr(_) => "GTR",
            Family::Tn(_) => "TN",
            Family::Hky(_) => "HKY",
            Family::EquivariantTr(..) => "EqTR",
            Family::Equivariant(_) => "Equivariant",
            Family::Custom(_) => "Custom",
        }
    }

    pub fn distribution(&self) -> Option<&DistributionVector> {
        match self {
            Family::Gtr(pi) | Family::Tn(pi) | Family::Hky(pi) | Family::EquivariantTr(pi, _) => Some(pi),
            _ => None,
        }
    }

    pub fn group(&self) -> Option<&PermGroup> {
        match self {
            Family::GroupBased(g) | Family::EiPlusGroupBased(g) | Family::EquivariantTr(_, g) | Family::Equivariant(g) => {
                Some(g)
            }
            _ => None,
        }
    }

    /// The same family with its distribution vector replaced.
    pub fn with_distribution(&self, pi: DistributionVector) -> Family {
        match self {
            Family::Gtr(_) => Family::Gtr(pi),
            Family::Tn(_) => Family::Tn(pi),
            Family::Hky(_) => Family::Hky(pi),
            Family::EquivariantTr(_, g) => Family::EquivariantTr(pi, g.clone()),
            other => other.clone(),
        }
    }
}

pub fn tn_group() -> PermGroup {
    PermGroup::parse("(12),(34)", 4).expect("valid")
}

pub fn hky_group() -> PermGroup {
    PermGroup::parse("(1324),(12)", 4).expect("valid")
}

impl ModelSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self { family, n }
    }

    fn check(&self) -> Result<(), Error> {
        if self.n < 1 {
            return Err(Error::OutOfRange {
                what: "n",
                value: self.n,
                range: ">= 1",
            });
        }
        if let Some(pi) = self.family.distribution() {
            if pi.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: pi.n(),
                });
            }
        }
        if let Some(g) = self.family.group() {
            if g.n() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: g.n(),
                });
            }
        }
        if matches!(self.family, Family::Tn(_) | Family::Hky(_)) && self.n != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: self.n });
        }
        Ok(())
    }

    /// The linear span defining the model, canonicalized.
    pub fn build(&self) -> Result<MatrixSubspace, Error> {
        self.check()?;
        let n = self.n;
        match &self.family {
            Family::Ci => MatrixSubspace::span_owned(n, [j_matrix(n)]),
            Family::Ei => ei(n),
            Family::Symm => symm(n),
            Family::Anti => anti_subspace(n),
            Family::Ds => Ok(ds(n)),
            Family::Gm => Ok(crate::subspace::zero_row_sum_space(n)),
            Family::GroupBased(g) => group_based(g),
            Family::EiPlusSymm => ei(n)?.sum(&symm(n)?),
            Family::EiPlusGroupBased(g) => ei(n)?.sum(&group_based(g)?),
            Family::Gtr(pi) => gtr_subspace(pi),
            Family::Tn(pi) => equivariant_tr_subspace(pi, &tn_group()),
            Family::Hky(pi) => equivariant_tr_subspace(pi, &hky_group()),
            Family::EquivariantTr(pi, g) => equivariant_tr_subspace(pi, g),
            Family::Equivariant(g) => equivariant_subspace(g),
            Family::Custom(basis) => {
                let s = MatrixSubspace::span(n, basis)?;
                if !s.is_zero_row_sum() {
                    return Err(Error::NotZeroRowSum);
                }
                Ok(s)
            }
        }
    }

    /// Non-negative generators of the family's rate-matrix cone, when known.
    /// Their sum is a candidate interior point; conical combinations are rate
    /// matrices of the model.
    pub fn cone_generators(&self) -> Result<Vec<RationalMatrix>, Error> {
        self.check()?;
        let n = self.n;
        let pairs = |f: &dyn Fn(usize, usize) -> RationalMatrix| -> Vec<RationalMatrix> {
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect()
        };
        let rs = || (0..n).map(|i| column_generator(i, n)).collect::<Vec<_>>();
        let sym = || pairs(&|i, j| &l(i, j, n) + &l(j, i, n));
        let perm_gens = |g: &PermGroup| {
            g.elements()
                .iter()
                .filter(|s| !s.is_identity())
                .map(permutation_generator)
                .collect::<Vec<_>>()
        };
        Ok(match &self.family {
            Family::Ci => vec![j_matrix(n)],
            Family::Ei => rs(),
            Family::Symm => sym(),
            Family::Anti => Vec::new(),
            Family::Ds => {
                if n <= 5 {
                    perm_gens(&PermGroup::symmetric(n))
                } else {
                    // transpositions and 3-cycles already span DS
                    all_permutations(n)
                        .into_iter()
                        .filter(|s| matches!(s.cycles().as_slice(), [c] if c.len() <= 3))
                        .map(|s| permutation_generator(&s))
                        .collect()
                }
            }
            Family::Gm => (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| l(i, j, n))
                .collect(),
            Family::GroupBased(g) => perm_gens(g),
            Family::EiPlusSymm => {
                let mut v = rs();
                v.extend(sym());
                v
            }
            Family::EiPlusGroupBased(g) => {
                let mut v = rs();
                v.extend(perm_gens(g));
                v
            }
            Family::Gtr(pi) => pairs(&|i, j| reversible_elementary(pi, i, j)),
            Family::Tn(pi) => orbit_generators(pi, &tn_group()),
            Family::Hky(pi) => orbit_generators(pi, &hky_group()),
            Family::EquivariantTr(pi, g) => orbit_generators(pi, g),
            Family::Equivariant(g) => {
                // orbit sums of elementary generators under conjugation
                let mut seen = vec![vec![false; n]; n];
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i == j || seen[i][j] {
                            continue;
                        }
                        let mut sum = RationalMatrix::zeros(n);
                        for s in g.elements() {
                            let (a, b) = (s.apply(i), s.apply(j));
                            if !seen[a][b] {
                                seen[a][b] = true;
                                sum = &sum + &l(a, b, n);
                            }
                        }
                        out.push(sum);
                    }
                }
                out
            }
            Family::Custom(basis) => basis.iter().filter(|b| b.is_rate_matrix()).cloned().collect(),
        })
    }
}

fn ei(n: usize) -> Result<MatrixSubspace, Error> {
    MatrixSubspace::span_owned(n, (0..n).map(|i| column_generator(i, n)))
}

fn symm(n: usize) -> Result<MatrixSubspace, Error> {
    MatrixSubspace::span_owned(
        n,
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| &l(i, j, n) + &l(j, i, n)),
    )
}

/// Zero row and column sums.
pub fn ds(n: usize) -> MatrixSubspace {
    let mut constraints = row_sum_constraints(n);
    constraints.extend(col_sum_constraints(n));
    MatrixSubspace::solution_space(n, constraints).expect("well-formed constraints")
}

/// `span(L_σ − L_{σ⁻¹})`; the 3-cycles already span it.
pub fn anti_subspace(n: usize) -> Result<MatrixSubspace, Error> {
    let three_cycles = all_permutations(n)
        .into_iter()
        .filter(|s| matches!(s.cycles().as_slice(), [c] if c.len() == 3));
    MatrixSubspace::span_owned(
        n,
        three_cycles.map(|s| &permutation_generator(&s) - &permutation_generator(&s.inverse())),
    )
}

/// Symmetric zero row sum matrices with zero diagonal.
pub fn zero_diagonal_symmetric(n: usize) -> MatrixSubspace {
    let mut constraints = row_sum_constraints(n);
    for i in 0..n {
        constraints.push((0..n * n).map(|k| if k == i * n + i { int(1) } else { int(0) }).collect());
        for j in i + 1..n {
            constraints.push(
                (0..n * n)
                    .map(|k| {
                        if k == i * n + j {
                            int(1)
                        } else if k == j * n + i {
                            int(-1)
                        } else {
                            int(0)
                        }
                    })
                    .collect(),
            );
        }
    }
    MatrixSubspace::solution_space(n, constraints).expect("well-formed constraints")
}

/// `span(L_σ : σ ∈ G)`.
pub fn group_based(group: &PermGroup) -> Result<MatrixSubspace, Error> {
    MatrixSubspace::span_owned(group.n(), group.elements().iter().map(permutation_generator))
}

/// `{Q ∈ 𝓛ₙ : D(π)Q = QᵀD(π)}` with basis `L̂_ij`, `i < j`.
pub fn gtr_subspace(pi: &DistributionVector) -> Result<MatrixSubspace, Error> {
    equivariant_tr_subspace(pi, &PermGroup::trivial(pi.n()))
}

fn orbit_generators(pi: &DistributionVector, group: &PermGroup) -> Vec<RationalMatrix> {
    let n = pi.n();
    pair_orbits(group)
        .iter()
        .map(|orbit| {
            orbit
                .iter()
                .fold(RationalMatrix::zeros(n), |acc, &(i, j)| &acc + &reversible_elementary(pi, i, j))
        })
        .collect()
}

/// The `G`-equivariant reversible span: one generator `Σ_{{i,j}∈O} L̂_ij` per
/// orbit `O` of `G` on unordered pairs.
pub fn equivariant_tr_subspace(pi: &DistributionVector, group: &PermGroup) -> Result<MatrixSubspace, Error> {
    if pi.n() != group.n() {
        return Err(Error::DimensionMismatch {
            expected: pi.n(),
            found: group.n(),
        });
    }
    MatrixSubspace::span_owned(pi.n(), orbit_generators(pi, group))
}

/// `{Q ∈ 𝓛ₙ : σ·Q = Q for all σ ∈ G}`.
pub fn equivariant_subspace(group: &PermGroup) -> Result<MatrixSubspace, Error> {
    let n = group.n();
    let mut constraints = row_sum_constraints(n);
    for g in group.generators() {
        // (σ·X)_{σ(i)σ(j)} = X_ij, so fixedness is X_{σ(i)σ(j)} − X_ij = 0
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (g.apply(i), g.apply(j));
                if (a, b) == (i, j) {
                    continue;
                }
                let mut c = vec![Rational::zero(); n * n];
                c[a * n + b] += int(1);
                c[i * n + j] -= int(1);
                constraints.push(c);
            }
        }
    }
    MatrixSubspace::solution_space(n, constraints)
}

/// The exact Tamura–Nei basis `(A, B, C)` for `π` on A, G, C, T.
pub fn tn_basis(pi: &DistributionVector) -> Result<[RationalMatrix; 3], Error> {
    let [p1, p2, p3, p4] = four(pi)?;
    let z = Rational::zero;
    let a = RationalMatrix::from_rows(vec![
        vec![-p2.clone(), p2.clone(), z(), z()],
        vec![p1.clone(), -p1.clone(), z(), z()],
        vec![z(), z(), z(), z()],
        vec![z(), z(), z(), z()],
    ])?;
    let b = RationalMatrix::from_rows(vec![
        vec![z(), z(), z(), z()],
        vec![z(), z(), z(), z()],
        vec![z(), z(), -p4.clone(), p4.clone()],
        vec![z(), z(), p3.clone(), -p3.clone()],
    ])?;
    Ok([a, b, transversion_matrix(&[p1, p2, p3, p4])?])
}

/// The exact HKY basis `(A, B)` for `π`: `A` carries both transition blocks.
pub fn hky_basis(pi: &DistributionVector) -> Result<[RationalMatrix; 2], Error> {
    let [a, b, c] = tn_basis(pi)?;
    Ok([&a + &b, c])
}

fn transversion_matrix(p: &[Rational; 4]) -> Result<RationalMatrix, Error> {
    let [p1, p2, p3, p4] = p.clone();
    let s12 = &p1 + &p2;
    let s34 = &p3 + &p4;
    let z = Rational::zero;
    RationalMatrix::from_rows(vec![
        vec![-s34.clone(), z(), p3.clone(), p4.clone()],
        vec![z(), -s34, p3.clone(), p4.clone()],
        vec![p1.clone(), p2.clone(), -s12.clone(), z()],
        vec![p1, p2, z(), -s12],
    ])
}

fn four(pi: &DistributionVector) -> Result<[Rational; 4], Error> {
    match pi.values() {
        [a, b, c, d] => Ok([a.clone(), b.clone(), c.clone(), d.clone()]),
        v => Err(Error::DimensionMismatch { expected: 4, found: v.len() }),
    }
}

/// A linear model whose defining subspace is larger than the span of its
/// rate matrices.
#[derive(Clone, Debug)]
pub struct NonMinimalExample {
    /// The defining subspace (two parameters).
    pub subspace: MatrixSubspace,
    /// The span of the rate matrices it contains (one parameter).
    pub cone_span: MatrixSubspace,
}

/// Parameters `(α, β)`: rows `(0, β, −β)`, `(α, −2α, α)`, `(α, α, −2α)`.
/// Non-negativity forces `β = 0`.
pub fn nonminimal_example() -> NonMinimalExample {
    let alpha = RationalMatrix::from_i64(&[&[0, 0, 0], &[1, -2, 1], &[1, 1, -2]]).expect("square");
    let beta = RationalMatrix::from_i64(&[&[0, 1, -1], &[0, 0, 0], &[0, 0, 0]]).expect("square");
    NonMinimalExample {
        subspace: MatrixSubspace::span(3, [&alpha, &beta]).expect("same n"),
        cone_span: MatrixSubspace::span(3, [&alpha]).expect("same n"),
    }
}

/// A two-state model with an inequality hidden in its parametrization.
#[derive(Clone, Debug)]
pub struct NonLinearExample {
    /// Cone generators: `α` and `β` directions, `α, β ≥ 0`.
    pub generators: [RationalMatrix; 2],
    /// A rate matrix in the span of the model but outside the model.
    pub excluded: RationalMatrix,
}

impl NonLinearExample {
    /// Exact membership in `{α·G₀ + β·G₁ : α, β ≥ 0}`.
    pub fn contains(&self, q: &RationalMatrix) -> bool {
        // G₀ = [[−1,1],[1,−1]], G₁ = [[0,0],[1,−1]]: α = q_01, β = q_10 − q_01
        if q.n() != 2 || !q.has_zero_row_sums() {
            return false;
        }
        let alpha = q.get(0, 1).clone();
        let beta = q.get(1, 0) - &alpha;
        !alpha.is_negative() && !beta.is_negative()
    }
}

/// Parameters `(α, β) ≥ 0`: rows `(−α, α)`, `(α+β, −(α+β))`.
pub fn nonlinear_example() -> NonLinearExample {
    NonLinearExample {
        generators: [
            RationalMatrix::from_i64(&[&[-1, 1], &[1, -1]]).expect("square"),
            RationalMatrix::from_i64(&[&[0, 0], &[1, -1]]).expect("square"),
        ],
        excluded: RationalMatrix::from_i64(&[&[-1, 1], &[0, 0]]).expect("square"),
    }
}

/// Random non-negative combination of cone generators with weights in `1..=100`.
pub fn random_conical_combination<R: Rng + ?Sized>(
    n: usize,
    generators: &[RationalMatrix],
    rng: &mut R,
) -> RationalMatrix {
    generators.iter().fold(RationalMatrix::zeros(n), |acc, g| {
        let w = Rational::from_integer(BigInt::from(rng.gen_range(0..=100i64)));
        &acc + &g.scale(&w)
    })
}

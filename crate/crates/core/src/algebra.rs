//! Closure checks, module invariance, minimality certificates, irreducible
//! multiplicities and the classification of `Sₙ`-symmetric Jordan models.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::catalog::{
    self, anti_subspace, column_generator, group_based, j_matrix, row_generator, zero_diagonal_symmetric,
    DistributionVector, Family, ModelSpec,
};
use crate::lp::{maximize, LpOutcome};
use crate::matrix::RationalMatrix;
use crate::perm::{conjugacy_classes, enumerate_subgroups_up_to_conjugacy, PermGroup, Permutation, MAX_CLASS_N};
use crate::rational::{int, Rational};
use crate::subspace::MatrixSubspace;
use crate::Error;

/// A product of two basis elements that escapes the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub left: usize,
    pub right: usize,
    pub product: RationalMatrix,
    /// `product` minus its reduction onto the subspace; never zero.
    pub residual: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub closed: bool,
    pub witness: Option<ClosureWitness>,
}

impl ClosureVerdict {
    fn closed() -> Self {
        Self { closed: true, witness: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    /// `AB + BA`
    Jordan,
    /// `AB − BA`
    Lie,
    /// `AB`
    Matrix,
}

impl Product {
    pub fn apply(self, a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix, Error> {
        match self {
            Product::Jordan => a.jordan(b),
            Product::Lie => a.bracket(b),
            Product::Matrix => a.try_mul(b),
        }
    }
}

/// Checks closure of `s` under `product` on basis pairs in lexicographic order,
/// returning the first escaping pair.
pub fn product_closure(s: &MatrixSubspace, product: Product) -> Result<ClosureVerdict, Error> {
    let basis = s.basis();
    for i in 0..basis.len() {
        let start = match product {
            Product::Jordan => i,
            Product::Lie => i + 1,
            Product::Matrix => 0,
        };
        for j in start..basis.len() {
            let p = product.apply(&basis[i], &basis[j])?;
            let residual = s.residual(&p)?;
            if !residual.is_zero() {
                return Ok(ClosureVerdict {
                    closed: false,
                    witness: Some(ClosureWitness {
                        left: i,
                        right: j,
                        product: p,
                        residual,
                    }),
                });
            }
        }
    }
    Ok(ClosureVerdict::closed())
}

pub fn jordan_closed(s: &MatrixSubspace) -> Result<ClosureVerdict, Error> {
    product_closure(s, Product::Jordan)
}

pub fn lie_closed(s: &MatrixSubspace) -> Result<ClosureVerdict, Error> {
    product_closure(s, Product::Lie)
}

pub fn matrix_algebra_closed(s: &MatrixSubspace) -> Result<ClosureVerdict, Error> {
    product_closure(s, Product::Matrix)
}

/// True iff `Bᵏ ∈ S` for every basis element `B` and `2 ≤ k ≤ k_max`.
pub fn power_closure_probe(s: &MatrixSubspace, k_max: u32) -> Result<bool, Error> {
    if k_max < 2 {
        return Err(Error::OutOfRange {
            what: "k_max",
            value: k_max as usize,
            range: ">= 2",
        });
    }
    for b in s.basis() {
        let mut p = b.clone();
        for _ in 2..=k_max {
            p = p.try_mul(b)?;
            if !s.contains(&p)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleWitness {
    pub generator: Permutation,
    pub basis_index: usize,
    pub image: RationalMatrix,
    pub residual: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub closed: bool,
    pub witness: Option<ModuleWitness>,
}

/// Checks `σ·B ∈ S` for every generator `σ` of `G` and basis element `B`.
pub fn is_g_module(s: &MatrixSubspace, group: &PermGroup) -> Result<ModuleVerdict, Error> {
    if s.n() != group.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            found: group.n(),
        });
    }
    invariant_under(s, group.generators())
}

fn invariant_under(s: &MatrixSubspace, generators: &[Permutation]) -> Result<ModuleVerdict, Error> {
    for g in generators {
        for (k, b) in s.basis().iter().enumerate() {
            let image = g.act(b)?;
            let residual = s.residual(&image)?;
            if !residual.is_zero() {
                return Ok(ModuleVerdict {
                    closed: false,
                    witness: Some(ModuleWitness {
                        generator: g.clone(),
                        basis_index: k,
                        image,
                        residual,
                    }),
                });
            }
        }
    }
    Ok(ModuleVerdict {
        closed: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// `certificate` is a rate matrix in `S` that is strictly positive on every
    /// off-diagonal position where some element of `S` is non-zero.
    Minimal { certificate: RationalMatrix },
    Inconclusive,
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal { .. })
    }
}

fn is_certificate(s: &MatrixSubspace, q: &RationalMatrix, support: &[(usize, usize)]) -> Result<bool, Error> {
    Ok(q.is_rate_matrix() && support.iter().all(|&(i, j)| q.get(i, j).is_positive()) && s.contains(q)?)
}

/// Searches for a certificate that `S` is spanned by its rate matrices.
///
/// Any `X ∈ S` vanishes off the support of `S`, so `Q* + εX` is a rate matrix
/// for small `ε` and `X` is a difference of rate matrices in `S`. The sum of
/// the hints that lie in `S` is tried first, then an exact linear program
/// maximizing the smallest supported off-diagonal entry.
pub fn minimality_check(s: &MatrixSubspace, hints: &[RationalMatrix]) -> Result<Minimality, Error> {
    if !s.is_zero_row_sum() {
        return Err(Error::NotZeroRowSum);
    }
    let n = s.n();
    let support = s.offdiag_support();
    if support.is_empty() {
        return Ok(Minimality::Minimal {
            certificate: RationalMatrix::zeros(n),
        });
    }

    let mut sum = RationalMatrix::zeros(n);
    for h in hints {
        if h.n() == n && h.is_rate_matrix() && s.contains(h)? {
            sum = &sum + h;
        }
    }
    if is_certificate(s, &sum, &support)? {
        return Ok(Minimality::Minimal { certificate: sum });
    }

    // variables: c⁺ (d), c⁻ (d), t; rows: t − Σ(c⁺−c⁻)B ≤ 0 on the support, t ≤ 1
    let d = s.dim();
    let mut a = Vec::with_capacity(support.len() + 1);
    for &(i, j) in &support {
        let mut row = vec![Rational::zero(); 2 * d + 1];
        for (k, b) in s.basis().iter().enumerate() {
            row[k] = -b.get(i, j).clone();
            row[d + k] = b.get(i, j).clone();
        }
        row[2 * d] = int(1);
        a.push(row);
    }
    let mut cap = vec![Rational::zero(); 2 * d + 1];
    cap[2 * d] = int(1);
    a.push(cap);
    let mut b = vec![Rational::zero(); support.len()];
    b.push(int(1));
    let mut c = vec![Rational::zero(); 2 * d + 1];
    c[2 * d] = int(1);

    match maximize(&a, &b, &c)? {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let coeffs: Vec<Rational> = (0..d).map(|k| &x[k] - &x[d + k]).collect();
            let q = s.combine(&coeffs);
            if !is_certificate(s, &q, &support)? {
                return Err(Error::Internal(String::from("linear program returned an invalid certificate")));
            }
            Ok(Minimality::Minimal { certificate: q })
        }
        LpOutcome::Optimal { .. } => Ok(Minimality::Inconclusive),
        LpOutcome::Unbounded => Err(Error::Internal(String::from("bounded linear program reported unbounded"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    /// The model is the intersection of a subspace with the rate-matrix cone.
    pub linear: bool,
    pub minimality: Minimality,
    pub jordan: ClosureVerdict,
    /// `Some(jordan.closed)` once minimality is certified, `None` otherwise.
    pub stable: Option<bool>,
}

/// Uniformization stability of the linear model `S ∩ 𝓛ₙ⁺`.
pub fn uniformization_stable_linear(s: &MatrixSubspace, hints: &[RationalMatrix]) -> Result<StabilityVerdict, Error> {
    let minimality = minimality_check(s, hints)?;
    let jordan = jordan_closed(s)?;
    let stable = minimality.is_minimal().then_some(jordan.closed);
    Ok(StabilityVerdict {
        linear: true,
        minimality,
        jordan,
        stable,
    })
}

/// Builds the model and checks it, using its cone generators as hints.
pub fn model_stability(spec: &ModelSpec) -> Result<(MatrixSubspace, StabilityVerdict), Error> {
    let s = spec.build()?;
    let verdict = uniformization_stable_linear(&s, &spec.cone_generators()?)?;
    Ok((s, verdict))
}

/// Per-sample verdicts for a family parameterized by `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledStability {
    pub samples: Vec<DistributionVector>,
    pub verdicts: Vec<StabilityVerdict>,
    /// `Some(false)` if any certified sample fails, `Some(true)` if every
    /// sample is certified stable, `None` otherwise.
    pub stable: Option<bool>,
}

pub fn sampled_stability(family: &Family, n: usize, samples: &[DistributionVector]) -> Result<SampledStability, Error> {
    let mut verdicts = Vec::with_capacity(samples.len());
    for pi in samples {
        let spec = ModelSpec::new(family.with_distribution(pi.clone()), n);
        verdicts.push(model_stability(&spec)?.1);
    }
    let stable = if verdicts.iter().any(|v| v.stable == Some(false)) {
        Some(false)
    } else if !verdicts.is_empty() && verdicts.iter().all(|v| v.stable == Some(true)) {
        Some(true)
    } else {
        None
    };
    Ok(SampledStability {
        samples: samples.to_vec(),
        verdicts,
        stable,
    })
}

/// Multiplicities of the irreducible `Sₙ`-modules that occur in `𝓛ₙ`:
/// `{n}`, `{n−1,1}`, `{n−2,2}`, `{n−2,1²}`. For `n = 3` the third slot does
/// not exist and the fourth is the sign module `{1³}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    pub n: usize,
    pub counts: [Option<u64>; 4],
}

impl MultiplicityVector {
    pub fn labels(n: usize) -> [Option<String>; 4] {
        let tail = |head: usize, rest: &str| format!("{{{head},{rest}}}");
        if n == 3 {
            return [
                Some(String::from("{3}")),
                Some(String::from("{2,1}")),
                None,
                Some(String::from("{1^3}")),
            ];
        }
        [
            Some(format!("{{{n}}}")),
            Some(tail(n - 1, "1")),
            Some(tail(n - 2, "2")),
            Some(tail(n - 2, "1^2")),
        ]
    }

    /// Dimensions of the four irreducibles.
    pub fn irrep_dimensions(n: usize) -> [Option<u64>; 4] {
        let n = n as u64;
        [
            Some(1),
            Some(n - 1),
            (n > 3).then(|| n * (n - 3) / 2),
            Some((n - 1) * (n - 2) / 2),
        ]
    }

    /// `Σ aₖ · dim(irrepₖ)`.
    pub fn accounted_dimension(&self) -> u64 {
        self.counts
            .iter()
            .zip(Self::irrep_dimensions(self.n))
            .map(|(a, d)| a.unwrap_or(0) * d.unwrap_or(0))
            .sum()
    }

    pub fn as_tuple(&self) -> Vec<u64> {
        self.counts.iter().flatten().copied().collect()
    }
}

/// Character values of the four irreducibles at a permutation with `r₁` fixed
/// points and `r₂` two-cycles.
fn irrep_characters(n: usize, r1: i64, r2: i64) -> [Option<i64>; 4] {
    [
        Some(1),
        Some(r1 - 1),
        (n > 3).then(|| r1 * (r1 - 3) / 2 + r2),
        Some((r1 - 1) * (r1 - 2) / 2 - r2),
    ]
}

/// Trace of `X ↦ σ·X` on `S`, read off the pivots of the canonical basis.
pub fn action_trace(s: &MatrixSubspace, sigma: &Permutation) -> Result<Rational, Error> {
    let mut trace = Rational::zero();
    for (b, &p) in s.basis().iter().zip(s.pivots()) {
        let image = sigma.act(b)?;
        trace += &image.entries()[p];
    }
    Ok(trace)
}

fn symmetric_generators(n: usize) -> Result<Vec<Permutation>, Error> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut cycle: Vec<usize> = (1..n).collect();
    cycle.push(0);
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    Ok(vec![Permutation::from_images(swap)?, Permutation::from_images(cycle)?])
}

/// Checks that `S` is an `Sₙ`-module, reporting the first escaping image.
pub fn check_sn_module(s: &MatrixSubspace) -> Result<(), Error> {
    let n = s.n();
    match invariant_under(s, &symmetric_generators(n)?)?.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotModule {
            generator: format!("{}", w.generator),
            basis_index: w.basis_index,
        }),
    }
}

/// Decomposes an `Sₙ`-submodule of `𝓛ₙ` by the character inner product.
pub fn irrep_multiplicities(s: &MatrixSubspace) -> Result<MultiplicityVector, Error> {
    let n = s.n();
    if !(3..=MAX_CLASS_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "3..=8",
        });
    }
    check_sn_module(s)?;
    let classes = conjugacy_classes(n)?;
    let order: u64 = (1..=n as u64).product();
    let mut sums = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for class in &classes {
        let chi = action_trace(s, &class.representative)?;
        let ct = &class.cycle_type;
        let values = irrep_characters(n, ct.r(1) as i64, ct.r(2) as i64);
        for (sum, v) in sums.iter_mut().zip(values) {
            if let Some(v) = v {
                *sum += &chi * int(v * class.size as i64);
            }
        }
    }
    let mut counts = [None; 4];
    for (k, sum) in sums.iter().enumerate() {
        if irrep_characters(n, 0, 0)[k].is_none() {
            continue;
        }
        let m = sum / Rational::from_integer(BigInt::from(order));
        if !m.is_integer() || m.is_negative() {
            return Err(Error::Internal(format!("multiplicity {m} is not a non-negative integer")));
        }
        counts[k] = Some(m.to_integer().to_u64().expect("small multiplicity"));
    }
    let out = MultiplicityVector { n, counts };
    if out.accounted_dimension() != s.dim() as u64 {
        return Err(Error::Internal(format!(
            "multiplicities account for {} of {} dimensions",
            out.accounted_dimension(),
            s.dim()
        )));
    }
    Ok(out)
}

/// A Jordan-closed `Sₙ`-module containing `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedModel {
    pub name: String,
    /// Other names under which the same subspace is known for this `n`.
    pub aliases: Vec<String>,
    pub subspace: MatrixSubspace,
    pub multiplicities: Option<MultiplicityVector>,
    pub jordan: ClosureVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    /// Number of distinct candidate modules tested.
    pub candidates: usize,
    pub models: Vec<ClassifiedModel>,
}

/// Named `Sₙ`-symmetric subspaces for `n`, in naming-preference order.
pub fn named_sn_models(n: usize) -> Result<Vec<(String, MatrixSubspace)>, Error> {
    let build = |f: Family| ModelSpec::new(f, n).build();
    let mut out = vec![
        (String::from("CI"), build(Family::Ci)?),
        (String::from("GM"), build(Family::Gm)?),
        (String::from("EI"), build(Family::Ei)?),
        (String::from("Symm"), build(Family::Symm)?),
        (String::from("EI+Symm"), build(Family::EiPlusSymm)?),
        (String::from("DS"), build(Family::Ds)?),
    ];
    if n == 3 {
        let c3 = PermGroup::parse("(123)", 3)?;
        out.push((String::from("L_C3"), group_based(&c3)?));
        out.push((String::from("L_C3+EI"), build(Family::EiPlusGroupBased(c3))?));
    }
    if n == 4 {
        let v4 = PermGroup::parse("(12)(34),(13)(24)", 4)?;
        out.push((String::from("K3ST"), group_based(&v4)?));
        out.push((String::from("K3ST+F81"), build(Family::EiPlusGroupBased(v4))?));
    }
    Ok(out)
}

/// Coprime `(μ, ν)` on the grid `−3..=3`, first non-zero entry positive.
fn pencil_grid() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for mu in 0..=3i64 {
        for nu in -3..=3i64 {
            if (mu == 0 && nu <= 0) || mu.gcd(&nu) != 1 {
                continue;
            }
            out.push((mu, nu));
        }
    }
    out
}

/// Enumerates `Sₙ`-submodules of `𝓛ₙ` containing `span(J)` and returns the
/// Jordan-closed ones, named where they match a known family.
///
/// Candidates combine `span(J)` with: no `{n−1,1}` copy, one copy
/// `span(μRᵢ + νCᵢ)` from a grid of pencil lines, or both copies; optionally
/// the `{n−2,2}` component (zero-diagonal symmetric matrices); optionally
/// `Antiₙ`. The structural dichotomies for Jordan-closed modules are checked
/// on every closed candidate.
pub fn classify_sn_jordan_modules(n: usize) -> Result<Classification, Error> {
    if !(2..=7).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "2..=7",
        });
    }
    let ci = MatrixSubspace::span_owned(n, [j_matrix(n)])?;
    let mut standard = vec![ci.clone()];
    for (mu, nu) in pencil_grid() {
        let gens = (0..n).map(|i| &column_generator(i, n).scale(&int(mu)) + &row_generator(i, n).scale(&int(nu)));
        standard.push(ci.sum(&MatrixSubspace::span_owned(n, gens)?)?);
    }
    let both = (0..n).flat_map(|i| [column_generator(i, n), row_generator(i, n)]);
    standard.push(ci.sum(&MatrixSubspace::span_owned(n, both)?)?);

    let z = zero_diagonal_symmetric(n);
    let anti = anti_subspace(n)?;
    let mut candidates: Vec<MatrixSubspace> = Vec::new();
    for base in &standard {
        for with_z in [false, true] {
            for with_anti in [false, true] {
                if (with_z && z.dim() == 0) || (with_anti && anti.dim() == 0) {
                    continue;
                }
                let mut s = base.clone();
                if with_z {
                    s = s.sum(&z)?;
                }
                if with_anti {
                    s = s.sum(&anti)?;
                }
                if !candidates.contains(&s) {
                    candidates.push(s);
                }
            }
        }
    }

    let named = named_sn_models(n)?;
    let ei = &named[2].1;
    let symm = &named[3].1;
    let ei_symm = &named[4].1;
    let ds = &named[5].1;
    let mut models = Vec::new();
    for s in &candidates {
        check_sn_module(s)?;
        let jordan = jordan_closed(s)?;
        if !jordan.closed {
            continue;
        }
        let multiplicities = if n >= 3 { Some(irrep_multiplicities(s)?) } else { None };
        let has_standard = multiplicities.as_ref().is_some_and(|m| m.counts[1].unwrap_or(0) > 0);
        let contains = |t: &MatrixSubspace| t.is_subspace_of(s);
        if n > 2 && has_standard {
            let cases = [
                contains(ei)? && !contains(symm)?,
                contains(symm)? && !contains(ei)?,
                contains(ei_symm)?,
            ];
            if cases.iter().filter(|&&c| c).count() != 1 {
                return Err(Error::Internal(format!("EI/Symm dichotomy violated by a module of dimension {}", s.dim())));
            }
        }
        if n > 4 && z.is_subspace_of(s)? && !contains(symm)? {
            return Err(Error::Internal(String::from("{n-2,2} present without Symm")));
        }
        if n > 3 && anti.is_subspace_of(s)? && !contains(ds)? {
            return Err(Error::Internal(String::from("Anti present without DS")));
        }
        let mut names = named.iter().filter(|(_, t)| t == s).map(|(name, _)| name.clone());
        let name = names.next().unwrap_or_else(|| format!("unnamed-{}", s.dim()));
        let aliases = names.collect();
        models.push(ClassifiedModel {
            name,
            aliases,
            subspace: s.clone(),
            multiplicities,
            jordan,
        });
    }
    models.sort_by(|a, b| (a.subspace.dim(), &a.name).cmp(&(b.subspace.dim(), &b.name)));
    Ok(Classification {
        n,
        candidates: candidates.len(),
        models,
    })
}

/// Covering pairs `(smaller, larger)` of strict subspace inclusion.
pub fn inclusion_hasse(subspaces: &[MatrixSubspace]) -> Result<Vec<(usize, usize)>, Error> {
    let k = subspaces.len();
    let mut below = vec![vec![false; k]; k];
    for a in 0..k {
        for b in 0..k {
            below[a][b] = a != b && subspaces[a].dim() < subspaces[b].dim() && subspaces[a].is_subspace_of(&subspaces[b])?;
        }
    }
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if below[a][b] && !(0..k).any(|c| below[a][c] && below[c][b]) {
                edges.push((a, b));
            }
        }
    }
    Ok(edges)
}

/// One row of the equivariant time-reversible table for four states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub subgroup: &'static str,
    pub generators: &'static str,
    pub model: &'static str,
    pub group: PermGroup,
    pub pair_orbits: usize,
    pub result: SampledStability,
}

/// Checks `TR(π, G)` for one representative of each conjugacy class of
/// subgroups of `S₄` over the given `π` samples.
pub fn table1(samples: &[DistributionVector]) -> Result<Vec<Table1Row>, Error> {
    let classes = enumerate_subgroups_up_to_conjugacy(4)?;
    let mut rows = Vec::new();
    let mut used = vec![false; classes.len()];
    for named in catalog::NAMED_TR_MODELS_4 {
        let reference = PermGroup::parse(named.generators, 4)?;
        let idx = classes
            .iter()
            .position(|g| g.is_conjugate_to(&reference))
            .ok_or_else(|| Error::Internal(format!("no subgroup class matches {}", named.generators)))?;
        if used[idx] {
            return Err(Error::Internal(format!("subgroup class for {} matched twice", named.generators)));
        }
        used[idx] = true;
        let family = Family::EquivariantTr(DistributionVector::uniform(4), reference.clone());
        let result = sampled_stability(&family, 4, samples)?;
        rows.push(Table1Row {
            subgroup: named.subgroup,
            generators: named.generators,
            model: named.model,
            pair_orbits: catalog::pair_orbits(&reference).len(),
            group: reference,
            result,
        });
    }
    if used.iter().any(|u| !u) {
        return Err(Error::Internal(String::from("a subgroup class has no named model")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hky_basis, nonminimal_example, tn_basis};
    use crate::rational::ratio;

    fn build(f: Family, n: usize) -> MatrixSubspace {
        ModelSpec::new(f, n).build().unwrap()
    }

    fn pi(v: &[(i64, i64)]) -> DistributionVector {
        DistributionVector::new(v.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn closure_of_standard_families() {
        let symm = build(Family::Symm, 4);
        assert!(jordan_closed(&symm).unwrap().closed);
        assert!(!lie_closed(&symm).unwrap().closed);
        let anti = build(Family::Anti, 4);
        assert!(lie_closed(&anti).unwrap().closed);
        let w = jordan_closed(&anti).unwrap().witness.unwrap();
        assert!(w.product.is_symmetric());
        let diag: Vec<_> = (0..4).map(|i| w.product.get(i, i).clone()).collect();
        assert!(diag.iter().any(|d| *d != diag[0]));
        assert!(matrix_algebra_closed(&build(Family::Ds, 4)).unwrap().closed);
        assert!(matrix_algebra_closed(&build(Family::Ei, 4)).unwrap().closed);
        let eis = build(Family::EiPlusSymm, 4);
        assert!(jordan_closed(&eis).unwrap().closed);
        assert!(!matrix_algebra_closed(&eis).unwrap().closed);
        assert!(matrix_algebra_closed(&build(Family::Gm, 4)).unwrap().closed);
    }

    #[test]
    fn hky_witness_is_a_squared() {
        let p = pi(&[(1, 8), (1, 4), (1, 4), (3, 8)]);
        let [a, b] = hky_basis(&p).unwrap();
        let s = MatrixSubspace::span(4, [&a, &b]).unwrap();
        let w = jordan_closed(&s).unwrap().witness.unwrap();
        let a_sq = &a * &a;
        let first = &s.basis()[w.left];
        // the escaping product is a scalar multiple of A² modulo the span
        assert!(!s.contains(&a_sq).unwrap());
        assert!(MatrixSubspace::span(4, [&a, &b, &a_sq]).unwrap().contains(&w.product).unwrap());
        assert!(first.n() == 4);
        assert!(!power_closure_probe(&s, 3).unwrap());
        let [ta, tb, tc] = tn_basis(&p).unwrap();
        let tn = MatrixSubspace::span(4, [&ta, &tb, &tc]).unwrap();
        assert!(jordan_closed(&tn).unwrap().closed);
        assert!(power_closure_probe(&tn, 4).unwrap());
    }

    #[test]
    fn module_checks() {
        let s4 = PermGroup::symmetric(4);
        assert!(is_g_module(&build(Family::Ds, 4), &s4).unwrap().closed);
        let p = pi(&[(1, 8), (1, 4), (1, 4), (3, 8)]);
        assert!(!is_g_module(&build(Family::Tn(p), 4), &s4).unwrap().closed);
        let c3 = PermGroup::parse("(123)", 3).unwrap();
        assert!(is_g_module(&group_based(&c3).unwrap(), &PermGroup::symmetric(3)).unwrap().closed);
    }

    #[test]
    fn minimality_verdicts() {
        let spec = ModelSpec::new(Family::Ci, 5);
        let (_, v) = model_stability(&spec).unwrap();
        assert_eq!(v.stable, Some(true));
        let gtr = ModelSpec::new(Family::Gtr(pi(&[(1, 4), (1, 4), (1, 2)])), 3);
        assert!(model_stability(&gtr).unwrap().1.minimality.is_minimal());
        let ex = nonminimal_example();
        assert_eq!(minimality_check(&ex.subspace, &[]).unwrap(), Minimality::Inconclusive);
        // no hints: the linear program must find a certificate on its own
        for f in [Family::Ei, Family::Symm, Family::Ds, Family::Gm] {
            assert!(minimality_check(&build(f, 4), &[]).unwrap().is_minimal());
        }
        assert!(minimality_check(&MatrixSubspace::full_matrix_space(2), &[]).is_err());
    }

    #[test]
    fn multiplicities_of_standard_modules() {
        let t = |f: Family, n| irrep_multiplicities(&build(f, n)).unwrap().as_tuple();
        assert_eq!(t(Family::Gm, 5), [1, 2, 1, 1]);
        assert_eq!(t(Family::Gm, 3), [1, 2, 1]);
        assert_eq!(t(Family::Symm, 4), [1, 1, 1, 0]);
        assert_eq!(t(Family::Anti, 5), [0, 0, 0, 1]);
        assert_eq!(t(Family::Ei, 4), [1, 1, 0, 0]);
        assert_eq!(t(Family::Ds, 4), [1, 1, 1, 1]);
        let p = pi(&[(1, 8), (1, 4), (1, 4), (3, 8)]);
        assert!(matches!(irrep_multiplicities(&build(Family::Tn(p), 4)), Err(Error::NotModule { .. })));
    }

    #[test]
    fn classification_small_n() {
        let names = |n| -> Vec<String> {
            classify_sn_jordan_modules(n).unwrap().models.into_iter().map(|m| m.name).collect()
        };
        assert_eq!(names(2), ["CI", "GM"]);
        assert_eq!(names(3).len(), 8);
        let four = names(4);
        assert_eq!(four.len(), 8);
        assert!(four.contains(&String::from("K3ST")) && four.contains(&String::from("K3ST+F81")));
        assert_eq!(names(5), ["CI", "EI", "Symm", "EI+Symm", "DS", "GM"]);
    }

    #[test]
    fn hasse_of_a_chain_skips_transitive_edges() {
        let s = [build(Family::Ci, 4), build(Family::Ei, 4), build(Family::Gm, 4)];
        assert_eq!(inclusion_hasse(&s).unwrap(), [(0, 1), (1, 2)]);
    }

    #[test]
    fn table1_verdicts() {
        let rows = table1(&catalog::sample_distributions(4, 2, 7)).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.model, r.result.stable)).collect();
        let yes = got.iter().filter(|(_, s)| *s == Some(true)).count();
        assert_eq!(yes, 7, "{got:?}");
        assert_eq!(rows.iter().map(|r| r.pair_orbits).collect::<Vec<_>>(), [6, 4, 4, 2, 3, 3, 2, 2, 2, 1, 1]);
    }
}

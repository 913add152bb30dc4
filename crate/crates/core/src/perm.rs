//! Permutations of `{0, …, n−1}`, permutation matrices and finite permutation groups.
//!
//! Permutation matrices follow the row-vector convention `e_i K_σ = e_{σ(i)}`,
//! so `(K_σ)_{i,σ(i)} = 1` and `K_σ K_τ = K_{σ·τ}` where `σ·τ` applies `σ`
//! first and `τ` second ([`Permutation::then`]). Externally (parsing and
//! display) states are labelled `1..=n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// `images[i] = σ(i)`, zero-based.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection on 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Parses cycle notation with one-based labels: `"e"`, `"(12)(34)"`,
    /// `"(1234)"`, or with separators for labels above 9: `"(1,10)(2,3)"`.
    pub fn parse(text: &str, n: usize) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut images: Vec<usize> = (0..n).collect();
        if s == "e" || s == "()" || s.is_empty() {
            return Ok(Self { images });
        }
        let bad = |why: &str| Error::Parse(format!("invalid cycle notation {text:?}: {why}"));
        let mut moved = vec![false; n];
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| bad("unbalanced parenthesis"))?;
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let body = &body[..body_end - 1];
            rest = &rest[body_end + 1..];
            let labels: Vec<usize> = if body.contains(',') {
                body.split(',')
                    .map(|t| t.parse::<usize>().map_err(|_| bad("bad label")))
                    .collect::<Result<_, _>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad label")))
                    .collect::<Result<_, _>>()?
            };
            if labels.is_empty() {
                return Err(bad("empty cycle"));
            }
            for &l in &labels {
                if l == 0 || l > n {
                    return Err(Error::InvalidPermutation(format!("label {l} outside 1..={n} in {text:?}")));
                }
                if moved[l - 1] {
                    return Err(bad("cycles are not disjoint"));
                }
                moved[l - 1] = true;
            }
            for k in 0..labels.len() {
                images[labels[k] - 1] = labels[(k + 1) % labels.len()] - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    /// Disjoint cycles (zero-based), fixed points omitted, each starting at its
    /// smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n();
        let mut counts = vec![0; n];
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        for c in self.cycles() {
            counts[c.len() - 1] += 1;
        }
        if n > 0 {
            counts[0] = n - moved;
        }
        CycleType { counts }
    }

    pub fn sign(&self) -> i64 {
        if self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `K_σ` with `(K_σ)_{i,σ(i)} = 1`.
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.n(), |i, j| {
            if self.images[i] == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The conjugation action `σ·X = K_σᵀ X K_σ`, i.e. `(σ·X)_{σ(i)σ(j)} = X_{ij}`.
    pub fn act(&self, x: &RationalMatrix) -> Result<RationalMatrix, Error> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.n(),
            });
        }
        let inv = self.inverse();
        Ok(RationalMatrix::from_fn(self.n(), |a, b| x.get(inv.images[a], inv.images[b]).clone()))
    }
}

/// `K_σᵀ X K_σ`.
pub fn conjugate_action(sigma: &Permutation, x: &RationalMatrix) -> Result<RationalMatrix, Error> {
    sigma.act(x)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        let sep = if self.n() > 9 { "," } else { "" };
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of `k`-cycles for each `k`, fixed points included as 1-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    counts: Vec<usize>,
}

impl CycleType {
    /// `r_k`, the number of cycles of length `k ≥ 1`.
    pub fn r(&self, k: usize) -> usize {
        if k == 0 || k > self.counts.len() {
            0
        } else {
            self.counts[k - 1]
        }
    }

    pub fn n(&self) -> usize {
        self.counts.iter().enumerate().map(|(k, r)| (k + 1) * r).sum()
    }

    /// Cycle lengths in non-increasing order, i.e. the partition of `n`.
    pub fn partition(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for k in (1..=self.counts.len()).rev() {
            for _ in 0..self.r(k) {
                parts.push(k);
            }
        }
        parts
    }
}

/// A finite permutation group given by generators, with its full element list
/// (sorted lexicographically by images).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Closure of `generators` under composition.
    pub fn generate(n: usize, generators: Vec<Permutation>) -> Result<Self, Error> {
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidPermutation(format!("generator {g} acts on {} points, expected {n}", g.n())));
        }
        let mut set = BTreeSet::new();
        set.insert(Permutation::identity(n));
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = x.then(g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self {
            n,
            generators,
            elements: set.into_iter().collect(),
        })
    }

    /// Parses a comma-separated generator list such as `"(1234),(12)"`.
    pub fn parse(text: &str, n: usize) -> Result<Self, Error> {
        let gens = split_generators(text)
            .into_iter()
            .map(|g| Permutation::parse(g, n))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(n, gens)
    }

    pub fn trivial(n: usize) -> Self {
        Self::generate(n, Vec::new()).expect("no generators")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut cyc: Vec<usize> = (1..n).collect();
            cyc.push(0);
            gens.push(Permutation { images: cyc });
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(Permutation { images: t });
        }
        Self::generate(n, gens).expect("valid generators")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Generators in cycle notation, comma separated.
    pub fn generator_string(&self) -> String {
        if self.generators.is_empty() {
            return String::from("e");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| format!("{g}")).collect();
        parts.join(",")
    }

    /// `g⁻¹ H g` as a sorted element list.
    pub fn conjugated_elements(&self, g: &Permutation) -> Vec<Permutation> {
        let gi = g.inverse();
        let mut out: Vec<_> = self.elements.iter().map(|h| gi.then(h).then(g)).collect();
        out.sort();
        out
    }

    pub fn is_conjugate_to(&self, other: &Self) -> bool {
        if self.n != other.n || self.order() != other.order() {
            return false;
        }
        PermGroup::symmetric(self.n)
            .elements
            .iter()
            .any(|g| self.conjugated_elements(g) == other.elements)
    }
}

/// Splits `"(12),(34)"` at top-level commas (commas inside a cycle belong to it).
pub fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(text[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if !last.is_empty() {
        out.push(last);
    }
    out.retain(|s| !s.is_empty());
    out
}

/// A conjugacy class of `Sₙ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: CycleType,
    pub size: usize,
    /// Lexicographically least element of the class.
    pub representative: Permutation,
}

pub const MAX_CLASS_N: usize = 8;
pub const MAX_SUBGROUP_N: usize = 5;

/// All of `Sₙ` in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Conjugacy classes of `Sₙ` in order of first appearance along the
/// lexicographic enumeration, so each representative is its class's least element.
pub fn conjugacy_classes(n: usize) -> Result<Vec<ConjugacyClass>, Error> {
    if n == 0 || n > MAX_CLASS_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "1..=8",
        });
    }
    let mut index: BTreeMap<CycleType, usize> = BTreeMap::new();
    let mut out: Vec<ConjugacyClass> = Vec::new();
    for p in all_permutations(n) {
        let ct = p.cycle_type();
        match index.get(&ct) {
            Some(&k) => out[k].size += 1,
            None => {
                index.insert(ct.clone(), out.len());
                out.push(ConjugacyClass {
                    cycle_type: ct,
                    size: 1,
                    representative: p,
                });
            }
        }
    }
    Ok(out)
}

/// One representative per conjugacy class of subgroups of `Sₙ`, `n ≤ 5`.
///
/// Every subgroup is a join of cyclic subgroups, so all subgroups are reached
/// by repeatedly joining known subgroups with cyclic ones. Each class is
/// represented by its conjugate with the lexicographically least sorted
/// element list; results are ordered by group order, then by that list.
pub fn enumerate_subgroups_up_to_conjugacy(n: usize) -> Result<Vec<PermGroup>, Error> {
    if n == 0 || n > MAX_SUBGROUP_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "1..=5",
        });
    }
    let elems = all_permutations(n);
    let m = elems.len();
    let index: BTreeMap<&Permutation, usize> = elems.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&a.then(b)]).collect())
        .collect();
    let inverse: Vec<usize> = elems.iter().map(|a| index[&a.inverse()]).collect();

    let close = |seed: &BTreeSet<usize>| -> BTreeSet<usize> {
        let gens: Vec<usize> = seed.iter().copied().collect();
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = table[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    };

    let cyclic: BTreeSet<BTreeSet<usize>> = (0..m).map(|k| close(&BTreeSet::from([k]))).collect();
    let mut all: BTreeSet<BTreeSet<usize>> = cyclic.clone();
    let mut frontier: Vec<BTreeSet<usize>> = all.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let joined = close(&h.union(c).copied().collect());
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }

    let mut classes: BTreeMap<(usize, Vec<usize>), ()> = BTreeMap::new();
    for h in &all {
        let canonical = (0..m)
            .map(|g| {
                let mut conj: Vec<usize> = h.iter().map(|&x| table[table[inverse[g]][x]][g]).collect();
                conj.sort_unstable();
                conj
            })
            .min()
            .expect("non-empty group");
        classes.insert((h.len(), canonical), ());
    }

    Ok(classes
        .into_keys()
        .map(|(_, members)| {
            let set: BTreeSet<usize> = members.iter().copied().collect();
            let mut gens: Vec<usize> = Vec::new();
            let mut span = close(&BTreeSet::new());
            for &x in &members {
                if !span.contains(&x) {
                    gens.push(x);
                    span = close(&gens.iter().copied().collect());
                }
            }
            debug_assert_eq!(span, set);
            PermGroup::generate(n, gens.iter().map(|&k| elems[k].clone()).collect()).expect("valid")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("(12)(34)", 4).images(), &[1, 0, 3, 2]);
        assert_eq!(p("(1324)", 4).images(), &[2, 3, 1, 0]);
        assert_eq!(format!("{}", p("(1324)", 4)), "(1324)");
        assert_eq!(format!("{}", p("e", 3)), "e");
        assert_eq!(p("(1,10)", 10).apply(9), 0);
        assert!(Permutation::parse("(15)", 4).is_err());
        assert!(Permutation::parse("(12)(23)", 4).is_err());
        assert!(Permutation::parse("(12", 4).is_err());
    }

    #[test]
    fn identity_matrix_and_known_matrix() {
        assert_eq!(Permutation::identity(3).matrix(), RationalMatrix::identity(3));
        let k = p("(12)(34)", 4).matrix();
        let expected = RationalMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn matrix_product_follows_then() {
        let s = p("(123)", 4);
        let t = p("(14)(23)", 4);
        assert_eq!(&s.matrix() * &t.matrix(), s.then(&t).matrix());
        assert_eq!(s.matrix().transpose(), s.inverse().matrix());
    }

    #[test]
    fn cycle_types() {
        let ct = Permutation::identity(4).cycle_type();
        assert_eq!((ct.r(1), ct.r(2)), (4, 0));
        let ct = p("(12)(34)", 4).cycle_type();
        assert_eq!((ct.r(1), ct.r(2)), (0, 2));
        let ct = p("(123)", 4).cycle_type();
        assert_eq!((ct.r(1), ct.r(3)), (1, 1));
        assert_eq!(ct.partition(), vec![3, 1]);
        assert_eq!(ct.n(), 4);
    }

    #[test]
    fn generated_group_orders() {
        assert_eq!(PermGroup::parse("(1234),(12)", 4).unwrap().order(), 24);
        assert_eq!(PermGroup::parse("(12)(34),(13)(24),(14)(23)", 4).unwrap().order(), 4);
        assert_eq!(PermGroup::parse("e", 4).unwrap().order(), 1);
        assert_eq!(PermGroup::parse("(1324),(12)", 4).unwrap().order(), 8);
        assert_eq!(PermGroup::symmetric(5).order(), 120);
    }

    #[test]
    fn split_generators_respects_parentheses() {
        assert_eq!(split_generators("(12),(34), (12)(34)"), vec!["(12)", "(34)", "(12)(34)"]);
        assert_eq!(split_generators("(1,2),(3,4)"), vec!["(1,2)", "(3,4)"]);
        assert!(split_generators("").is_empty());
    }

    #[test]
    fn conjugacy_class_sizes() {
        let sizes = |n| conjugacy_classes(n).unwrap().iter().map(|c| c.size).collect::<Vec<_>>();
        assert_eq!(sizes(2), vec![1, 1]);
        assert_eq!(sizes(3), vec![1, 3, 2]);
        assert_eq!(sizes(4), vec![1, 6, 8, 3, 6]);
        assert_eq!(conjugacy_classes(8).unwrap().len(), 22);
        assert!(conjugacy_classes(9).is_err());
    }

    #[test]
    fn subgroup_class_counts() {
        let count = |n| enumerate_subgroups_up_to_conjugacy(n).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(4), 11);
        assert_eq!(count(5), 19);
        assert!(enumerate_subgroups_up_to_conjugacy(6).is_err());
    }
}

use jm_core::catalog::{
    elementary, equivariant_subspace, equivariant_tr_subspace, gtr_subspace, hky_basis, hky_group, nonlinear_example,
    nonminimal_example, reversible_elementary, row_generator, sample_distributions, tn_basis, tn_group,
    DistributionVector, Family, ModelSpec,
};
use jm_core::perm::{conjugate_action, Permutation};
use jm_core::rational::{int, ratio};
use jm_core::subspace::zero_row_sum_space;
use jm_core::uniformization::detailed_balance;
use jm_core::{MatrixSubspace, PermGroup, RationalMatrix};
use proptest::prelude::*;

fn build(f: Family, n: usize) -> MatrixSubspace {
    ModelSpec::new(f, n).build().unwrap()
}

fn pi(v: &[(i64, i64)]) -> DistributionVector {
    DistributionVector::new(v.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
}

#[test]
fn family_dimensions_match_closed_forms() {
    for n in 2..=7usize {
        let expected = [
            (Family::Ci, 1),
            (Family::Ei, n),
            (Family::Symm, n * (n - 1) / 2),
            (Family::Anti, (n - 1) * (n - 2) / 2),
            (Family::Ds, (n - 1) * (n - 1)),
            (Family::Gm, n * (n - 1)),
            (Family::EiPlusSymm, (n + 2) * (n - 1) / 2),
            (Family::Gtr(DistributionVector::uniform(n)), n * (n - 1) / 2),
        ];
        for (family, dim) in expected {
            let label = family.label();
            let s = build(family, n);
            assert_eq!(s.dim(), dim, "{label} at n = {n}");
            assert!(s.is_zero_row_sum(), "{label} at n = {n}");
        }
    }
}

#[test]
fn group_based_dimensions() {
    let v4 = PermGroup::parse("(12)(34),(13)(24)", 4).unwrap();
    assert_eq!(build(Family::GroupBased(v4.clone()), 4).dim(), 3);
    assert_eq!(build(Family::EiPlusGroupBased(v4), 4).dim(), 6);
    let c3 = PermGroup::parse("(123)", 3).unwrap();
    assert_eq!(build(Family::GroupBased(c3.clone()), 3).dim(), 2);
    assert_eq!(build(Family::EiPlusGroupBased(c3), 3).dim(), 4);
}

#[test]
fn ds_splits_into_symmetric_and_antisymmetric_parts() {
    for n in 3..=6 {
        let symm = build(Family::Symm, n);
        let anti = build(Family::Anti, n);
        assert!(symm.basis().iter().all(RationalMatrix::is_symmetric));
        assert!(anti.basis().iter().all(RationalMatrix::is_antisymmetric));
        assert_eq!(symm.intersection(&anti).unwrap().dim(), 0);
        assert_eq!(symm.sum(&anti).unwrap(), build(Family::Ds, n));
    }
    let anti3 = build(Family::Anti, 3);
    let l = |s: &str| {
        let p = Permutation::parse(s, 3).unwrap();
        &p.matrix() - &RationalMatrix::identity(3)
    };
    assert_eq!(anti3, MatrixSubspace::span(3, [&(&l("(123)") - &l("(132)"))]).unwrap());
    assert_eq!(build(Family::Anti, 2).dim(), 0);
}

#[test]
fn elementary_sums() {
    assert_eq!(elementary(0, 1, 2).unwrap(), RationalMatrix::from_i64(&[&[-1, 1], &[0, 0]]).unwrap());
    assert!(elementary(0, 0, 3).unwrap().is_zero());
    assert_eq!(&elementary(0, 1, 3).unwrap() + &elementary(0, 2, 3).unwrap(), row_generator(0, 3));
}

#[test]
fn gtr_examples() {
    let p = pi(&[(1, 4), (1, 4), (1, 2)]);
    let gtr = gtr_subspace(&p).unwrap();
    // actual rows of the displayed Q (the display is transposed)
    let q = RationalMatrix::from_i64(&[&[-3, 1, 2], &[1, -3, 2], &[1, 1, -2]]).unwrap();
    assert!(gtr.contains(&q).unwrap());
    assert!(detailed_balance(&q, p.values()).unwrap());
    let u = DistributionVector::uniform(4);
    assert!(build(Family::Symm, 4).is_subspace_of(&gtr_subspace(&u).unwrap()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gtr_generators_are_reversible_rate_matrices(seed in any::<u64>(), n in 2usize..=5) {
        let p = &sample_distributions(n, 1, seed)[0];
        for i in 0..n {
            for j in i + 1..n {
                let l = reversible_elementary(p, i, j);
                prop_assert!(l.is_rate_matrix());
                prop_assert!(detailed_balance(&l, p.values()).unwrap());
            }
        }
        let gtr = gtr_subspace(p).unwrap();
        for b in gtr.basis() {
            prop_assert!(detailed_balance(b, p.values()).unwrap());
        }
    }

    #[test]
    fn equivariant_tr_covariance(seed in any::<u64>(), pick in 0usize..11) {
        let p = &sample_distributions(4, 1, seed)[0];
        let named = jm_core::catalog::NAMED_TR_MODELS_4[pick];
        let g = PermGroup::parse(named.generators, 4).unwrap();
        let s = equivariant_tr_subspace(p, &g).unwrap();
        for sigma in g.elements() {
            let moved = equivariant_tr_subspace(&p.permuted(sigma), &g).unwrap();
            for b in s.basis() {
                prop_assert!(moved.contains(&conjugate_action(sigma, b).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn tn_and_hky_fixtures_match_the_orbit_construction() {
    for p in sample_distributions(4, 50, 7) {
        let tn = MatrixSubspace::span(4, tn_basis(&p).unwrap().iter()).unwrap();
        assert_eq!(equivariant_tr_subspace(&p, &tn_group()).unwrap(), tn);
        let hky = MatrixSubspace::span(4, hky_basis(&p).unwrap().iter()).unwrap();
        assert_eq!(equivariant_tr_subspace(&p, &hky_group()).unwrap(), hky);
        assert_eq!(tn.dim(), 3);
        assert_eq!(hky.dim(), 2);
    }
    let p = sample_distributions(4, 1, 1).remove(0);
    assert_eq!(equivariant_tr_subspace(&p, &PermGroup::trivial(4)).unwrap(), gtr_subspace(&p).unwrap());
}

#[test]
fn equivariant_examples() {
    let v4 = PermGroup::parse("(12)(34),(13)(24)", 4).unwrap();
    let eq = equivariant_subspace(&v4).unwrap();
    assert_eq!(eq.dim(), 3);
    assert_eq!(eq, build(Family::GroupBased(v4), 4));
    assert_eq!(equivariant_subspace(&PermGroup::trivial(4)).unwrap(), zero_row_sum_space(4));
    // the trivial representation occurs once in the rate matrices
    let sn = equivariant_subspace(&PermGroup::symmetric(4)).unwrap();
    assert_eq!(sn, build(Family::Ci, 4));
}

#[test]
fn fixture_models() {
    let nm = nonminimal_example();
    assert_eq!((nm.subspace.dim(), nm.cone_span.dim()), (2, 1));
    assert!(nm.cone_span.is_subspace_of(&nm.subspace).unwrap());

    let nl = nonlinear_example();
    let span = MatrixSubspace::span(2, nl.generators.iter()).unwrap();
    assert_eq!(span, zero_row_sum_space(2));
    assert!(nl.excluded.is_rate_matrix());
    assert!(span.contains(&nl.excluded).unwrap());
    assert!(!nl.contains(&nl.excluded));
    for g in &nl.generators {
        assert!(nl.contains(g));
    }
    assert!(nl.contains(&RationalMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => int(-1),
        (0, 1) => int(1),
        (1, 0) => int(3),
        _ => int(-3),
    })));
}

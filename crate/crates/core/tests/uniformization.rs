use jm_core::catalog::{column_generator, h_matrix, hky_basis, j_matrix, sample_distributions, tn_basis};
use jm_core::rational::{int, ratio};
use jm_core::uniformization::{
    empirical_stability, expm_reference, expm_uniformization, random_rate_matrix, stationary_distribution,
    FloatMatrix, Stationary,
};
use jm_core::{MatrixSubspace, RationalMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn two_state(a: f64, b: f64, t: f64) -> FloatMatrix {
    let s = a + b;
    let e = (-s * t).exp();
    FloatMatrix::from_rows(vec![
        vec![(b + a * e) / s, (a - a * e) / s],
        vec![(b - b * e) / s, (a + b * e) / s],
    ])
    .unwrap()
}

#[test]
fn thousand_random_generators_agree_with_the_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let tolerances = [1e-6, 1e-8, 1e-10, 1e-12];
    for case in 0..1000 {
        let n = rng.gen_range(2..=8);
        let sparsity = if case % 3 == 0 { 0.5 } else { 0.0 };
        let q = random_rate_matrix(n, 3.0, sparsity, &mut rng);
        let norm = q.norm_inf();
        let t = if norm == 0.0 { 1.0 } else { rng.gen::<f64>() * 20.0 / norm };
        let tol = tolerances[case % tolerances.len()];
        let (m, d) = expm_uniformization(&q, t, tol).unwrap();
        let reference = expm_reference(&q, t);
        let diff = m.max_abs_diff(&reference);
        assert!(diff <= 10.0 * tol, "case {case}: n = {n}, t = {t}, tol = {tol}, diff = {diff}");
        // the truncated Poisson mass is missing from every row
        assert!(m.is_markov_matrix((10.0 * tol).max(1e-10)), "case {case}");
        assert!(d.truncation_bound <= tol);
        assert!(d.r.is_markov_matrix(1e-12), "case {case}: R is not Markov");
        assert!(d.lambda >= (0..n).map(|i| -q.get(i, i)).fold(0.0, f64::max));
    }
}

#[test]
fn two_state_closed_form() {
    for (a, b, t) in [(1.0, 2.0, 0.3), (0.5, 0.5, 4.0), (3.0, 0.1, 1.7), (1e-3, 2.0, 10.0)] {
        let q = FloatMatrix::from_rows(vec![vec![-a, a], vec![b, -b]]).unwrap();
        let exact = two_state(a, b, t);
        assert!(expm_reference(&q, t).max_abs_diff(&exact) < 1e-12);
        let (m, _) = expm_uniformization(&q, t, 1e-13).unwrap();
        assert!(m.max_abs_diff(&exact) < 1e-12);
    }
}

#[test]
fn zero_generator_and_zero_time() {
    for n in 1..=5 {
        let (m, _) = expm_uniformization(&FloatMatrix::zeros(n), 3.0, 1e-12).unwrap();
        assert_eq!(m, FloatMatrix::identity(n));
        assert_eq!(expm_reference(&FloatMatrix::zeros(n), 3.0), FloatMatrix::identity(n));
    }
    let q = FloatMatrix::from_rational(&j_matrix(4));
    let (m, _) = expm_uniformization(&q, 0.0, 1e-12).unwrap();
    assert!(m.max_abs_diff(&FloatMatrix::identity(4)) < 1e-15);
}

#[test]
fn constant_input_closed_form() {
    for n in 2..=6 {
        let j = FloatMatrix::from_rational(&j_matrix(n));
        for t in [0.1f64, 1.0, 2.5, 10.0] {
            let expected = &FloatMatrix::identity(n) + &j.scale(1.0 - (-t).exp());
            let (m, _) = expm_uniformization(&j, t, 1e-14).unwrap();
            assert!(m.max_abs_diff(&expected) < 1e-12, "n = {n}, t = {t}");
        }
    }
}

#[test]
fn equal_input_closed_form() {
    // Q = Σ R_i with unit weights: Q² = −4Q, so e^{Qt} − I = ((1 − e^{−4t})/4) Q
    let q = (0..4).fold(RationalMatrix::zeros(4), |acc, i| &acc + &column_generator(i, 4));
    assert_eq!(q.pow(2), q.scale(&int(-4)));
    let qf = FloatMatrix::from_rational(&q);
    for t in [1.0, 0.2, 3.0] {
        let (m, _) = expm_uniformization(&qf, t, 1e-14).unwrap();
        let lhs = &m - &FloatMatrix::identity(4);
        let rhs = qf.scale((1.0 - (-4.0 * t).exp()) / 4.0);
        assert!(lhs.max_abs_diff(&rhs) < 1e-10, "t = {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semigroup_law(seed in any::<u64>(), n in 2usize..=6, t in 0.0f64..3.0, s in 0.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_rate_matrix(n, 2.0, 0.2, &mut rng);
        let (a, _) = expm_uniformization(&q, t, 1e-13).unwrap();
        let (b, _) = expm_uniformization(&q, s, 1e-13).unwrap();
        let (ab, _) = expm_uniformization(&q, t + s, 1e-13).unwrap();
        prop_assert!((&a * &b).max_abs_diff(&ab) < 1e-9);
    }

    #[test]
    fn outputs_are_stochastic(seed in any::<u64>(), n in 1usize..=8, t in 0.0f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_rate_matrix(n, 4.0, 0.3, &mut rng);
        let (m, _) = expm_uniformization(&q, t, 1e-12).unwrap();
        for row in m.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(row.iter().all(|&x| x >= -1e-10));
        }
    }
}

#[test]
fn validity_predicates() {
    let j = FloatMatrix::from_rational(&j_matrix(3));
    assert!(j.is_rate_matrix(1e-12));
    assert!(!j.scale(-1.0).is_rate_matrix(1e-12));
    let nl = FloatMatrix::from_rows(vec![vec![-1.0, 1.0], vec![0.0, 0.0]]).unwrap();
    assert!(nl.is_rate_matrix(1e-12));
    assert!(FloatMatrix::identity(4).is_markov_matrix(1e-12));
    assert!(FloatMatrix::from_rational(&h_matrix(4)).is_markov_matrix(1e-12));
    let i3j = &RationalMatrix::identity(2) + &j_matrix(2).scale(&int(3));
    assert!(!i3j.is_markov_matrix());
    assert!(!FloatMatrix::from_rational(&i3j).is_markov_matrix(1e-12));
    assert!(expm_uniformization(&j.scale(-1.0), 1.0, 1e-12).is_err());
}

#[test]
fn stationary_distribution_examples() {
    for n in 2..=5 {
        assert_eq!(
            stationary_distribution(&j_matrix(n)).unwrap(),
            Stationary::Unique(vec![ratio(1, n as i64); n])
        );
    }
    let block = RationalMatrix::from_i64(&[&[-1, 1, 0, 0], &[1, -1, 0, 0], &[0, 0, -1, 1], &[0, 0, 1, -1]]).unwrap();
    assert_eq!(stationary_distribution(&block).unwrap(), Stationary::NonUnique { dimension: 2 });
}

#[test]
fn empirical_stability_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for pi in sample_distributions(4, 3, 11) {
        let [a, b, c] = tn_basis(&pi).unwrap();
        let tn = MatrixSubspace::span(4, [&a, &b, &c]).unwrap();
        let q = &(&a.scale(&int(rng.gen_range(1..5))) + &b.scale(&int(rng.gen_range(1..5)))) + &c;
        let run = empirical_stability(&tn, &q, &[0.0, 0.1, 1.0, 10.0], 1e-8).unwrap();
        assert!(run.stable, "{:?}", run.observations);
        assert_eq!(run.observations[0].residual, 0.0);

        let [ha, hb] = hky_basis(&pi).unwrap();
        let hky = MatrixSubspace::span(4, [&ha, &hb]).unwrap();
        // κ = λ collapses HKY to F81, which is stable; κ ≠ λ escapes
        let f81 = &ha + &hb;
        let run = empirical_stability(&hky, &f81, &[0.0, 0.1, 1.0, 10.0], 1e-8).unwrap();
        assert!(run.stable, "{:?}", run.observations);
        let q = &ha.scale(&int(3)) + &hb;
        let run = empirical_stability(&hky, &q, &[0.0, 0.1, 1.0, 10.0], 1e-8).unwrap();
        assert!(!run.stable, "{:?}", run.observations);
        assert!(run.observations[0].residual == 0.0);
        assert!(run.observations.iter().any(|o| o.residual > 1e-4));
    }
}

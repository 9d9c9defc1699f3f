mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use qent_core::ed::{dense_relative_entropy, gaussian_density_matrix};
use qent_core::gaussian::modular_energy;
use qent_core::info::{conditioning_basis, information_from_entropy};
use qent_core::*;

#[test]
fn ground_state_is_a_projector_with_the_right_trace() {
    for spec in [open_chain(9, 4), open_chain(12, 5), ring(40)] {
        let c = ground_state_correlations(&spec).unwrap();
        let m = c.matrix();
        assert!((m * m - m).amax() < 1e-12);
        assert!((c.trace() - spec.n_particles as f64).abs() < 1e-10);
    }
    let c = ground_state_correlations(&ring(40)).unwrap();
    for i in 0..40 {
        assert!((c.matrix()[(i, i)] - 0.5).abs() < 1e-12);
    }
}

#[test]
fn complementary_regions_share_entropy() {
    let c = ground_state_correlations(&ring(60)).unwrap();
    for a in [Region::interval(0, 7), Region::interval(5, 20).union(&Region::interval(40, 3))] {
        let s_a = entropy(&restrict(&c, &a).unwrap()).unwrap();
        let s_rest = entropy(&restrict(&c, &a.complement(60)).unwrap()).unwrap();
        assert!((s_a - s_rest).abs() < 1e-9, "{a}: {s_a} vs {s_rest}");
    }
}

#[test]
fn entropy_is_additive_for_product_states() {
    let mut r = rng(11);
    let a = random_mixed_state(3, 0.05, &mut r);
    let b = random_mixed_state(4, 0.05, &mut r);
    let mut joint = DMatrix::zeros(7, 7);
    joint.view_mut((0, 0), (3, 3)).copy_from(a.matrix());
    joint.view_mut((3, 3), (4, 4)).copy_from(b.matrix());
    let joint = CorrelationMatrix::new((0..7).collect(), joint).unwrap();
    let total = entropy(&joint).unwrap();
    assert!((total - entropy(&a).unwrap() - entropy(&b).unwrap()).abs() < 1e-12);
    let ia = Region::interval(0, 3);
    let ib = Region::interval(3, 4);
    assert!(mutual_information(&joint, &ia, &ib).unwrap().abs() < 1e-12);
}

#[test]
fn modular_hamiltonian_round_trips_the_correlations() {
    let c = ground_state_correlations(&ring(100)).unwrap();
    let g = restrict(&c, &Region::interval(10, 8)).unwrap();
    let h = modular_hamiltonian(&entanglement_spectrum(&g).unwrap());
    // C = (1 + e^h)^{-1}
    let eig = h.matrix.clone().symmetric_eigen();
    let p = eig.eigenvalues.map(|e| 1.0 / (1.0 + e.exp()));
    let rebuilt = &eig.eigenvectors * DMatrix::from_diagonal(&p) * eig.eigenvectors.transpose();
    assert!((rebuilt - g.matrix()).amax() < 1e-8);
    for p in [1e-6, 0.3, 0.5, 0.9] {
        let e = modular_energy(p);
        assert!((1.0 / (1.0 + e.exp()) - p).abs() < 1e-8 * p.max(1e-3));
    }
}

#[test]
fn joining_blocks_raises_the_temperature() {
    let spec = ring(200);
    let c = ground_state_correlations(&spec).unwrap();
    let beta = |r: &Region| {
        let h = modular_hamiltonian(&entanglement_spectrum(&restrict(&c, r).unwrap()).unwrap());
        entanglement_temperature(&h, &spec).unwrap().beta
    };
    let a = Region::interval(0, 10);
    for gap in [0, 3, 15] {
        let ab = a.union(&Region::interval(10 + gap, 10));
        assert!(beta(&ab) > beta(&a), "gap {gap}");
    }
}

#[test]
fn temperatures_match_high_precision_values() {
    // reference values from an 80-digit evaluation of the same construction
    let spec = ring(400);
    let c = ground_state_correlations(&spec).unwrap();
    for (l, expected, tol) in [(10, 8.303_308_335_400_06, 1e-9), (20, 16.808_839_512_499_61, 1e-7)] {
        let h = modular_hamiltonian(&entanglement_spectrum(&restrict(&c, &Region::interval(0, l)).unwrap()).unwrap());
        let beta = entanglement_temperature(&h, &spec).unwrap().beta;
        assert!((beta - expected).abs() < tol * expected, "L={l}: {beta}");
    }
}

#[test]
fn outcome_probabilities_sum_to_one() {
    let c = ground_state_correlations(&ring(80)).unwrap();
    let basis = conditioning_basis(&c, &Region::interval(20, 6)).unwrap();
    let outcomes = basis.enumerate().unwrap();
    assert_eq!(outcomes.len(), 1 << basis.n_active());
    let total: f64 = outcomes.iter().map(|o| o.probability).sum();
    assert!((total - 1.0).abs() < 1e-8);
}

#[test]
fn conditioning_does_not_signal_and_keeps_states_pure() {
    let c = ground_state_correlations(&ring(60)).unwrap();
    let b = Region::interval(30, 5);
    let basis = conditioning_basis(&c, &b).unwrap();
    let rest = b.complement(60);
    let unconditioned = restrict(&c, &rest).unwrap();
    let mut average = DMatrix::zeros(rest.len(), rest.len());
    for o in basis.enumerate().unwrap() {
        let cond = basis.conditioned(&o).unwrap();
        let m = cond.matrix();
        assert!((m * m - m).amax() < 1e-8, "outcome {:b} not pure", o.bits);
        average += m * o.probability;
    }
    assert!((average - unconditioned.matrix()).amax() < 1e-8);
}

#[test]
fn mutual_information_vanishes_only_without_cross_correlations() {
    let mut r = rng(5);
    let c = random_mixed_state(6, 0.1, &mut r);
    let a = Region::interval(0, 3);
    let b = Region::interval(3, 3);
    assert!(mutual_information(&c, &a, &b).unwrap() > 1e-6);
    let mut m = c.matrix().clone();
    m.view_mut((0, 3), (3, 3)).fill(0.0);
    m.view_mut((3, 0), (3, 3)).fill(0.0);
    let block = CorrelationMatrix::new((0..6).collect(), m).unwrap();
    assert!(mutual_information(&block, &a, &b).unwrap().abs() < 1e-12);
}

#[test]
fn missing_entropy_is_relative_entropy_to_the_maximally_mixed_state() {
    let mut r = rng(2);
    let rho = random_mixed_state(2, 0.02, &mut r);
    let sigma = CorrelationMatrix::new(vec![0, 1], DMatrix::from_diagonal_element(2, 2, 0.5)).unwrap();
    let s0 = 2.0 * std::f64::consts::LN_2;
    let (info, ratio) = information_from_entropy(s0, entropy(&rho).unwrap());
    assert!((info - relative_entropy(&rho, &sigma).unwrap()).abs() < 1e-12);
    assert!((ratio - (-info).exp()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn relative_entropy_is_nonnegative_and_matches_dense(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_mixed_state(n, 0.01, &mut r);
        let sigma = random_mixed_state(n, 0.01, &mut r);
        let d = relative_entropy(&rho, &sigma).unwrap();
        prop_assert!(d >= -1e-12);
        let dense = dense_relative_entropy(
            &gaussian_density_matrix(&rho).unwrap(),
            &gaussian_density_matrix(&sigma).unwrap(),
        )
        .unwrap();
        prop_assert!((d - dense).abs() < 1e-9, "{} vs {}", d, dense);
        prop_assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mutual_information_is_nonnegative(seed in any::<u64>(), split in 1usize..6) {
        let mut r = rng(seed);
        let c = random_mixed_state(6, 0.001, &mut r);
        let a = Region::interval(0, split);
        let b = Region::interval(split, 6 - split);
        prop_assert!(mutual_information(&c, &a, &b).unwrap() >= -1e-12);
    }

    #[test]
    fn pure_state_entropy_is_symmetric(seed in any::<u64>(), nf in 1usize..7, len in 1usize..7) {
        let mut r = rng(seed);
        let c = random_pure_state(8, nf, &mut r);
        let a = Region::interval(0, len);
        let s_a = entropy(&restrict(&c, &a).unwrap()).unwrap();
        let s_b = entropy(&restrict(&c, &a.complement(8)).unwrap()).unwrap();
        prop_assert!((s_a - s_b).abs() < 1e-8);
    }
}

mod common;

use common::*;
use nalgebra::DMatrix;
use qent_core::ed::{fock_ground_state, gaussian_density_matrix, many_body_operator, oracle_measures, reduced_density_matrix};
use qent_core::info::conditioning_basis;
use qent_core::*;

#[test]
fn ground_energy_is_the_sum_of_filled_levels() {
    for (n, nf) in [(6, 2), (7, 3), (8, 4), (10, 3)] {
        let spec = open_chain(n, nf);
        let levels = build_single_particle_hamiltonian(&spec).eigenvalues();
        let expected: f64 = levels[..nf].iter().sum();
        let psi = fock_ground_state(&spec).unwrap();
        assert!((psi.energy - expected).abs() < 1e-10, "n={n} nf={nf}");
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn reduced_states_match_every_region_of_a_small_chain() {
    let spec = open_chain(7, 3);
    let psi = fock_ground_state(&spec).unwrap();
    let c = ground_state_correlations(&spec).unwrap();
    for mask in 1u32..(1 << 7) {
        let region = Region::new((0..7).filter(|&s| mask >> s & 1 == 1).collect()).unwrap();
        let rho = reduced_density_matrix(&psi, &region).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-10);
        assert!(rho.eigenvalues().iter().all(|&l| l > -1e-10));
        let g = restrict(&c, &region).unwrap();
        assert!((rho.entropy() - entropy(&g).unwrap()).abs() < 1e-8, "{region}");
        let dense = gaussian_density_matrix(&g).unwrap();
        assert!((rho.matrix - dense.matrix).amax() < 1e-10, "{region}");
    }
}

#[test]
fn conditioned_states_match_schmidt_projections() {
    let spec = open_chain(8, 4);
    let psi = fock_ground_state(&spec).unwrap();
    let c = ground_state_correlations(&spec).unwrap();
    let a = Region::interval(0, 2);
    let b = Region::interval(3, 4);
    let k_a = region_energy_operator(&spec, &a).unwrap();
    let oracle = oracle_measures(&psi, &a, &b, Some(&k_a)).unwrap();

    let basis = conditioning_basis(&c, &b).unwrap();
    let proj = basis.projector(&a).unwrap();
    let mut unmatched: Vec<_> = oracle.conditioned.iter().filter(|s| s.probability > 1e-7).collect();
    for o in basis.enumerate().unwrap() {
        let rho = gaussian_density_matrix(&proj.conditioned(&o).unwrap()).unwrap();
        let hit = unmatched
            .iter()
            .position(|s| (s.probability - o.probability).abs() < 1e-9 && (&s.rho_a.matrix - &rho.matrix).amax() < 1e-8)
            .unwrap_or_else(|| panic!("no oracle state for outcome {:b}", o.bits));
        unmatched.swap_remove(hit);
    }
    assert!(unmatched.is_empty());

    let stats = conditioned_statistics(&c, &a, &b, Some(&k_a), Strategy::Enumerate).unwrap();
    assert!((stats.conditional_entropy_j - oracle.conditional_entropy_j).abs() < 1e-8);
    assert!((stats.theta_bar - oracle.theta_bar).abs() < 1e-8);
    assert!((stats.theta_uncond.powi(2) - oracle.variance).abs() < 1e-10);
}

#[test]
fn wick_variance_matches_dense_operators() {
    let mut r = rng(77);
    for n in 1..=5 {
        let c = random_mixed_state(n, 0.01, &mut r);
        let k = SingleParticleMatrix::new((0..n).collect(), random_symmetric(n, &mut r)).unwrap();
        let stats = energy_mean_variance(&c, &k).unwrap();
        let rho = gaussian_density_matrix(&c).unwrap();
        let h = many_body_operator(&k.matrix);
        let mean = rho.expectation(&h);
        let var = rho.expectation(&(&h * &h)) - mean * mean;
        assert!((stats.mean_energy - mean).abs() < 1e-10);
        assert!((stats.variance - var).abs() < 1e-10);
    }
}

#[test]
fn number_operator_has_no_fluctuations_in_a_pure_state() {
    let c = ground_state_correlations(&open_chain(8, 3)).unwrap();
    let k = SingleParticleMatrix::new((0..8).collect(), DMatrix::identity(8, 8)).unwrap();
    let stats = energy_mean_variance(&c, &k).unwrap();
    assert!((stats.mean_energy - 3.0).abs() < 1e-12);
    assert!(stats.variance.abs() < 1e-12);
}

//! Shared fixtures for the criterion benchmarks.

use qent_core::{ground_state_correlations, Boundary, CorrelationMatrix, LatticeSpec};

/// Half-filled antiperiodic ring with unit hopping.
pub fn half_filled_ring(n_sites: usize) -> (LatticeSpec, CorrelationMatrix) {
    let spec = LatticeSpec::new(n_sites, 1.0, 0.0, Boundary::Antiperiodic).expect("valid ring");
    let c = ground_state_correlations(&spec).expect("non-degenerate ground state");
    (spec, c)
}
